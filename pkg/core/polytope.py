# core/polytope.py

from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from common import config
from common.errors import (EmptyInterior, OriginNotInterior, PolytopeError, RankDeficient,
                           Unbounded)
from common.logger import log
from common.models import Face, Halfspace, Polytope
from common.tolerances import EPS_FEAS, EPS_INT, EPS_ORTH, EPS_RANK, MERGE_TOL
from core.geometry import (as_points, facet_volume, gram_schmidt, orthonormality_defect,
                           project_onto_affine, simplex_volume, span_of_points)


def _split_halfspace(h) -> Tuple[np.ndarray, float]:
    """Accepts a Halfspace, a (normal, offset) pair or a {"normal", "offset"} mapping."""
    if isinstance(h, Halfspace):
        return np.asarray(h.normal, dtype=float), float(h.offset)
    if isinstance(h, dict):
        return np.asarray(h["normal"], dtype=float), float(h["offset"])
    normal, offset = h
    return np.asarray(normal, dtype=float), float(offset)


def _check_bounded(normals: np.ndarray):
    """
    A polyhedron {x : A x <= b} with b > 0 is bounded iff its normals positively span R^n:
    full rank plus a strictly positive lambda with A^T lambda = 0.
    """
    m, n = normals.shape
    if np.linalg.matrix_rank(normals, tol=EPS_RANK) < n:
        raise Unbounded(f"Constraint normals span only a proper subspace of R^{n}")
    result = linprog(
        c=np.zeros(m), A_eq=normals.T, b_eq=np.zeros(n),
        bounds=[(1.0, None)] * m, method="highs",
    )
    if result.status != 0:
        raise Unbounded("Some direction violates no constraint: the polyhedron is unbounded")


def _solve_vertices(normals: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    """Brute-force vertex enumeration over all n-subsets of constraints."""
    m, n = normals.shape
    found: List[np.ndarray] = []
    for subset in combinations(range(m), n):
        idx = list(subset)
        block = normals[idx]
        if np.linalg.matrix_rank(block, tol=EPS_RANK) < n:
            continue
        x = np.linalg.solve(block, offsets[idx])
        if np.any(normals @ x > offsets + EPS_FEAS):
            continue
        if any(np.linalg.norm(x - v) <= MERGE_TOL for v in found):
            continue
        found.append(x)

    if not found:
        return np.zeros((0, n))
    pts = np.array(found)
    keys = np.round(pts, 9)
    order = np.lexsort(keys.T[::-1])
    return pts[order]


def _build_lattice(normals: np.ndarray, offsets: np.ndarray, vertices: np.ndarray) -> List[Face]:
    """
    Faces as the intersection closure of the vertex sets of supporting constraints.
    Each face keeps the constraints active on all of its vertices.
    """
    n = normals.shape[1]
    slack = offsets[None, :] - vertices @ normals.T
    active_at = [frozenset(np.nonzero(np.abs(row) <= EPS_FEAS)[0].tolist()) for row in slack]

    supporting = set()
    for i in range(normals.shape[0]):
        touched = frozenset(j for j, act in enumerate(active_at) if i in act)
        if touched:
            supporting.add(touched)

    everything = frozenset(range(len(vertices)))
    closure = {everything}
    frontier = list(supporting)
    while frontier:
        current = frontier.pop()
        if current in closure:
            continue
        closure.add(current)
        for s in supporting:
            meet = current & s
            if meet and meet not in closure:
                frontier.append(meet)

    drafts = []
    for vertex_set in closure:
        ids = sorted(vertex_set)
        common_active = frozenset.intersection(*(active_at[j] for j in ids))
        active = tuple(sorted(common_active))
        codim = int(np.linalg.matrix_rank(normals[list(active)], tol=EPS_RANK)) if active else 0
        drafts.append((codim, tuple(ids), active))
    drafts.sort(key=lambda d: (d[0], d[1]))

    faces = []
    for face_id, (codim, ids, active) in enumerate(drafts):
        span = span_of_points(vertices[list(ids)])
        if span.dim != n - codim:
            log.warning(f"Face {face_id}: active-set codim {codim} disagrees with affine dim {span.dim}")
        drift = orthonormality_defect(span.directions)
        if drift > EPS_ORTH:
            log.warning(f"Face {face_id}: direction rows drift {drift:.3g} from orthonormal")
        faces.append(Face(id=face_id, active=active, codim=codim, span=span, vertex_ids=frozenset(ids)))
    return faces


def _link_children(faces: List[Face]) -> Dict[int, List[int]]:
    children: Dict[int, List[int]] = {f.id: [] for f in faces}
    by_codim: Dict[int, List[Face]] = {}
    for f in faces:
        by_codim.setdefault(f.codim, []).append(f)
    for f in faces:
        for g in by_codim.get(f.codim + 1, []):
            if g.vertex_ids < f.vertex_ids:
                children[f.id].append(g.id)
    return children


def from_halfspaces(hs: Sequence) -> Polytope:
    """Builds a validated polytope with vertices, face lattice and affine feet cached."""
    if len(hs) == 0:
        raise PolytopeError("At least one halfspace is required")

    pairs = [_split_halfspace(h) for h in hs]
    normals = as_points([p[0] for p in pairs])
    offsets = np.array([p[1] for p in pairs], dtype=float)
    if not np.all(np.isfinite(offsets)):
        raise PolytopeError("Non-finite halfspace offset")

    m, n = normals.shape
    if n > config.MAX_DIM:
        raise PolytopeError(f"Dimension {n} exceeds the supported maximum {config.MAX_DIM}")

    norms = np.linalg.norm(normals, axis=1)
    if np.any(norms < EPS_RANK):
        raise PolytopeError("Halfspace with a zero normal")
    normals = normals / norms[:, None]
    offsets = offsets / norms

    # 1. The origin must sit strictly inside every constraint
    if np.any(offsets < EPS_INT):
        worst = int(np.argmin(offsets))
        raise OriginNotInterior(f"Constraint {worst} has offset {offsets[worst]:.3g} < {EPS_INT}")

    # 2. Boundedness
    _check_bounded(normals)

    # 3. Vertices
    vertices = _solve_vertices(normals, offsets)
    if len(vertices) < n + 1 or np.linalg.matrix_rank(vertices[1:] - vertices[0], tol=EPS_RANK) < n:
        raise EmptyInterior(f"Only {len(vertices)} vertices found; the polytope is not full-dimensional")

    # 4. Face lattice and closest points of every affine span
    faces = _build_lattice(normals, offsets, vertices)
    children = _link_children(faces)
    feet = np.array([project_onto_affine(f.span, np.zeros(n)) for f in faces])
    inside = np.all(feet @ normals.T <= offsets[None, :] + EPS_FEAS, axis=1)

    log.debug(f"Polytope in R^{n}: {m} halfspaces, {len(vertices)} vertices, {len(faces)} faces")
    return Polytope(dim=n, normals=normals, offsets=offsets, vertices=vertices, faces=faces,
                    children=children, affine_feet=feet, foot_inside=inside)


def cube(n: int) -> Polytope:
    """The cube [-1, 1]^n."""
    if not 1 <= n <= 8:
        raise ValueError(f"Cube dimension must be within 1..8, got {n}")
    hs = []
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        hs.append((e, 1.0))
        hs.append((-e, 1.0))
    return from_halfspaces(hs)


def cube_section(N: int, basis) -> Polytope:
    """
    The section [-1, 1]^N ∩ L in orthonormal coordinates of L = rowspace(basis).
    Column i of the orthonormalized basis Q gives the pair of constraints ±Q_i . x <= 1.
    """
    rows = as_points(basis)
    n = rows.shape[0]
    if rows.shape[1] != N:
        raise RankDeficient(f"Basis rows have length {rows.shape[1]}, expected N = {N}")
    q_rows = gram_schmidt(rows)
    if len(q_rows) < n:
        raise RankDeficient(f"Basis spans a {len(q_rows)}-dimensional subspace, expected {n}")
    q = np.array(q_rows)

    hs = []
    for i in range(N):
        column = q[:, i]
        if np.linalg.norm(column) < EPS_RANK:
            # L is orthogonal to e_i: the pair of constraints is vacuous
            continue
        hs.append((column, 1.0))
        hs.append((-column, 1.0))
    return from_halfspaces(hs)


def scaled(P: Polytope, s: float) -> Polytope:
    """s * P."""
    return from_halfspaces([(a, b * s) for a, b in zip(P.normals, P.offsets)])


def rotated(P: Polytope, rotation) -> Polytope:
    """R P for an orthogonal matrix R."""
    r = np.asarray(rotation, dtype=float)
    return from_halfspaces([(r @ a, b) for a, b in zip(P.normals, P.offsets)])


def contains(P: Polytope, points, tol: float = EPS_FEAS) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    return np.all(pts @ P.normals.T <= P.offsets[None, :] + tol, axis=1)


def enumerate_vertices(P: Polytope) -> List[np.ndarray]:
    return [v.copy() for v in P.vertices]


def face_lattice(P: Polytope) -> List[Face]:
    return list(P.faces)


def subfaces(P: Polytope, F: Face) -> List[Face]:
    """All faces G of P with G ⊆ F, F included."""
    return [g for g in P.faces if g.vertex_ids <= F.vertex_ids]


def closest_point_in_affine_span(F: Face) -> np.ndarray:
    return project_onto_affine(F.span, np.zeros(len(F.span.base)))


def closest_point_in_face(P: Polytope, F: Face) -> np.ndarray:
    """
    The minimizer of |x| over F. It lies in the relative interior of some subface G,
    where it equals the foot of the origin on aff G.
    """
    best, best_norm = None, float("inf")
    for g in subfaces(P, F):
        if not P.foot_inside[g.id]:
            continue
        foot = P.affine_feet[g.id]
        norm = float(np.linalg.norm(foot))
        if norm < best_norm:
            best, best_norm = foot, norm
    return best.copy()


def triangulate_face(P: Polytope, F: Face) -> List[Tuple[int, ...]]:
    """Pulling triangulation of F: cone from its lowest vertex over the subfacets avoiding it."""
    memo: Dict[int, List[Tuple[int, ...]]] = {}

    def pull(face_id: int) -> List[Tuple[int, ...]]:
        if face_id in memo:
            return memo[face_id]
        face = P.faces[face_id]
        if face.codim == P.dim:
            simplices = [tuple(face.vertex_ids)]
        else:
            apex = min(face.vertex_ids)
            simplices = []
            for child in P.children[face_id]:
                if apex in P.faces[child].vertex_ids:
                    continue
                simplices.extend((apex,) + s for s in pull(child))
        memo[face_id] = simplices
        return simplices

    return pull(F.id)


def polytope_volume(P: Polytope) -> float:
    """Fan from the origin over the triangulated facets."""
    origin = np.zeros((1, P.dim))
    total = 0.0
    for facet in P.faces_of_codim(1):
        for simplex in triangulate_face(P, facet):
            total += simplex_volume(np.vstack([origin, P.vertices[list(simplex)]]))
    return total


def surface_area(P: Polytope) -> float:
    total = 0.0
    for facet in P.faces_of_codim(1):
        for simplex in triangulate_face(P, facet):
            total += facet_volume(P.vertices[list(simplex)])
    return total
