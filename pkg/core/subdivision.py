# core/subdivision.py

from typing import Dict, List

import numpy as np

from common.errors import DegenerateInput
from common.logger import log
from common.models import CoveringReport, Flag, Orthoscheme, Polytope, SimplexTriple
from common.tolerances import (COVER_MARGIN, COVER_REL_GAP, EPS_CHAIN, EPS_DEG_FACTOR,
                               EPS_RANK)
from core.geometry import make_generator, simplex_volume
from core.polytope import closest_point_in_face, contains, polytope_volume


def enumerate_flags(P: Polytope) -> List[Flag]:
    """All maximal chains of faces, descending one codimension at a time."""
    flags: List[Flag] = []
    root = P.faces_of_codim(0)[0].id

    def descend(chain: List[int]):
        last = chain[-1]
        if P.faces[last].codim == P.dim:
            flags.append(Flag(faces=tuple(chain)))
            return
        for child in P.children[last]:
            descend(chain + [child])

    descend([root])
    return flags


def build_simplices(P: Polytope) -> List[SimplexTriple]:
    """One (A, B) pair per flag; degenerate simplices stay in the list, flagged."""
    anchors: Dict[int, np.ndarray] = {}

    def anchor(face_id: int) -> np.ndarray:
        if face_id not in anchors:
            anchors[face_id] = closest_point_in_face(P, P.faces[face_id])
        return anchors[face_id]

    eps_deg = EPS_DEG_FACTOR * P.circumradius ** P.dim
    triples = []
    for flag in enumerate_flags(P):
        a = np.array([anchor(fid) for fid in flag.faces])
        b = np.array([P.affine_feet[fid] for fid in flag.faces])
        volume = simplex_volume(a)
        triples.append(SimplexTriple(flag=flag, a=a, b=b, degenerate=volume < eps_deg, volume=volume))

    degenerate = sum(t.degenerate for t in triples)
    log.info(f"Subdivision: {len(triples)} flags, {degenerate} degenerate simplices")
    if degenerate:
        log.warning(f"{degenerate} anchor simplices are degenerate (closest points on relative boundaries)")
    return triples


def barycentric(vertices: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Barycentric coordinates of each point (rows) w.r.t. a non-degenerate simplex."""
    base = vertices[0]
    edges = (vertices[1:] - base).T
    tail = np.linalg.solve(edges, (points - base).T).T
    head = 1.0 - tail.sum(axis=1, keepdims=True)
    return np.hstack([head, tail])


def covering_check(P: Polytope, triples: List[SimplexTriple], sample_count: int, seed: int) -> CoveringReport:
    """
    Empirical check that the simplices tile P: volume sum plus seeded point sampling.
    A point is uncovered if no closed simplex holds it, and an overlap if two
    margin-shrunk interiors do.
    """
    live = [t for t in triples if not t.degenerate]
    vol_p = polytope_volume(P)
    gap = abs(sum(t.volume for t in live) - vol_p)

    rng = make_generator(seed)
    lo, hi = P.vertices.min(axis=0), P.vertices.max(axis=0)
    pts = rng.uniform(lo, hi, size=(sample_count, P.dim))
    pts = pts[contains(P, pts)]

    closed_hits = np.zeros(len(pts), dtype=int)
    interior_hits = np.zeros(len(pts), dtype=int)
    for t in live:
        lam = barycentric(t.a, pts)
        closed_hits += np.all(lam >= -COVER_MARGIN, axis=1)
        interior_hits += np.all(lam > COVER_MARGIN, axis=1)

    uncovered = int(np.sum(closed_hits == 0))
    overlaps = int(np.sum(interior_hits > 1))
    passed = gap <= COVER_REL_GAP * vol_p and uncovered == 0 and overlaps == 0
    if not passed:
        log.warning(f"Covering check failed: gap={gap:.3g}, uncovered={uncovered}, overlaps={overlaps}")
    return CoveringReport(volume_gap=gap, max_overlap_hits=overlaps, uncovered_hits=uncovered,
                          tested_points=len(pts), sample_count=sample_count, seed=seed, passed=passed)


def canonical_orthoscheme(n: int) -> Orthoscheme:
    """c_0 = 0, c_k = (1, ..., 1, 0, ..., 0) with k ones."""
    if n < 1:
        raise ValueError(f"Dimension must be positive, got {n}")
    return Orthoscheme(vertices=np.tri(n + 1, n, k=-1), edge_lengths=np.ones(n))


def orthoscheme_from_edges(lengths) -> Orthoscheme:
    """Orthoscheme with p_k = (beta_1, ..., beta_k, 0, ..., 0)."""
    beta = np.asarray(lengths, dtype=float)
    return Orthoscheme(vertices=np.tri(len(beta) + 1, len(beta), k=-1) * beta[None, :], edge_lengths=beta)


def orthoscheme_from_b(triple: SimplexTriple) -> Orthoscheme:
    """
    Expresses B in the frame u_k = (b_k - b_{k-1}) / beta_k adapted to the flag of affine spans.
    The output is only an orthoscheme if those edges really are pairwise orthogonal.
    """
    if triple.degenerate:
        raise DegenerateInput("Flag simplex A is degenerate")
    b = triple.b
    edges = b[1:] - b[:-1]
    beta = np.linalg.norm(edges, axis=1)
    if np.any(beta < EPS_RANK):
        raise DegenerateInput(f"B has a zero edge: beta = {beta}")
    frame = edges / beta[:, None]
    return Orthoscheme(vertices=b @ frame.T, edge_lengths=beta)


def orthoscheme_defect(o: Orthoscheme) -> float:
    """Largest violation of the orthoscheme invariants (right angles, Pythagorean chain, p_0 = 0)."""
    p = o.vertices
    n = o.dim
    worst = float(np.linalg.norm(p[0]))
    for k in range(1, n):
        for i in range(k):
            for j in range(k + 1, n + 1):
                worst = max(worst, abs(float(np.dot(p[i] - p[k], p[j] - p[k]))))
    chain = np.cumsum(o.edge_lengths ** 2)
    worst = max(worst, float(np.max(np.abs(np.sum(p[1:] ** 2, axis=1) - chain))))
    return worst


def is_orthoscheme(o: Orthoscheme, tol: float = EPS_CHAIN) -> bool:
    return orthoscheme_defect(o) <= tol


def chain_defect(triple: SimplexTriple) -> float:
    """max |<b_{k+1} - b_k, b_j - b_{j-1}>| over j <= k."""
    edges = triple.b[1:] - triple.b[:-1]
    gram = edges @ edges.T
    off = gram - np.diag(np.diag(gram))
    return float(np.max(np.abs(off))) if len(edges) > 1 else 0.0
