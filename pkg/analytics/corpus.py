# analytics/corpus.py

import itertools
import math
from typing import Iterator, List, Sequence, Tuple

import numpy as np
from scipy.stats import special_ortho_group

from common.errors import PolytopeError
from common.logger import log
from common.models import Orthoscheme, Polytope
from common.parameters import DIAGONAL_BASIS, HEXAGON_BASIS
from core.geometry import make_generator
from core.polytope import cube, cube_section, from_halfspaces, rotated
from core.subdivision import orthoscheme_from_edges


# --- Cube sections ---

def random_basis(n: int, N: int, seed: int) -> np.ndarray:
    """n standard-normal rows in R^N; their span is a uniformly random n-dimensional subspace."""
    if not 1 <= n <= N <= 8:
        raise ValueError(f"Need 1 <= n <= N <= 8, got n={n}, N={N}")
    return make_generator(seed).standard_normal((n, N))


def random_section(n: int, N: int, seed: int) -> Polytope:
    return cube_section(N, random_basis(n, N, seed))


def section_corpus(n: int, sizes: Sequence[int], count: int, seed: int) -> Iterator[Tuple[int, int, Polytope]]:
    """
    Yields (N, index, section) for `count` sections cycling through the ambient sizes.
    Section i is drawn from stream i, so any prefix of the corpus is reproducible.
    """
    for i in range(count):
        N = sizes[i % len(sizes)]
        rng = make_generator(seed, i)
        yield N, i, cube_section(N, rng.standard_normal((n, N)))


# --- Other polytopes satisfying the distance hypothesis ---

def random_rotation(n: int, seed: int) -> np.ndarray:
    if n == 1:
        return np.ones((1, 1))
    return special_ortho_group.rvs(n, random_state=make_generator(seed))


def random_rotated_cube(n: int, seed: int) -> Polytope:
    return rotated(cube(n), random_rotation(n, seed))


def random_valid_polytope(n: int, seed: int, constraints: int = None, max_tries: int = 100) -> Polytope:
    """
    Random unit normals with offsets in [sqrt(n), 1.5 sqrt(n)]. Every proper face lies in
    a facet hyperplane at distance >= sqrt(n) >= sqrt(k), so only boundedness is rejected.
    """
    m = constraints or 2 * n + 2
    rng = make_generator(seed)
    for attempt in range(max_tries):
        normals = rng.standard_normal((m, n))
        normals /= np.linalg.norm(normals, axis=1)[:, None]
        offsets = math.sqrt(n) * rng.uniform(1.0, 1.5, size=m)
        try:
            return from_halfspaces(list(zip(normals, offsets)))
        except PolytopeError as exc:
            log.debug(f"Rejected random polytope (attempt {attempt}): {exc}")
    raise RuntimeError(f"No bounded random polytope in R^{n} after {max_tries} attempts")


# --- Packings ---

def fcc_centers() -> np.ndarray:
    """The 12 nearest neighbours of the origin in the face-centred cubic packing of unit balls."""
    centers = set()
    for i, j in itertools.combinations(range(3), 2):
        for si, sj in itertools.product((1.0, -1.0), repeat=2):
            c = [0.0, 0.0, 0.0]
            c[i], c[j] = si, sj
            centers.add(tuple(c))
    return math.sqrt(2.0) * np.array(sorted(centers))


def voronoi_cell(centers) -> Polytope:
    """Cell of the origin: (c / |c|) . x <= |c| / 2 for each neighbouring centre c."""
    pts = np.asarray(centers, dtype=float)
    norms = np.linalg.norm(pts, axis=1)
    return from_halfspaces([(c / r, r / 2.0) for c, r in zip(pts, norms)])


# --- Lemma inputs ---

def random_orthoscheme_pair(n: int, seed: int) -> Tuple[Orthoscheme, Orthoscheme]:
    """
    Orthoschemes B and C in random positions with |b_k| >= |c_k| for every k.
    The C edges are shrunk uniformly until every prefix sum of squares is dominated.
    """
    rng = make_generator(seed)
    beta = rng.uniform(0.5, 2.0, size=n)
    gamma = rng.uniform(0.5, 2.0, size=n)
    scale = float(np.min(np.sqrt(np.cumsum(beta ** 2) / np.cumsum(gamma ** 2))))
    if scale < 1.0:
        gamma = gamma * scale

    b = orthoscheme_from_edges(beta)
    c = orthoscheme_from_edges(gamma)
    rot_b = random_rotation(n, seed + 1)
    rot_c = random_rotation(n, seed + 2)
    return (Orthoscheme(vertices=b.vertices @ rot_b.T, edge_lengths=beta),
            Orthoscheme(vertices=c.vertices @ rot_c.T, edge_lengths=gamma))


def random_unit_vectors(count: int, n: int, seed: int) -> np.ndarray:
    rng = make_generator(seed)
    u = rng.standard_normal((count, n))
    return u / np.linalg.norm(u, axis=1)[:, None]


def regular_star(k: int) -> np.ndarray:
    """k+1 unit vectors pointing at the vertices of a regular simplex: u_i . u_j = -1/k."""
    e = np.eye(k + 1)
    centred = e - e.mean(axis=0)
    return centred / np.linalg.norm(centred, axis=1)[:, None]


def named_polytopes(seed: int) -> List[Tuple[str, Polytope]]:
    """A small named mix of every family, certified by the batch runner and walked by the subdivision tests."""
    items = [(f"cube{n}", cube(n)) for n in (1, 2, 3)]
    items.append(("diagonal", cube_section(2, DIAGONAL_BASIS)))
    items.append(("hexagon", cube_section(3, HEXAGON_BASIS)))
    items += [(f"rotated_cube{n}", random_rotated_cube(n, seed + n)) for n in (2, 3)]
    items += [(f"section_{n}_{N}", random_section(n, N, seed + 10 * n + N)) for n, N in ((2, 4), (3, 5))]
    items += [(f"random_valid{n}", random_valid_polytope(n, seed + 100 + n)) for n in (2, 3)]
    return items
