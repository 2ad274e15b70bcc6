# analytics/lemmas.py
"""
Standalone verifiers for the intermediate inequalities of the volume and surface
arguments. Each check evaluates one inequality directly on concrete data and
returns a report; none of them is needed to issue a certificate.
"""

import math
from typing import List, Sequence, Tuple

import numpy as np

from common import config
from common.errors import (DegenerateInput, DegenerateSimplex, DimensionMismatch, NoValidPosition,
                           NotUnitVectors, UnsupportedDimension)
from common.logger import log
from common.models import (CircleMoveReport, ContractionReport, MonotonicityReport, Orthoscheme,
                           SimplexTriple, SphericalTriangleSpec, StepwiseReport, VolumeRatioEntry)
from common.tolerances import (CERT_REL, CIRCLE_MOVE_SLACK, CONTRACTION_SLACK, EPS_CHAIN, EPS_RANK,
                               MC_SIGMAS, MONOTONE_SLACK, OBTUSE_SLACK, STEP_ORTHOGONALITY,
                               STEPWISE_SLACK, UNIT_NORM_TOL)
from core.geometry import facet_volume, make_generator, simplex_volume
from core.measures import ball_simplex_volume, solid_angle, spherical_triangle_area_integral


# --- Orthoscheme contraction ---

def _adapted_frame(o: Orthoscheme) -> Tuple[np.ndarray, np.ndarray]:
    """Rows u_k = (p_k - p_{k-1}) / |p_k - p_{k-1}|, with the edge lengths."""
    edges = o.vertices[1:] - o.vertices[:-1]
    lengths = np.linalg.norm(edges, axis=1)
    if np.any(lengths < EPS_RANK):
        raise DegenerateInput("Orthoscheme has a zero edge")
    return edges / lengths[:, None], lengths


def contraction_map(B: Orthoscheme, C: Orthoscheme) -> np.ndarray:
    """The linear map with f(b_k) = c_k: diagonal gamma_k / beta_k between the adapted frames."""
    u_b, beta = _adapted_frame(B)
    u_c, gamma = _adapted_frame(C)
    scale = gamma / beta
    return u_c.T @ np.diag(scale) @ u_b


def orthoscheme_contraction_check(B: Orthoscheme, C: Orthoscheme, sample_count: int = None,
                                  seed: int = 0) -> ContractionReport:
    """Samples B uniformly and checks |f(x)| <= |x| for the map sending B onto C."""
    if B.dim != C.dim:
        raise DimensionMismatch(f"B lives in R^{B.dim} but C in R^{C.dim}")
    count = sample_count or config.DEFAULT_SAMPLES

    norms_b = np.linalg.norm(B.vertices, axis=1)
    norms_c = np.linalg.norm(C.vertices, axis=1)
    if np.any(norms_c > norms_b + CONTRACTION_SLACK):
        k = int(np.argmax(norms_c - norms_b))
        log.info(f"Contraction precondition unmet at k={k}: |c_k|={norms_c[k]:.6g} > |b_k|={norms_b[k]:.6g}")
        return ContractionReport(status="precondition_unmet", sample_count=0, violations=0,
                                 max_excess=float(norms_c[k] - norms_b[k]), vertex_ok=False, passed=False)

    f = contraction_map(B, C)

    images = B.vertices @ f.T
    vertex_ok = bool(np.all(np.abs(np.linalg.norm(images, axis=1) - norms_c) <= EPS_CHAIN * max(1.0, norms_c.max())))

    rng = make_generator(seed)
    weights = rng.dirichlet(np.ones(B.dim + 1), size=count)
    x = weights @ B.vertices
    excess = np.linalg.norm(x @ f.T, axis=1) - np.linalg.norm(x, axis=1)
    violations = int(np.sum(excess > CONTRACTION_SLACK))

    passed = violations == 0 and vertex_ok
    return ContractionReport(status="ok" if violations == 0 else "violations", sample_count=count,
                             violations=violations, max_excess=float(excess.max()), vertex_ok=vertex_ok,
                             passed=passed)


def orthoscheme_volume_ratio_check(B: Orthoscheme, C: Orthoscheme, radii: Sequence[float],
                                   sample_count: int = None, seed: int = 0) -> List[VolumeRatioEntry]:
    """
    vol B / vol(B_0(r) ∩ B) >= vol C / vol(B_0(r) ∩ C) for each radius, the volume
    consequence of the contraction. Monte Carlo sides are judged within 3 sigma;
    a side with too few hits can only confirm the inequality, never refute it.
    """
    if B.dim != C.dim:
        raise DimensionMismatch(f"B lives in R^{B.dim} but C in R^{C.dim}")
    count = sample_count or config.MC_SAMPLES
    vol_b = simplex_volume(B.vertices)
    vol_c = simplex_volume(C.vertices)

    entries = []
    for i, r in enumerate(radii):
        in_b = ball_simplex_volume(B.vertices, r, count, seed, stream=2 * i)
        in_c = ball_simplex_volume(C.vertices, r, count, seed, stream=2 * i + 1)
        ratio_b = _ratio(vol_b, in_b.value)
        ratio_c = _ratio(vol_c, in_c.value)

        if in_b.resolved and in_c.resolved:
            sigma = math.hypot(ratio_b * in_b.standard_error / in_b.value,
                               ratio_c * in_c.standard_error / in_c.value)
            ok = ratio_b >= ratio_c * (1.0 - CERT_REL) - MC_SIGMAS * sigma
            status = "ok" if ok else "violation"
        else:
            # One-sided: smallest plausible ratio for B against the largest plausible one for C
            sigma = math.nan
            low_b = _ratio(vol_b, in_b.value + MC_SIGMAS * in_b.standard_error)
            high_c = _ratio(vol_c, in_c.value - MC_SIGMAS * in_c.standard_error)
            status = "ok" if low_b >= high_c * (1.0 - CERT_REL) else "inconclusive"
            log.info(f"Volume ratio at r={r}: too few Monte Carlo hits (B {in_b.hits}, C {in_c.hits}), {status}")

        entries.append(VolumeRatioEntry(radius=float(r), ratio_b=ratio_b, ratio_c=ratio_c, sigma=sigma,
                                        passed=status != "violation", status=status))
    return entries


def _ratio(volume: float, part: float) -> float:
    return volume / part if part > 0.0 else math.inf


# --- Steps of the volume argument ---

def stepwise_contraction_check(triple: SimplexTriple, sample_count: int = None, seed: int = 0) -> StepwiseReport:
    """
    Moves a_k to b_k for k = 1..n in turn and tracks fixed barycentric samples through
    every intermediate simplex: their norms may never grow. Each motion b_k - a_k must
    also be orthogonal to the already placed b_0..b_{k-1} as seen from b_k.
    """
    if triple.degenerate:
        raise DegenerateInput("Flag simplex A is degenerate")
    count = sample_count or config.DEFAULT_SAMPLES
    n = triple.a.shape[1]

    rng = make_generator(seed)
    weights = rng.dirichlet(np.ones(n + 1), size=count)
    current = triple.a.copy()
    norms = np.linalg.norm(weights @ current, axis=1)

    moved = 0
    violations = 0
    max_increase = -math.inf
    max_orth = 0.0
    for k in range(1, n + 1):
        motion = triple.a[k] - triple.b[k]
        if np.linalg.norm(motion) > EPS_RANK:
            moved += 1
        for j in range(k):
            max_orth = max(max_orth, abs(float(np.dot(triple.b[j] - triple.b[k], motion))))

        current[k] = triple.b[k]
        new_norms = np.linalg.norm(weights @ current, axis=1)
        increase = new_norms - norms
        violations += int(np.sum(increase > STEPWISE_SLACK))
        max_increase = max(max_increase, float(increase.max()))
        norms = new_norms

    passed = violations == 0 and max_orth <= STEP_ORTHOGONALITY
    return StepwiseReport(steps=n, moved_steps=moved, sample_count=count, violations=violations,
                          max_increase=max_increase, max_orthogonality_error=max_orth, passed=passed)


def circle_move_check(triple: SimplexTriple) -> CircleMoveReport:
    """
    Replaces b_1 by the unit-norm point b'_1 on the circle with diameter b_0 b_2 (in the
    plane of b_0, b_1, b_2) and compares vol_{n-1}(far facet) / omega before and after.
    """
    n = triple.b.shape[1]
    if n not in (2, 3):
        raise UnsupportedDimension(f"The circle move is defined for n = 2, 3, got n = {n}")
    if triple.degenerate:
        raise DegenerateInput("Flag simplex A is degenerate")

    b = triple.b
    d = float(np.linalg.norm(b[2]))
    if d <= 1.0:
        raise NoValidPosition(f"|b_2| = {d:.12g} <= 1: the circle over b_0 b_2 has no unit-norm point")
    if np.linalg.norm(b[1]) < 1.0 - CIRCLE_MOVE_SLACK:
        raise NoValidPosition(f"|b_1| = {np.linalg.norm(b[1]):.12g} < 1: the move would push b_1 outwards")

    e = b[2] / d
    across = b[1] - np.dot(b[1], e) * e
    width = float(np.linalg.norm(across))
    if width < EPS_RANK:
        raise DegenerateInput("b_1 lies on the line through b_0 and b_2")
    f = across / width

    moved = b.copy()
    moved[1] = e / d + math.sqrt(1.0 - 1.0 / d ** 2) * f

    t_before = math.atan2(width, float(np.dot(b[1], e)))
    t_after = math.acos(1.0 / d)
    try:
        ratio_before = facet_volume(b[1:]) / solid_angle(b).value
        ratio_after = facet_volume(moved[1:]) / solid_angle(moved).value
    except DegenerateSimplex as exc:
        raise DegenerateInput(f"Orthoscheme B is degenerate: {exc}") from exc

    passed = ratio_before >= ratio_after - CIRCLE_MOVE_SLACK * max(1.0, ratio_after)
    sin_over_t = (math.sin(t_before) / t_before, math.sin(t_after) / t_after) if n == 2 else None
    return CircleMoveReport(dim=n, t_before=t_before, t_after=t_after, ratio_before=ratio_before,
                            ratio_after=ratio_after, passed=passed, sin_over_t=sin_over_t)


def facet_ratio_check(triple: SimplexTriple) -> Tuple[float, float, bool]:
    """
    vol_{n-1}(far facet) / vol for A and for B. Both far facets lie in the hyperplane of
    the flag's facet, so each ratio is n / dist(0, facet) and they must agree.
    """
    if triple.degenerate:
        raise DegenerateInput("Flag simplex A is degenerate")
    vol_b = simplex_volume(triple.b)
    if vol_b <= 0.0:
        raise DegenerateInput("Simplex B is degenerate")
    ratio_a = facet_volume(triple.a[1:]) / triple.volume
    ratio_b = facet_volume(triple.b[1:]) / vol_b
    return ratio_a, ratio_b, abs(ratio_a - ratio_b) <= CERT_REL * max(ratio_a, ratio_b)


# --- Unit vectors ---

def obtuse_pair_bound(vectors) -> Tuple[float, bool]:
    """Among k+1 unit vectors some pair has u_i . u_j >= -1/k."""
    u = np.atleast_2d(np.asarray(vectors, dtype=float))
    if u.shape[0] < 2:
        raise ValueError("At least two vectors are required")
    if np.any(np.abs(np.linalg.norm(u, axis=1) - 1.0) > UNIT_NORM_TOL):
        raise NotUnitVectors("Every vector must have norm 1")
    k = u.shape[0] - 1
    gram = u @ u.T
    np.fill_diagonal(gram, -np.inf)
    best = float(gram.max())
    return best, best >= -1.0 / k - OBTUSE_SLACK


# --- Spherical triangles ---

def sin_ratio_monotonicity_check(c: float, t_grid: Sequence[float]) -> MonotonicityReport:
    """area T(t) / sin t must increase along the grid for the right triangle with legs t and c."""
    grid = [float(t) for t in t_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("t_grid must be strictly increasing")
    ratios = [spherical_triangle_area_integral(SphericalTriangleSpec(t=t, c=c)) / math.sin(t) for t in grid]
    diffs = np.diff(ratios)
    min_diff = float(diffs.min()) if len(diffs) else math.inf
    return MonotonicityReport(c=c, t_grid=grid, ratios=ratios, min_difference=min_diff,
                              passed=min_diff > -MONOTONE_SLACK)


def sin_over_t_check(t_grid: Sequence[float]) -> MonotonicityReport:
    """sin t / t must decrease along a grid in (0, pi); min_difference is the smallest drop."""
    grid = [float(t) for t in t_grid]
    if any(t <= 0.0 or t >= math.pi for t in grid):
        raise ValueError("t_grid must lie in (0, pi)")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("t_grid must be strictly increasing")
    ratios = [math.sin(t) / t for t in grid]
    drops = -np.diff(ratios)
    min_drop = float(drops.min()) if len(drops) else math.inf
    return MonotonicityReport(c=None, t_grid=grid, ratios=ratios, min_difference=min_drop,
                              passed=min_drop > -MONOTONE_SLACK)
