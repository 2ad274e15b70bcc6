# core/geometry.py

import math
from typing import Iterable, List, Sequence

import numpy as np
from scipy.special import gamma

from common.models import AffineSpan
from common.tolerances import EPS_RANK


def as_vector(coords) -> np.ndarray:
    """Converts coordinates to a float vector, rejecting NaN and Inf."""
    v = np.asarray(coords, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"Non-finite coordinates: {coords}")
    return v


def as_points(rows) -> np.ndarray:
    """Stacks a sequence of points into a finite float matrix, one point per row."""
    pts = np.atleast_2d(np.asarray(rows, dtype=float))
    if not np.all(np.isfinite(pts)):
        raise ValueError("Non-finite coordinates in point list")
    return pts


def make_generator(seed: int, stream: int = 0) -> np.random.Generator:
    """
    Counter-based random stream keyed by (seed, stream). Independent streams for
    different flags or trials give the same numbers regardless of evaluation order.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(stream)])))


def gram_schmidt(vectors: Iterable[Sequence[float]]) -> List[np.ndarray]:
    """
    Orthonormal basis of the span of `vectors`, in input order.
    Each vector is orthogonalized twice; residuals shorter than EPS_RANK are dropped.
    """
    basis: List[np.ndarray] = []
    for raw in vectors:
        w = as_vector(raw).copy()
        for _ in range(2):
            for q in basis:
                w -= np.dot(q, w) * q
        norm = np.linalg.norm(w)
        if norm < EPS_RANK:
            continue
        basis.append(w / norm)
    return basis


def span_of_points(points) -> AffineSpan:
    """Affine hull of a point set, based at its first point."""
    pts = as_points(points)
    base = pts[0].copy()
    dirs = gram_schmidt(pts[1:] - base)
    n = pts.shape[1]
    directions = np.array(dirs) if dirs else np.zeros((0, n))
    return AffineSpan(base=base, directions=directions)


def orthonormality_defect(directions) -> float:
    """Largest entry of |D D^T - I| over the direction rows; 0 for an orthonormal set."""
    d = np.atleast_2d(np.asarray(directions, dtype=float))
    if d.shape[0] == 0 or d.size == 0:
        return 0.0
    return float(np.max(np.abs(d @ d.T - np.eye(d.shape[0]))))


def project_onto_affine(span: AffineSpan, point) -> np.ndarray:
    """Orthogonal projection of `point` onto the affine span."""
    p = as_vector(point)
    offset = p - span.base
    if span.dim == 0:
        return span.base.copy()
    coeffs = span.directions @ offset
    return span.base + coeffs @ span.directions


def distance_to_affine(span: AffineSpan, point) -> float:
    p = as_vector(point)
    return float(np.linalg.norm(p - project_onto_affine(span, p)))


def simplex_volume(vertices) -> float:
    """n-volume of conv of n+1 points in R^n: |det(v_i - v_0)| / n!."""
    pts = as_points(vertices)
    n = pts.shape[1]
    if pts.shape[0] != n + 1:
        raise ValueError(f"Expected {n + 1} vertices in dimension {n}, got {pts.shape[0]}")
    edges = pts[1:] - pts[0]
    return abs(float(np.linalg.det(edges))) / math.factorial(n)


def facet_volume(vertices) -> float:
    """
    (m-1)-volume of conv of m points via the Gram determinant of the edge vectors.
    A single point has 0-volume 1.
    """
    pts = as_points(vertices)
    m = pts.shape[0]
    if m == 1:
        return 1.0
    edges = pts[1:] - pts[0]
    gram_det = float(np.linalg.det(edges @ edges.T))
    return math.sqrt(max(gram_det, 0.0)) / math.factorial(m - 1)


def unit_ball_volume(n: int) -> float:
    """kappa_n = pi^(n/2) / Gamma(n/2 + 1)."""
    if n < 1:
        raise ValueError(f"Dimension must be positive, got {n}")
    return float(math.pi ** (n / 2.0) / gamma(n / 2.0 + 1.0))
