# core/measures.py

import math
from typing import Iterable, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.integrate import quad

from common import config
from common.errors import DegenerateSimplex
from common.models import Estimate, SphericalTriangleSpec
from common.tolerances import EPS_ORIGIN, MC_MIN_HITS, QUAD_ABS_TOL
from core.geometry import (as_points, distance_to_affine, make_generator, simplex_volume,
                           span_of_points, unit_ball_volume)

# |det| of the unit generators below this means the cone has empty interior
DEGENERATE_CONE = 1e-14


def _hit_rate(hits: int, count: int) -> Tuple[float, float]:
    """Hit fraction and its standard error, floored at 1 / count below MC_MIN_HITS hits."""
    p = hits / count
    error = math.sqrt(p * (1.0 - p) / count)
    if hits < MC_MIN_HITS:
        error = max(error, 1.0 / count)
    return p, error


def _vertex_angle(p: np.ndarray, q: np.ndarray, r: np.ndarray) -> float:
    """Angle at p of the spherical triangle pqr, from the tangent directions towards q and r."""
    tq = q - np.dot(p, q) * p
    tr = r - np.dot(p, r) * p
    return math.atan2(float(np.linalg.norm(np.cross(tq, tr))), float(np.dot(tq, tr)))


def spherical_excess(u1, u2, u3) -> float:
    """Girard: area of the spherical triangle with unit vertices u1, u2, u3."""
    a, b, c = (np.asarray(u, dtype=float) for u in (u1, u2, u3))
    total = _vertex_angle(a, b, c) + _vertex_angle(b, c, a) + _vertex_angle(c, a, b)
    return max(total - math.pi, 0.0)


def _unit_generators(apex_simplex) -> np.ndarray:
    pts = as_points(apex_simplex)
    n = pts.shape[1]
    if pts.shape[0] != n + 1:
        raise ValueError(f"Expected {n + 1} vertices in dimension {n}, got {pts.shape[0]}")
    if np.linalg.norm(pts[0]) > EPS_ORIGIN:
        raise ValueError("The first vertex of an apex simplex must be the origin")
    gens = pts[1:]
    norms = np.linalg.norm(gens, axis=1)
    if np.any(norms == 0.0):
        raise DegenerateSimplex("A generator of the cone coincides with the apex")
    units = gens / norms[:, None]
    if abs(float(np.linalg.det(units))) < DEGENERATE_CONE:
        raise DegenerateSimplex("Cone generators are linearly dependent")
    return units


def solid_angle(apex_simplex, sample_count: Optional[int] = None, seed: int = 0, stream: int = 0) -> Estimate:
    """
    Fraction of the unit sphere covered by the cone from the origin over the other vertices.
    Exact for n <= 3; seeded Monte Carlo over Gaussian directions for n >= 4.
    """
    units = _unit_generators(apex_simplex)
    n = units.shape[1]

    if n == 1:
        return Estimate(value=0.5)
    if n == 2:
        u, v = units
        angle = math.atan2(abs(u[0] * v[1] - u[1] * v[0]), float(np.dot(u, v)))
        return Estimate(value=angle / (2.0 * math.pi))
    if n == 3:
        return Estimate(value=spherical_excess(*units) / (4.0 * math.pi))

    count = sample_count or config.MC_SAMPLES
    rng = make_generator(seed, stream)
    directions = rng.standard_normal((count, n))
    coeffs = np.linalg.solve(units.T, directions.T)
    hits = int(np.sum(np.all(coeffs >= 0.0, axis=0)))
    p, error = _hit_rate(hits, count)
    return Estimate(value=p, standard_error=error, sample_count=count, seed=seed, exact=False, hits=hits)


def ball_simplex_volume(simplex, r: float, sample_count: Optional[int] = None, seed: int = 0,
                        stream: int = 0) -> Estimate:
    """
    vol(B_0(r) ∩ simplex). Exact when the ball swallows the simplex, or when the
    simplex is an origin-apex cone whose far facet stays outside the ball
    (then it is omega * kappa_n * r^n, unless a sampled omega has too few hits).
    Otherwise Monte Carlo via Dirichlet sampling.
    """
    if r <= 0:
        raise ValueError(f"Radius must be positive, got {r}")
    pts = as_points(simplex)
    n = pts.shape[1]
    vol = simplex_volume(pts)

    if np.max(np.linalg.norm(pts, axis=1)) <= r:
        return Estimate(value=vol)

    if np.linalg.norm(pts[0]) <= EPS_ORIGIN and distance_to_affine(span_of_points(pts[1:]), np.zeros(n)) >= r:
        omega = solid_angle(pts, sample_count, seed, stream)
        scale = unit_ball_volume(n) * r ** n
        if omega.resolved:
            return Estimate(value=omega.value * scale, standard_error=omega.standard_error * scale,
                            sample_count=omega.sample_count, seed=omega.seed, exact=omega.exact,
                            hits=omega.hits)
        # Thin cone: too few directions hit it, so sample the simplex directly

    count = sample_count or config.MC_SAMPLES
    rng = make_generator(seed, stream)
    weights = rng.dirichlet(np.ones(n + 1), size=count)
    hits = int(np.sum(np.linalg.norm(weights @ pts, axis=1) <= r))
    p, error = _hit_rate(hits, count)
    return Estimate(value=p * vol, standard_error=vol * error, sample_count=count, seed=seed, exact=False,
                    hits=hits)


def _check_spec(spec: SphericalTriangleSpec):
    if not (0.0 < spec.t < math.pi / 2 and 0.0 < spec.c < math.pi / 2):
        raise ValueError(f"Legs must lie in (0, pi/2): t={spec.t}, c={spec.c}")


def spherical_triangle_area_integral(spec: SphericalTriangleSpec) -> float:
    """
    Area through the gnomonic projection at s2: the triangle becomes
    {x, y >= 0, x / tan t + y / q <= 1} with density (1 + x^2 + y^2)^(-3/2),
    and the inner integral over x is done in closed form.
    """
    _check_spec(spec)
    q = spec.q
    tan_t = math.tan(spec.t)

    def integrand(y: float) -> float:
        h = (1.0 - y / q) * tan_t
        return h / (math.sqrt(1.0 + y * y + h * h) * (1.0 + y * y))

    value, _ = quad(integrand, 0.0, q, epsabs=QUAD_ABS_TOL, epsrel=1e-12, limit=200)
    return value


def spherical_triangle_area_girard(spec: SphericalTriangleSpec) -> float:
    """Same area from the angle excess, with s2 at the north pole and the legs along x and y."""
    _check_spec(spec)
    s2 = np.array([0.0, 0.0, 1.0])
    s1 = np.array([math.sin(spec.t), 0.0, math.cos(spec.t)])
    s3 = np.array([0.0, math.sin(spec.c), math.cos(spec.c)])
    return spherical_excess(s1, s2, s3)


def curve_frame(c: float, t_grid: Iterable[float]) -> pd.DataFrame:
    """Rows (t, area_integral, area_girard, ratio = area / sin t) for a fixed second leg c."""
    rows = []
    for t in t_grid:
        spec = SphericalTriangleSpec(t=float(t), c=c)
        area = spherical_triangle_area_integral(spec)
        rows.append({
            "t": float(t),
            "area_integral": area,
            "area_girard": spherical_triangle_area_girard(spec),
            "ratio": area / math.sin(t),
        })
    return pd.DataFrame(rows, columns=["t", "area_integral", "area_girard", "ratio"])
