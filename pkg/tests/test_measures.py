import math

import numpy as np
import pandas as pd
import pytest
from hypothesis import assume, given, settings, strategies as st

from common.errors import DegenerateSimplex
from common.models import SphericalTriangleSpec
from common.tolerances import MC_MIN_HITS
from core.geometry import distance_to_affine, make_generator, simplex_volume, span_of_points
from core.measures import (ball_simplex_volume, curve_frame, solid_angle, spherical_excess,
                           spherical_triangle_area_girard, spherical_triangle_area_integral)
from core.subdivision import canonical_orthoscheme


# --- Solid angles ---

def test_solid_angle_low_dimensions():
    """Half line, quadrant, octant and the cube orthoscheme cone."""
    assert solid_angle([[0.0], [3.0]]).value == pytest.approx(0.5)
    assert solid_angle([[0, 0], [1, 0], [0, 2]]).value == pytest.approx(0.25)
    assert solid_angle([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]).value == pytest.approx(1 / 8)
    assert solid_angle(canonical_orthoscheme(3).vertices).value == pytest.approx(1 / 48)


def test_solid_angle_is_exact_below_dimension_four():
    """No sampling in R^2 and R^3."""
    estimate = solid_angle([[0, 0], [1, 0], [1, 1]])
    assert estimate.exact
    assert estimate.standard_error == 0.0
    assert estimate.value == pytest.approx(1 / 8)


def test_solid_angle_monte_carlo_in_dimension_four():
    """The positive orthant of R^4 holds 1/16 of the sphere."""
    estimate = solid_angle(np.vstack([np.zeros(4), np.eye(4)]), sample_count=100_000, seed=3)
    assert not estimate.exact
    assert estimate.sample_count == 100_000
    assert estimate.value == pytest.approx(1 / 16, abs=0.004)
    assert estimate.standard_error > 0.0


def test_solid_angle_is_reproducible():
    """Same seed and stream, same estimate."""
    cone = np.vstack([np.zeros(4), np.tri(4, 4, k=0)])
    first = solid_angle(cone, sample_count=5000, seed=9, stream=2)
    second = solid_angle(cone, sample_count=5000, seed=9, stream=2)
    assert first.value == second.value


def test_solid_angle_input_checks():
    """Collinear generators are degenerate; an apex off the origin is refused."""
    with pytest.raises(DegenerateSimplex):
        solid_angle([[0, 0], [1, 0], [2, 0]])
    with pytest.raises(ValueError):
        solid_angle([[1, 0], [1, 1], [2, 0]])


def _mirrored_cone(g, rest):
    """Generators g and its mirror image in x_1 = 0, plus `rest` lying in that hyperplane."""
    g = np.asarray(g, dtype=float)
    mirror = g * np.r_[-1.0, np.ones(len(g) - 1)]
    middle = g * np.r_[0.0, np.ones(len(g) - 1)]
    apex = np.zeros(len(g))
    whole = np.vstack([apex, g, mirror, rest])
    halves = np.vstack([apex, g, middle, rest]), np.vstack([apex, middle, mirror, rest])
    return whole, halves


@settings(max_examples=60, deadline=None)
@given(a=st.floats(0.2, 2.0), b=st.floats(-1.0, 1.0), c=st.floats(-1.0, 1.0),
       p=st.floats(-1.0, 1.0), q=st.floats(-1.0, 1.0))
def test_solid_angle_adds_over_a_mirror_split(a, b, c, p, q):
    """Cutting a cone along the mirror plane x_1 = 0 gives two halves of equal angle that add up."""
    assume(abs(b * q - c * p) >= 0.1)
    whole, (left, right) = _mirrored_cone([a, b, c], [[0.0, p, q]])
    w, wl, wr = (solid_angle(cone).value for cone in (whole, left, right))
    assert wl + wr == pytest.approx(w, abs=1e-8)
    assert wl == pytest.approx(wr, abs=1e-8)


def test_solid_angle_mirror_split_in_dimension_four():
    """The same split with sampled angles, within four standard errors."""
    whole, (left, right) = _mirrored_cone([0.8, 0.3, 0.5, 0.6], [[0.0, 1.0, 0.0, 0.2], [0.0, 0.1, 1.0, -0.3]])
    w = solid_angle(whole, sample_count=200_000, seed=5, stream=0)
    wl = solid_angle(left, sample_count=200_000, seed=5, stream=1)
    wr = solid_angle(right, sample_count=200_000, seed=5, stream=2)
    sigma = math.sqrt(w.standard_error ** 2 + wl.standard_error ** 2 + wr.standard_error ** 2)
    assert abs(wl.value + wr.value - w.value) <= 4 * sigma


def test_needle_cone_reports_an_honest_error():
    """No direction hits a needle-thin cone: the rate is 0 but its error is 1 / count."""
    omega = solid_angle(_needle_cone(), sample_count=10_000, seed=1)
    assert omega.hits == 0
    assert omega.value == 0.0
    assert omega.standard_error == pytest.approx(1e-4)
    assert not omega.resolved


def test_spherical_excess_of_the_octant():
    """Three right angles leave an excess of pi / 2."""
    assert spherical_excess([1, 0, 0], [0, 1, 0], [0, 0, 1]) == pytest.approx(math.pi / 2)


# --- Ball ∩ simplex ---

def test_ball_swallowing_the_simplex():
    """A large ball leaves the simplex volume, exactly."""
    estimate = ball_simplex_volume([[0, 0], [1, 0], [0, 1]], r=10.0)
    assert estimate.exact
    assert estimate.value == pytest.approx(0.5)


def test_cone_shortcut():
    """Far facet outside the ball: omega * kappa_n * r^n."""
    estimate = ball_simplex_volume(canonical_orthoscheme(3).vertices, r=1.0)
    assert estimate.exact
    assert estimate.value == pytest.approx(4 * math.pi / 3 / 48)
    assert ball_simplex_volume([[0, 0], [2, 0], [0, 2]], r=1.0).value == pytest.approx(math.pi / 4)


def test_ball_cutting_the_far_facet():
    """Quarter disk of radius 1.5 minus the segment beyond x + y = 2."""
    r, d = 1.5, math.sqrt(2.0)
    segment = r * r * math.acos(d / r) - d * math.sqrt(r * r - d * d)
    expected = math.pi * r * r / 4 - segment
    estimate = ball_simplex_volume([[0, 0], [2, 0], [0, 2]], r=r, sample_count=200_000, seed=4)
    assert not estimate.exact
    assert estimate.value == pytest.approx(expected, abs=0.01)


def test_ball_radius_must_be_positive():
    """r <= 0 is refused."""
    with pytest.raises(ValueError):
        ball_simplex_volume([[0, 0], [1, 0], [0, 1]], r=0.0)


def _needle_cone():
    """Apex at the origin, far facet in the hyperplane x_1 = 10 with legs of 0.01."""
    tip = np.array([10.0, 0.0, 0.0, 0.0])
    return np.vstack([np.zeros(4), tip, tip + [0, 0.01, 0, 0], tip + [0, 0, 0.01, 0], tip + [0, 0, 0, 0.01]])


def test_needle_cone_ball_volume_samples_the_simplex():
    """Too few directions hit the cone, so the ball volume comes from sampling the simplex."""
    cone = _needle_cone()
    estimate = ball_simplex_volume(cone, r=2.0, sample_count=100_000, seed=1)
    # The ball meets the needle almost exactly in the slab x_1 <= 2
    expected = simplex_volume(cone) * 0.2 ** 4
    assert not estimate.exact
    assert estimate.hits >= MC_MIN_HITS
    assert abs(estimate.value - expected) <= 4 * estimate.standard_error


@pytest.mark.parametrize("seed", range(50))
def test_cone_shortcut_agrees_with_sampling(seed):
    """omega * kappa_3 * r^3 against a plain Dirichlet hit count on a random cone."""
    rng = make_generator(seed, 77)
    height = rng.uniform(0.8, 2.0)
    legs = 0.8 * np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]]) + rng.uniform(-0.3, 0.3, size=(3, 2))
    rotation, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    far = np.column_stack([legs, np.full(3, height)]) @ rotation.T
    simplex = np.vstack([np.zeros(3), far])
    r = 0.9 * distance_to_affine(span_of_points(far), np.zeros(3))
    assert r == pytest.approx(0.9 * height)
    shortcut = ball_simplex_volume(simplex, r)
    assert shortcut.exact

    count = 20_000
    weights = rng.dirichlet(np.ones(4), size=count)
    hit_rate = float(np.mean(np.linalg.norm(weights @ simplex, axis=1) <= r))
    vol = simplex_volume(simplex)
    q = shortcut.value / vol
    assert abs(hit_rate - q) <= 4 * math.sqrt(q * (1 - q) / count)


# --- Right spherical triangles ---

@settings(max_examples=40, deadline=None)
@given(t=st.floats(min_value=0.01, max_value=1.55), c=st.floats(min_value=0.01, max_value=1.55))
def test_area_integral_matches_girard(t, c):
    """Quadrature and angle excess agree for any legs in (0, pi/2)."""
    spec = SphericalTriangleSpec(t=t, c=c)
    assert spherical_triangle_area_integral(spec) == pytest.approx(spherical_triangle_area_girard(spec), abs=1e-8)


@pytest.mark.parametrize("t, c", [(0.3, 0.4), (0.7, 0.7), (1.2, 0.2), (1.5, 1.5)])
def test_right_triangle_area_formula(t, c):
    """tan(E / 2) = tan(a / 2) tan(b / 2) for a right triangle with legs a, b."""
    expected = 2.0 * math.atan(math.tan(t / 2) * math.tan(c / 2))
    assert spherical_triangle_area_integral(SphericalTriangleSpec(t=t, c=c)) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("t, c", [(0.0, 0.5), (0.5, math.pi / 2), (-0.1, 0.2)])
def test_legs_outside_the_open_quadrant_are_refused(t, c):
    """Both legs must lie strictly between 0 and pi/2."""
    with pytest.raises(ValueError):
        spherical_triangle_area_integral(SphericalTriangleSpec(t=t, c=c))


def test_curve_frame_layout():
    """One row per grid point with both areas and the sin ratio."""
    frame = curve_frame(math.pi / 4, [0.2, 0.6, 1.0])
    assert isinstance(frame, pd.DataFrame)
    assert list(frame.columns) == ["t", "area_integral", "area_girard", "ratio"]
    assert len(frame) == 3
    assert np.allclose(frame["area_integral"], frame["area_girard"], atol=1e-9)
    assert frame["ratio"].is_monotonic_increasing
