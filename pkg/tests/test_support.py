import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.optimize import brentq

from skewcurves import (
    DegenerateCurveError,
    FourierSupport,
    amplitudes,
    curvature_radius,
    curve_point,
    cusp_count,
    evaluate,
    radius_energy,
    sample_curve,
    sign_changes,
    signed_area,
    signed_length,
    steiner_point,
)
from skewcurves.support import cusp_locations

from conftest import random_support

ONE = FourierSupport(1.0)
COS2 = FourierSupport.from_harmonics(0, [(2, 1.0, 0.0)])
COS3 = FourierSupport.from_harmonics(0, [(3, 1.0, 0.0)])
SHIFTED = FourierSupport.from_harmonics(1.0, [(1, 0.3, 0.0)])
GRID720 = np.arange(720) * (2 * np.pi / 720)

coeff = st.floats(-2, 2, allow_nan=False)


@st.composite
def supports(draw, max_degree=8):
    d = draw(st.integers(0, max_degree))
    c = draw(st.lists(coeff, min_size=d, max_size=d))
    s = draw(st.lists(coeff, min_size=d, max_size=d))
    return FourierSupport(draw(coeff), c, s)


# -- representation ------------------------------------------------------------

def test_complex_view_reconstructs_a_real_function(rng):
    p = random_support(rng)
    a = p.coefficients()
    phi = np.linspace(0, 2 * np.pi, 37)
    k = np.arange(1, p.degree + 1)
    full = a[0] + np.sum(a[1:, None] * np.exp(1j * np.outer(k, phi))
                         + np.conj(a[1:, None]) * np.exp(-1j * np.outer(k, phi)), axis=0)
    assert np.max(np.abs(full.imag)) < 1e-12
    np.testing.assert_allclose(full.real, evaluate(p, phi), atol=1e-12)
    assert FourierSupport.from_complex(a).allclose(p, atol=0)


def test_from_harmonics_rejects_repeats():
    with pytest.raises(ValueError):
        FourierSupport.from_harmonics(0, [(2, 1, 0), (2, 0, 1)])
    with pytest.raises(ValueError):
        FourierSupport.from_harmonics(0, [(0, 1, 0)])


def test_degree_ignores_trailing_zeros():
    p = FourierSupport(1.0, [0.0, 1.0, 0.0, 0.0], [0, 0, 0, 0])
    assert p.degree == 2
    assert FourierSupport(2.0).degree == 0


# -- evaluate ------------------------------------------------------------------

def test_evaluate_examples():
    assert evaluate(ONE, 0.7, 0) == 1.0
    assert evaluate(COS2, 0.0, 2) == pytest.approx(-4.0, abs=1e-14)
    expected = -0.3 * np.sin(np.pi / 3)
    assert evaluate(SHIFTED, np.pi / 3, 1) == pytest.approx(expected, abs=1e-14)
    h = 1e-5
    fd = (evaluate(SHIFTED, np.pi / 3 + h) - evaluate(SHIFTED, np.pi / 3 - h)) / (2 * h)
    assert fd == pytest.approx(-0.259808, abs=1e-6)


@settings(max_examples=60, deadline=None)
@given(supports(), st.floats(0, 2 * np.pi))
def test_derivatives_match_central_differences(p, phi):
    h = 1e-5
    d1 = (evaluate(p, phi + h) - evaluate(p, phi - h)) / (2 * h)
    d2 = (evaluate(p, phi + h, 1) - evaluate(p, phi - h, 1)) / (2 * h)
    assert evaluate(p, phi, 1) == pytest.approx(d1, abs=1e-7 * (1 + abs(d1)) * 10)
    assert evaluate(p, phi, 2) == pytest.approx(d2, abs=1e-7 * (1 + abs(d2)) * 10)


def test_derivatives_fd_tolerance_on_random_supports(rng):
    h = 1e-5
    for _ in range(20):
        p = random_support(rng, degree=int(rng.integers(1, 9)), scale=0.3)
        phi = rng.uniform(0, 2 * np.pi, 16)
        d1 = (evaluate(p, phi + h) - evaluate(p, phi - h)) / (2 * h)
        d2 = (evaluate(p, phi + h, 1) - evaluate(p, phi - h, 1)) / (2 * h)
        assert np.max(np.abs(evaluate(p, phi, 1) - d1)) < 1e-7
        assert np.max(np.abs(evaluate(p, phi, 2) - d2)) < 1e-7


# -- curve points --------------------------------------------------------------

def test_curve_point_examples():
    np.testing.assert_allclose(curve_point(ONE, 0.0), [1, 0], atol=1e-15)
    np.testing.assert_allclose(curve_point(ONE, np.pi / 2), [0, 1], atol=1e-15)
    # p(0) = 1, p'(0) = 0 for cos 2 phi
    np.testing.assert_allclose(curve_point(COS2, 0.0), [1, 0], atol=1e-15)


def test_first_harmonic_is_a_translation(rng):
    p = random_support(rng)
    c, s = rng.normal(size=2)
    moved = p + FourierSupport(0.0, [c], [s])
    phi = rng.uniform(0, 2 * np.pi, 50)
    np.testing.assert_allclose(curve_point(moved, phi), curve_point(p, phi) + [c, s], atol=1e-12)


def test_curvature_radius_examples():
    assert curvature_radius(ONE, 1.234) == 1.0
    assert curvature_radius(COS3, 0.0) == pytest.approx(-8.0)
    c = 20.0
    assert curvature_radius(FourierSupport.hypocycloid(4, offset=c), 0.0) == pytest.approx(c - 15)


# -- integrals -----------------------------------------------------------------

def test_signed_length_examples():
    assert signed_length(ONE) == pytest.approx(2 * np.pi)
    assert signed_length(COS2) == 0.0
    value = quad(lambda t: evaluate(SHIFTED, t), 0, 2 * np.pi, epsabs=1e-13)[0]
    assert signed_length(SHIFTED) == pytest.approx(2 * np.pi)
    assert abs(value - 2 * np.pi) < 1e-10


def test_signed_area_examples():
    assert signed_area(ONE) == pytest.approx(np.pi, abs=1e-13)
    assert signed_area(COS2) == pytest.approx(-1.5 * np.pi, abs=1e-13)
    p = FourierSupport.from_harmonics(1.0, [(2, 0.1, 0.0)])
    assert signed_area(p) == pytest.approx(3.094468, abs=1e-6)
    # adaptive quadrature as an independent route
    ref = 0.5 * quad(lambda t: evaluate(p, t) ** 2 - evaluate(p, t, 1) ** 2, 0, 2 * np.pi,
                     epsabs=1e-13)[0]
    assert abs(signed_area(p) - ref) < 1e-10


def test_radius_energy_examples():
    assert radius_energy(ONE) == pytest.approx(2 * np.pi, abs=1e-13)
    assert radius_energy(COS2) == pytest.approx(9 * np.pi, abs=1e-12)
    assert radius_energy(FourierSupport()) == 0.0


def test_integrals_quadrature_and_parseval_agree(rng):
    for _ in range(25):
        p = random_support(rng, degree=int(rng.integers(0, 9)))
        assert abs(signed_length(p, "quadrature") - signed_length(p)) < 1e-10
        assert abs(signed_area(p) - signed_area(p, "parseval")) < 1e-10 * (1 + abs(signed_area(p)))
        r = radius_energy(p)
        assert abs(r - radius_energy(p, "parseval")) < 1e-10 * (1 + r)


def test_coefficient_identities_constants():
    # |a_2| = 1/2 for cos 2 phi: A = -3 pi / 2 = pi * (0 + 2 (1 - 4) / 4)
    amp = 0.5
    assert signed_area(COS2) == pytest.approx(np.pi * (2 * (1 - 4) * amp**2))
    assert radius_energy(COS2) == pytest.approx(2 * np.pi * (2 * (1 - 4) ** 2 * amp**2))
    # the constant-free forms are off by pi and 2 pi respectively
    assert signed_area(COS2) != pytest.approx(2 * (1 - 4) * amp**2 / np.pi)
    assert radius_energy(COS2) != pytest.approx(2 * (1 - 4) ** 2 * amp**2)


def test_steiner_point_examples(rng):
    np.testing.assert_array_equal(steiner_point(ONE), [0, 0])
    np.testing.assert_allclose(steiner_point(SHIFTED), [0.3, 0.0])
    np.testing.assert_array_equal(steiner_point(COS2), [0, 0])
    for _ in range(10):
        p = random_support(rng)
        assert np.max(np.abs(steiner_point(p) - steiner_point(p, "quadrature"))) < 1e-10


# -- sign changes and cusps ----------------------------------------------------

def test_sign_changes_examples():
    assert sign_changes(np.cos(3 * GRID720)) == 6
    assert sign_changes(1 + 0.5 * np.cos(GRID720)) == 0
    f = lambda t: np.cos(t) + 0.2 * np.cos(5 * t)
    assert sign_changes(f(GRID720)) == 2
    # brute-force root isolation on a much finer grid
    fine = np.linspace(0, 2 * np.pi, 100_001)
    v = f(fine)
    roots = [brentq(f, fine[i], fine[i + 1]) for i in np.flatnonzero(v[:-1] * v[1:] < 0)]
    assert len(roots) == 2


def test_sign_changes_open_and_dead_band():
    assert sign_changes([1, -1, 1], circular=False) == 2
    assert sign_changes([1, -1, 1], circular=True) == 2
    assert sign_changes([1, 1e-12, 1]) == 0
    assert sign_changes([1, 0.0, -1, 0.0]) == 2
    with pytest.raises(DegenerateCurveError):
        sign_changes([0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        sign_changes([1.0])


def test_cusp_count_examples():
    assert cusp_count(ONE) == 0
    assert cusp_count(COS2) == 4
    assert cusp_count(COS3) == 6
    with pytest.raises(DegenerateCurveError):
        cusp_count(FourierSupport(0.0, [0.4], [0.1]))


def test_cusp_locations_are_zeros_of_the_radius():
    locs = cusp_locations(COS2)
    np.testing.assert_allclose(locs, np.pi / 4 + np.arange(4) * np.pi / 2, atol=1e-10)
    p = FourierSupport.from_harmonics(1.0, [(2, 0.5, 0.0), (3, 0.0, 0.2)])
    for t in cusp_locations(p):
        assert abs(curvature_radius(p, t)) < 1e-8


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.floats(0.1, 5), st.floats(-np.pi, np.pi))
def test_hypocycloid_has_2k_cusps(k, amplitude, phase):
    assert cusp_count(FourierSupport.hypocycloid(k, amplitude, phase)) == 2 * k


def test_sample_curve_examples():
    octagon = sample_curve(ONE, 8)
    angles = np.arange(8) * np.pi / 4
    np.testing.assert_allclose(octagon.points, np.c_[np.cos(angles), np.sin(angles)], atol=1e-15)
    assert not octagon.cusp_flags.any()
    assert sample_curve(COS2, 720).n_cusps == 4 == cusp_count(COS2)
    moved = sample_curve(SHIFTED, 16)
    ang = np.arange(16) * np.pi / 8
    np.testing.assert_allclose(moved.points, np.c_[np.cos(ang) + 0.3, np.sin(ang)], atol=1e-15)
    with pytest.raises(ValueError):
        sample_curve(ONE, 4)


def test_sample_flags_match_cusp_count(rng):
    for _ in range(20):
        p = random_support(rng, degree=6)
        assert sample_curve(p, 720).n_cusps == cusp_count(p)


def test_amplitudes_examples():
    assert amplitudes(ONE) == {0: 1.0}
    assert amplitudes(COS2) == {2: 0.5}
    p = FourierSupport.from_harmonics(1.0, [(2, 0.1, 0.05)])
    amp = amplitudes(p)
    assert amp[0] == 1.0
    assert amp[2] == pytest.approx(0.0559017, abs=1e-7)
    assert amp.get(5, 0.0) == 0.0


def test_support_is_immutable():
    with pytest.raises(Exception):
        COS2.a0 = 3.0
    with pytest.raises(ValueError):
        COS2.cos[0] = 2.0
