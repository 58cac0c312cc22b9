import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from skewcurves import (
    FourierSupport,
    NonConvexError,
    curvature_radius,
    fattened_hypocycloid,
    gutkin_roots,
    m_map,
    verify_invariant,
)
from skewcurves.gutkin import gutkin_residual, root_census
from skewcurves.support import quadrature_nodes
from skewcurves.transforms import m_multiplier

ROOT4 = float(np.arctan(np.sqrt(5.0)))


def brute_force_roots(k, n=200_001):
    """Independent root isolation of tan(k a) = k tan(a) away from poles, via the
    polynomial-free form on a dense grid, dropping a = pi/2."""
    f = lambda a: np.sin(k * a) * np.cos(a) - k * np.cos(k * a) * np.sin(a)
    a = np.linspace(1e-9, np.pi - 1e-9, n)
    v = f(a)
    idx = np.flatnonzero(v[:-1] * v[1:] < 0)
    return [brentq(f, a[i], a[i + 1], xtol=1e-15) for i in idx]


def test_k2_has_no_roots():
    assert gutkin_roots(2) == []


def test_k3_only_degenerate():
    roots = gutkin_roots(3)
    assert len(roots) == 1
    assert roots[0].degenerate
    assert roots[0].alpha == pytest.approx(np.pi / 2, abs=1e-12)


def test_k4_roots():
    roots = gutkin_roots(4)
    assert [r.degenerate for r in roots] == [False, False]
    assert roots[0].alpha == pytest.approx(ROOT4, abs=1e-10)
    assert roots[1].alpha == pytest.approx(np.pi - ROOT4, abs=1e-10)
    assert roots[0].alpha == pytest.approx(1.1502620, abs=1e-7)
    assert roots[1].alpha == pytest.approx(1.9913307, abs=1e-7)
    # tan form, away from poles
    for r in roots:
        assert abs(np.tan(4 * r.alpha) - 4 * np.tan(r.alpha)) < 1e-10


@pytest.mark.parametrize("k", [5, 6, 7, 8, 13, 20, 33, 64])
def test_roots_match_brute_force(k):
    ours = [r.alpha for r in gutkin_roots(k)]
    ref = brute_force_roots(k)
    assert len(ours) == len(ref)
    np.testing.assert_allclose(ours, ref, atol=1e-10)


def test_residuals_small_and_domain():
    for k in range(2, 65):
        for r in gutkin_roots(k):
            assert r.residual <= 1e-12
            assert abs(gutkin_residual(k, r.alpha)) <= 1e-12
            assert 0 < r.alpha < np.pi
            assert r.degenerate == (abs(r.alpha - np.pi / 2) < 1e-9)


def test_census_pattern():
    # observed pattern: even k has k - 2 proper roots, odd k has k - 3 plus pi/2
    census = root_census(24)
    for k, (proper, degenerate) in census.items():
        assert degenerate == (k % 2 == 1)
        assert proper == (k - 2 if k % 2 == 0 else k - 3)


def test_k_out_of_range():
    with pytest.raises(ValueError):
        gutkin_roots(1)
    with pytest.raises(ValueError):
        gutkin_roots(65)


def test_fattened_hypocycloid_examples():
    p = fattened_hypocycloid(4, 16)
    assert p.a0 == 16 and p.cos[3] == 1
    phi = quadrature_nodes(p)
    assert np.min(curvature_radius(p, phi)) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(NonConvexError):
        fattened_hypocycloid(2, 3)
    p = fattened_hypocycloid(3, 10)
    assert np.min(curvature_radius(p, phi)) == pytest.approx(2.0, abs=1e-12)


def test_verify_invariant_examples():
    assert verify_invariant(FourierSupport(1.0), 0.7) == 0.0
    g = fattened_hypocycloid(4, 16)
    assert verify_invariant(g, ROOT4) <= 1e-9
    res = verify_invariant(g, 1.0)
    assert res > 0.01
    # exact value: sup |cos 4phi - Re(f e^{4 i phi})| = |1 - f|
    assert res == pytest.approx(abs(1 - m_multiplier(4, 1.0).factor), rel=1e-6)


def test_fattened_curves_invariant_at_every_proper_root():
    for k in range(2, 13):
        g = fattened_hypocycloid(k, k * k)
        for r in gutkin_roots(k):
            if r.degenerate:
                continue
            assert verify_invariant(g, r.alpha) <= 1e-9
            assert verify_invariant(g, -r.alpha) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31), st.floats(0.05, 1.5))
def test_invariance_implies_condition(seed, alpha):
    rng = np.random.default_rng(seed)
    ks = rng.choice(np.arange(2, 9), size=int(rng.integers(1, 4)), replace=False)
    # at most one harmonic sees the Gutkin root; mix random and root angles
    roots = [r.alpha for r in gutkin_roots(int(ks[0])) if not r.degenerate and r.alpha < np.pi / 2]
    if roots and rng.uniform() < 0.5:
        alpha = roots[0]
    p = FourierSupport.from_harmonics(5.0, [(int(k), *rng.normal(size=2)) for k in ks])
    if verify_invariant(p, alpha) <= 1e-9:
        for k in ks:
            assert abs(gutkin_residual(int(k), alpha)) <= 1e-8
    # a harmonic fixed by M_alpha satisfies the condition
    for k in ks:
        if abs(m_multiplier(int(k), alpha).factor - 1) < 1e-12:
            assert abs(gutkin_residual(int(k), alpha)) <= 1e-8
    assert m_map(p, alpha).a0 == p.a0
