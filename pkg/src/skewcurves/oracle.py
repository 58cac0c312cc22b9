"""
Skew evolutes computed geometrically, as envelopes of rotated tangent lines.

Nothing here uses the Fourier multipliers: a curve is given by closed-form
position, velocity and acceleration, each tangent line is turned through
``alpha`` about its tangency point, and the characteristic point of the
resulting line family is computed directly. This is the independent check
on :mod:`skewcurves.transforms`, and also carries the open-curve examples
(cycloid, logarithmic spirals, parabola) whose support functions are not
periodic.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from ._numerics import bisect, dead_band_signs, sign_change_brackets
from .errors import DegenerateCurveError, StationaryLineError
from .support import (
    TWO_PI,
    PlaneCurveSamples,
    cusp_locations,
    evaluate,
    sample_curve,
)
from .transforms import skew_evolute

STATIONARY_TOL = 1e-12
CUSP_EXCLUSION = 0.01
_FD_STEP = 1e-3


def _det(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _rotate(v, alpha):
    c, s = np.cos(alpha), np.sin(alpha)
    return np.stack([c * v[..., 0] - s * v[..., 1], s * v[..., 0] + c * v[..., 1]], axis=-1)


@dataclass(frozen=True)
class ParametricCurve:
    """Twice differentiable plane curve on ``domain`` with closed-form derivatives.

    The three evaluators take an array of parameters and return ``(..., 2)``.
    """

    domain: tuple
    position: Callable
    velocity: Callable
    acceleration: Callable
    closed: bool = False

    def _grid(self, n=1024):
        t0, t1 = self.domain
        return np.linspace(t0, t1, n, endpoint=not self.closed)

    @cached_property
    def regular(self):
        """True when the velocity does not vanish on a 1024-point grid."""
        v = self.velocity(self._grid())
        return bool(np.all(np.hypot(v[:, 0], v[:, 1]) > 1e-12))

    def contains(self, t):
        t0, t1 = self.domain
        t = np.asarray(t)
        return bool(np.all((t >= t0) & (t <= t1)))

    def curvature_radius(self, t):
        """``ds/dtheta``: signed radius as a function of the parameter."""
        v = self.velocity(t)
        a = self.acceleration(t)
        speed = np.hypot(v[..., 0], v[..., 1])
        with np.errstate(divide="ignore", invalid="ignore"):
            return speed**3 / _det(v, a)

    def turning_rate(self, t):
        """``dtheta/dt`` of the tangent direction."""
        v = self.velocity(t)
        a = self.acceleration(t)
        return _det(v, a) / (v[..., 0] ** 2 + v[..., 1] ** 2)

    def radius_derivative(self, t, h=_FD_STEP):
        """``dr/dtheta`` by a five-point stencil in ``t`` (the curve has no jerk evaluator)."""
        t = np.asarray(t, dtype=float)
        r = self.curvature_radius
        with np.errstate(divide="ignore", invalid="ignore"):
            drdt = (-r(t + 2 * h) + 8 * r(t + h) - 8 * r(t - h) + r(t - 2 * h)) / (12 * h)
            return drdt / self.turning_rate(t)


@dataclass(frozen=True)
class OrientedLine:
    point: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        norm = np.hypot(*d)
        if not abs(norm - 1.0) <= 1e-14:
            d = d / norm
        object.__setattr__(self, "point", np.asarray(self.point, dtype=float))
        object.__setattr__(self, "direction", d)

    @property
    def normal_angle(self):
        """Direction of the coorienting normal (the direction turned by ``-pi/2``)."""
        return float(np.arctan2(self.direction[1], self.direction[0]) - np.pi / 2)

    @property
    def support_number(self):
        phi = self.normal_angle
        return float(self.point @ np.array([np.cos(phi), np.sin(phi)]))


def _check_domain(curve, t):
    if not curve.contains(t):
        raise ValueError(f"parameter outside the curve domain {curve.domain}")


def _unit_tangent(curve, t):
    v = curve.velocity(t)
    return v / np.hypot(v[..., 0], v[..., 1])[..., None]


def rotated_tangent(curve, t, alpha):
    """Tangent line at ``t`` turned through ``alpha`` about the tangency point."""
    _check_domain(curve, t)
    return OrientedLine(curve.position(t), _rotate(_unit_tangent(curve, t), alpha))


def _envelope(curve, t, alpha):
    """Envelope points and the ``det(u', u)`` values along ``t`` (vectorized)."""
    t = np.asarray(t, dtype=float)
    v = curve.velocity(t)
    a = curve.acceleration(t)
    speed = np.hypot(v[..., 0], v[..., 1])
    tangent = v / speed[..., None]
    # derivative of the unit tangent: (a |v|^2 - v <v, a>) / |v|^3
    dot = v[..., 0] * a[..., 0] + v[..., 1] * a[..., 1]
    dtangent = (a * (speed**2)[..., None] - v * dot[..., None]) / (speed**3)[..., None]
    u = _rotate(tangent, alpha)
    du = _rotate(dtangent, alpha)
    den = _det(du, u)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = -_det(v, u) / den
    return curve.position(t) + s[..., None] * u, den


def envelope_point(curve, t, alpha):
    """Characteristic point at ``t`` of the family of rotated tangent lines.

    With ``u`` the rotated unit tangent it is ``gamma + s u`` where
    ``s = -det(gamma', u) / det(u', u)``.
    """
    _check_domain(curve, t)
    pt, den = _envelope(curve, float(t), alpha)
    if not abs(den) >= STATIONARY_TOL:
        raise StationaryLineError(f"rotated tangent line is stationary at t = {t}")
    return pt


def image_radius(curve, t, alpha):
    """``r cos(alpha) + r' sin(alpha)``: curvature radius of the skew evolute at line ``t``."""
    return curve.curvature_radius(t) * np.cos(alpha) + curve.radius_derivative(t) * np.sin(
        alpha
    )


def skew_evolute_numeric(curve, alpha, n):
    """Envelope points on ``n`` uniform parameters, with cusp flags.

    Samples where the line family is stationary are NaN (gaps).
    """
    if n < 16:
        raise ValueError("need at least 16 samples")
    t = curve._grid(n)
    pts, den = _envelope(curve, t, alpha)
    pts[~(np.abs(den) >= STATIONARY_TOL)] = np.nan
    g = image_radius(curve, t, alpha)
    signs, _ = dead_band_signs(np.nan_to_num(g))
    flags = np.zeros(n if curve.closed else n - 1, dtype=bool)
    for i, j in sign_change_brackets(signs, curve.closed):
        # mark the interval just before the sign is seen to change
        flags[(j - 1) % n if curve.closed else j - 1] = True
    return PlaneCurveSamples(pts, t, flags, closed=curve.closed)


def envelope_cusps(curve, alpha, n=2048):
    """Parameters where ``r cos(alpha) + r' sin(alpha)`` changes sign, refined by bisection."""
    t = curve._grid(n)
    signs, _ = dead_band_signs(image_radius(curve, t, alpha))
    out = []
    for i, j in sign_change_brackets(signs, curve.closed):
        lo, hi = t[i], t[j]
        if hi <= lo:
            hi += curve.domain[1] - curve.domain[0]
        out.append(bisect(lambda x: image_radius(curve, x, alpha), lo, hi))
    return np.array(out)


def intersection_evolute(curve, alpha, n):
    """Skew evolute from intersections of neighbouring rotated tangent lines.

    Returns ``(midpoint parameters, points)``; the points approximate the
    envelope at the midpoints with ``O(h^2)`` error.
    """
    t = curve._grid(n)
    if curve.closed:
        t2 = np.append(t[1:], t[0] + (curve.domain[1] - curve.domain[0]))
    else:
        t, t2 = t[:-1], t[1:]
    p1, p2 = curve.position(t), curve.position(t2)
    u1 = _rotate(_unit_tangent(curve, t), alpha)
    u2 = _rotate(_unit_tangent(curve, t2), alpha)
    # p1 + a u1 = p2 + b u2
    with np.errstate(divide="ignore", invalid="ignore"):
        a = _det(p2 - p1, u2) / _det(u1, u2)
    return 0.5 * (t + t2), p1 + a[..., None] * u1


# -- curves from support functions -----------------------------------------

def curve_from_support(p):
    """Closed :class:`ParametricCurve` of the hedgehog with Fourier support ``p``."""

    def position(phi):
        phi = np.asarray(phi, dtype=float)
        v, dv = evaluate(p, phi, 0), evaluate(p, phi, 1)
        c, s = np.cos(phi), np.sin(phi)
        return np.stack([v * c - dv * s, v * s + dv * c], axis=-1)

    return _curve_from_derivatives(lambda phi, order: evaluate(p, phi, order), position,
                                   (0.0, TWO_PI), closed=True)


def _curve_from_derivatives(deriv, position, domain, closed):
    # gamma' = r t, gamma'' = r' t - r n with r = p + p'', t = (-sin, cos), n = (cos, sin)
    def velocity(phi):
        phi = np.asarray(phi, dtype=float)
        r = deriv(phi, 0) + deriv(phi, 2)
        return np.stack([-r * np.sin(phi), r * np.cos(phi)], axis=-1)

    def acceleration(phi):
        phi = np.asarray(phi, dtype=float)
        r = deriv(phi, 0) + deriv(phi, 2)
        dr = deriv(phi, 1) + deriv(phi, 3)
        c, s = np.cos(phi), np.sin(phi)
        return np.stack([-dr * s - r * c, dr * c - r * s], axis=-1)

    return ParametricCurve(domain, position, velocity, acceleration, closed)


@dataclass(frozen=True)
class OpenSupport:
    """Support function on an interval, given by ``func(phi, order)`` for any derivative order."""

    func: Callable
    domain: tuple = (-np.inf, np.inf)

    def __call__(self, phi, order=0):
        lo, hi = self.domain
        phi = np.asarray(phi, dtype=float)
        if np.any((phi < lo) | (phi > hi)):
            raise ValueError(f"phi outside the support domain {self.domain}")
        out = self.func(phi, order)
        return out if np.ndim(out) else float(out)

    def curve(self, domain=None):
        """:class:`ParametricCurve` over ``domain`` (defaults to the support domain)."""
        domain = self.domain if domain is None else domain

        def position(phi):
            phi = np.asarray(phi, dtype=float)
            v, dv = self.func(phi, 0), self.func(phi, 1)
            c, s = np.cos(phi), np.sin(phi)
            return np.stack([v * c - dv * s, v * s + dv * c], axis=-1)

        return _curve_from_derivatives(self.func, position, tuple(domain), closed=False)


def open_support_evolute(p, alpha):
    """``q(phi) = p(phi - alpha) cos(alpha) + p'(phi - alpha) sin(alpha)`` on the shifted domain."""
    c, s = np.cos(alpha), np.sin(alpha)
    lo, hi = p.domain

    def func(phi, order):
        return c * p.func(phi - alpha, order) + s * p.func(phi - alpha, order + 1)

    return OpenSupport(func, (lo + alpha, hi + alpha))


def cycloid_support():
    """``p(phi) = -phi cos(phi)``."""

    def func(phi, order):
        # d^n (phi cos phi) = phi cos(phi + n pi/2) + n cos(phi + (n - 1) pi/2)
        shift = order * np.pi / 2
        return -(phi * np.cos(phi + shift) + order * np.cos(phi + shift - np.pi / 2))

    return OpenSupport(func)


def exponential_support(terms):
    """``p(phi) = sum c_i exp(b_i phi)`` for ``terms = [(c_i, b_i), ...]``."""
    terms = [(float(c), float(b)) for c, b in terms]

    def func(phi, order):
        return sum(c * b**order * np.exp(b * phi) for c, b in terms)

    return OpenSupport(func)


def log_spiral_support(c):
    """``p(phi) = exp(c phi)``."""
    return exponential_support([(1.0, c)])


def cycloid_evolute_shift(alpha):
    """First-harmonic pair ``(c, s)`` by which the cycloid's skew evolute is translated.

    Substituting ``-phi cos(phi)`` gives ``(alpha - cos(alpha) sin(alpha), -sin(alpha)^2)``.
    """
    return np.array([alpha - np.cos(alpha) * np.sin(alpha), -np.sin(alpha) ** 2])


def log_spiral_multiplier(c, alpha):
    """``exp(-c alpha) (cos(alpha) + c sin(alpha))``: the spiral's skew evolute is this multiple."""
    return float(np.exp(-c * alpha) * (np.cos(alpha) + c * np.sin(alpha)))


def spiral_pair_residual(b1, b2, alpha):
    """``b2 ln(cos a + b1 sin a) - b1 ln(cos a + b2 sin a)``; zero iff the congruence condition holds."""
    base1 = np.cos(alpha) + b1 * np.sin(alpha)
    base2 = np.cos(alpha) + b2 * np.sin(alpha)
    # NaN where a base is nonpositive
    with np.errstate(invalid="ignore", divide="ignore"):
        return b2 * np.log(base1) - b1 * np.log(base2)


def spiral_pair_congruence(b1, b2, alpha, tol=1e-10):
    """Rotation angle ``psi`` taking ``c1 e^{b1 phi} + c2 e^{b2 phi}`` to its skew evolute.

    Returns ``None`` when ``(cos a + b1 sin a)^b2 != (cos a + b2 sin a)^b1``
    (to ``tol``, in logarithmic form).
    """
    if b1 == b2:
        raise ValueError("b1 and b2 must differ")
    if b1 == 0.0 or b2 == 0.0:
        raise ValueError("exponents must be nonzero")
    bases = [np.cos(alpha) + b * np.sin(alpha) for b in (b1, b2)]
    if min(bases) <= 0.0:
        raise ValueError("cos(alpha) + b sin(alpha) must be positive for both exponents")
    if abs(spiral_pair_residual(b1, b2, alpha)) > tol:
        return None
    return float(alpha - np.log(bases[0]) / b1)


def spiral_pair_angles(b1, b2, grid=4000):
    """Nonzero angles in ``(-pi, pi)`` where the two-exponential congruence condition holds."""
    # admissible interval: both bases positive
    a = np.linspace(-np.pi, np.pi, grid + 1)[1:-1]
    with np.errstate(invalid="ignore", divide="ignore"):
        g = spiral_pair_residual(b1, b2, a)
    ok = np.isfinite(g) & (np.abs(a) > 1e-6)
    roots = []
    for i in range(a.size - 1):
        if ok[i] and ok[i + 1] and np.sign(g[i]) * np.sign(g[i + 1]) < 0:
            roots.append(bisect(lambda x: spiral_pair_residual(b1, b2, x), a[i], a[i + 1]))
    return roots


def parabola_curve(t0=-10.0, t1=10.0):
    """The parabola ``(t, t^2 / 2)``."""
    return ParametricCurve(
        (t0, t1),
        lambda t: np.stack([np.asarray(t, float), 0.5 * np.asarray(t, float) ** 2], axis=-1),
        lambda t: np.stack([np.ones_like(np.asarray(t, float)), np.asarray(t, float)], axis=-1),
        lambda t: np.stack(
            [np.zeros_like(np.asarray(t, float)), np.ones_like(np.asarray(t, float))], axis=-1
        ),
    )


# -- cross-validation ------------------------------------------------------

def _circular_near(x, centres, radius):
    if centres.size == 0:
        return np.zeros(x.shape, dtype=bool)
    d = np.abs((x[:, None] - centres[None, :] + np.pi) % TWO_PI - np.pi)
    return np.any(d < radius, axis=1)


def oracle_deviation(p, alpha, n, exclusion=CUSP_EXCLUSION, return_mask=False):
    """Largest distance between envelope points and the spectral skew evolute.

    The envelope is evaluated at line parameters ``phi_j - alpha`` so each
    point lands on sample ``j`` of ``sample_curve(skew_evolute(p, alpha), n)``.
    Samples within ``exclusion`` of a cusp of either curve are skipped.
    """
    if n < 64:
        raise ValueError("need at least 64 samples")
    curve = curve_from_support(p)
    target = sample_curve(skew_evolute(p, alpha), n)
    phi = target.params
    env, den = _envelope(curve, phi - alpha, alpha)
    keep = np.abs(den) >= STATIONARY_TOL
    keep &= ~_circular_near(phi - alpha, cusp_locations(p), exclusion)
    try:
        image_cusps = cusp_locations(skew_evolute(p, alpha))
    except DegenerateCurveError:
        image_cusps = np.zeros(0)
    keep &= ~_circular_near(phi, image_cusps, exclusion)
    if not np.any(keep):
        raise DegenerateCurveError("every sample lies next to a cusp")
    dist = np.hypot(*(env[keep] - target.points[keep]).T)
    result = float(np.max(dist))
    return (result, keep) if return_mask else result
