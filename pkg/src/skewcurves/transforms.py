"""
Skew evolute, skew involute and the map ``M_alpha`` acting harmonic by harmonic.

The skew evolute has support ``q(phi) = p(phi - a) cos a + p'(phi - a) sin a``.
On ``e^{i k phi}`` this is multiplication by ``e^{-i k a} (cos a + i k sin a)``,
so every operator here is a diagonal multiplier on the complex coefficients.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NoClosedInvoluteError, RightAngleError
from .support import FourierSupport

#: coefficients smaller than this after a transform are dropped (k = 1 excepted)
PRUNE_TOL = 1e-15
RIGHT_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class HarmonicMultiplier:
    """Complex factor applied to the ``k``-th coefficient ``a_k``."""

    k: int
    factor: complex

    @property
    def modulus(self):
        return abs(self.factor)

    @property
    def angle(self):
        return float(np.angle(self.factor))

    def matrix(self):
        """Real 2x2 action on the coefficient pair ``(c_k, s_k)``."""
        return _real_matrix(self.factor)


def _real_matrix(f):
    x, y = f.real, f.imag
    return np.array([[x, y], [-y, x]])


def is_right_angle(alpha):
    return abs(np.cos(alpha)) < RIGHT_ANGLE_TOL


def _d_factors(ks, alpha):
    ks = np.asarray(ks, dtype=float)
    f = np.exp(-1j * ks * alpha) * (np.cos(alpha) + 1j * ks * np.sin(alpha))
    # first harmonics are fixed exactly (translations, Steiner point)
    return np.where(ks == 1, 1.0 + 0j, f)


def _m_factors(ks, alpha):
    if is_right_angle(alpha):
        raise RightAngleError("M_alpha needs the skew involute, undefined at alpha = pi/2")
    ks = np.asarray(ks, dtype=float)
    f = _d_factors(ks, -alpha) / _d_factors(ks, alpha)
    return np.where(ks <= 1, 1.0 + 0j, f)


def d_multiplier(k, alpha):
    """Multiplier of the skew-evolute operator ``D_alpha`` on harmonic ``k``.

    Its modulus is the dilation coefficient ``sqrt(1 + (k^2 - 1) sin^2 alpha)``.
    """
    if k < 0:
        raise ValueError("harmonic order must be >= 0")
    if k == 0:
        return HarmonicMultiplier(0, complex(np.cos(alpha)))
    return HarmonicMultiplier(int(k), complex(_d_factors([k], alpha)[0]))


def dilation_coefficient(k, alpha):
    return float(np.sqrt(1.0 + (k * k - 1.0) * np.sin(alpha) ** 2))


def beta(k, alpha):
    """Angle with ``tan(beta) = k tan(alpha)``, continuous across ``alpha = pi/2``."""
    return float(np.arctan2(k * np.sin(alpha), np.cos(alpha)))


def m_multiplier(k, alpha):
    """Multiplier of ``M_alpha = E_{-alpha} o I_alpha`` on harmonic ``k`` (unit modulus)."""
    if k < 0:
        raise ValueError("harmonic order must be >= 0")
    return HarmonicMultiplier(int(k), complex(_m_factors([k], alpha)[0]))


def m_rotation_angles(k, alpha):
    """Phase rotation of harmonic ``k`` under ``M_alpha`` and two closed-form predictions.

    ``composed`` is ``arg m_multiplier``; ``shift_form`` is ``2 (k alpha - beta_k)``;
    ``unshifted_form`` is ``2 (beta_k - alpha)``. All are wrapped to ``(-pi, pi]``.
    """
    b = beta(k, alpha)

    def wrap(x):
        return float(np.angle(np.exp(1j * x)))

    return {
        "composed": m_multiplier(k, alpha).angle,
        "shift_form": wrap(2.0 * (k * alpha - b)),
        "unshifted_form": wrap(2.0 * (b - alpha)),
    }


def similarity_matrix(k, alpha):
    """The 2x2 similarity ``[[cos^2 + k sin^2, (k-1) cos sin], [-(k-1) cos sin, cos^2 + k sin^2]]``.

    It equals the action of ``p -> p cos a + p' sin a`` followed by rotating the
    harmonic plane by ``a``; the skew evolute's own matrix differs from it by a
    further rotation of ``(k - 1) a`` (see ``d_multiplier(k, a).matrix()``).
    """
    c, s = np.cos(alpha), np.sin(alpha)
    diag = c * c + k * s * s
    off = (k - 1) * c * s
    return np.array([[diag, off], [-off, diag]])


def _apply(p, a0_factor, factors, prune=True):
    c, s = p.cos, p.sin
    x, y = factors.real, factors.imag
    c2 = x * c + y * s
    s2 = x * s - y * c
    a0 = a0_factor * p.a0
    if prune:
        small = np.hypot(c2, s2) < PRUNE_TOL
        small[:1] = False
        c2 = np.where(small, 0.0, c2)
        s2 = np.where(small, 0.0, s2)
        if abs(a0) < PRUNE_TOL:
            a0 = 0.0
    return FourierSupport(a0, c2, s2)


def skew_evolute(p, alpha):
    """Support function of the skew evolute ``E_alpha``."""
    return _apply(p, np.cos(alpha), _d_factors(p.orders, alpha))


def skew_involute(q, alpha, full_output=False):
    """Closed skew involute ``I_alpha(q)``, the inverse of :func:`skew_evolute`.

    For ``cos(alpha) != 0`` it is unique. At a right angle it exists only
    when ``a0(q) == 0`` and then forms a one-parameter family (a free
    constant term); the representative with ``a0 = 0`` is returned.

    Returns
    -------
    p : FourierSupport
    free_constant : bool
        Only with ``full_output=True``; true when the constant term is free.

    Raises
    ------
    NoClosedInvoluteError
        Right angle and nonzero signed length of ``q``.
    """
    d = _d_factors(q.orders, alpha)
    inv = np.conj(d) / (d.real**2 + d.imag**2)
    inv = np.where(q.orders == 1, 1.0 + 0j, inv)
    if is_right_angle(alpha):
        if abs(q.a0) > PRUNE_TOL:
            raise NoClosedInvoluteError(
                f"no closed involute at alpha = pi/2: signed length 2*pi*{q.a0!r} is nonzero"
            )
        p = _apply(FourierSupport(0.0, q.cos, q.sin), 0.0, inv)
        free = True
    else:
        p = _apply(q, 1.0 / np.cos(alpha), inv)
        free = False
    return (p, free) if full_output else p


def m_map(p, alpha):
    """``M_alpha = E_{-alpha} o I_alpha``: a rotation of every harmonic plane."""
    return _apply(p, 1.0, _m_factors(p.orders, alpha))
