"""
Angles admitting non-circular curves fixed by ``M_alpha``.

Such a curve exists iff ``tan(k alpha) = k tan(alpha)`` for some ``k >= 2``.
Roots are searched in the pole-free form
``sin(k alpha) cos(alpha) - k cos(k alpha) sin(alpha) = 0``. When the
involute of the fixed curve is convex too, the curve is a billiard caustic
whose tangent trajectories meet the table at the constant angle alpha.
"""

from dataclasses import dataclass

import numpy as np

from ._numerics import bisect
from .errors import NonConvexError
from .support import TWO_PI, FourierSupport, evaluate
from .transforms import is_right_angle, m_map

GRID = 10_000
MAX_K = 64
VERIFY_SAMPLES = 2048


@dataclass(frozen=True)
class GutkinRoot:
    k: int
    alpha: float
    residual: float
    degenerate: bool = False


def gutkin_residual(k, alpha):
    """Pole-free Gutkin function ``sin(k a) cos(a) - k cos(k a) sin(a)``."""
    return np.sin(k * alpha) * np.cos(alpha) - k * np.cos(k * alpha) * np.sin(alpha)


def gutkin_roots(k, grid=GRID):
    """All roots of the Gutkin condition for order ``k`` in ``(0, pi)``.

    Sign changes on a midpoint grid (which never hits ``0``, ``pi`` or
    ``pi/2``) are refined by bisection to machine precision. The root at
    ``pi/2`` that odd ``k`` always has is returned flagged ``degenerate``.
    """
    k = int(k)
    if not 2 <= k <= MAX_K:
        raise ValueError(f"k must be in [2, {MAX_K}], got {k}")
    a = (np.arange(grid) + 0.5) * (np.pi / grid)
    f = gutkin_residual(k, a)
    roots = []
    for i in np.flatnonzero(np.sign(f[:-1]) != np.sign(f[1:])):
        alpha = float(bisect(lambda t: gutkin_residual(k, t), a[i], a[i + 1]))
        residual = float(abs(gutkin_residual(k, alpha)))
        roots.append(GutkinRoot(k, alpha, residual, bool(is_right_angle(alpha))))
    return roots


def fattened_hypocycloid(k, c):
    """``c + cos(k phi)``, strictly convex when ``c > k^2 - 1``."""
    if c <= k * k - 1:
        raise NonConvexError(f"c = {c} must exceed k^2 - 1 = {k * k - 1} for a convex curve")
    return FourierSupport.hypocycloid(k, 1.0, 0.0, offset=c)


def verify_invariant(p, alpha, samples=VERIFY_SAMPLES):
    """Sup-norm distance between ``p`` and ``M_alpha(p)`` on a uniform grid."""
    phi = np.arange(samples) * (TWO_PI / samples)
    return float(np.max(np.abs(evaluate(p, phi) - evaluate(m_map(p, alpha), phi))))


def root_census(k_max=16):
    """``{k: (nondegenerate root count, has degenerate root)}`` for ``k = 2..k_max``."""
    out = {}
    for k in range(2, k_max + 1):
        roots = gutkin_roots(k)
        out[k] = (sum(not r.degenerate for r in roots), any(r.degenerate for r in roots))
    return out
