"""
Iterating the operators: convergence in shape, cusp growth and torus orbits.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCurveError
from .support import FourierSupport, amplitude_array, amplitudes, cusp_count
from .transforms import m_map, m_multiplier, skew_evolute, skew_involute

MODES = ("evolute", "involute", "m_map")
WEYL_ORDER = 3
MAX_WEYL_VECTORS = 200_000


@dataclass(frozen=True, eq=False)
class IterationTrace:
    """Record of ``n`` iterations of one operator.

    ``supports[0]`` is the input. ``scales[i]`` is the amount step ``i`` was
    divided by after the transform, so the un-normalized iterate is
    ``scales[i] * supports[i]`` relative to ``supports[i - 1]``.
    ``cusp_counts`` holds ``None`` where the iterate is a point.
    """

    alpha: float
    mode: str
    supports: list
    scales: list
    cusp_counts: list

    def __len__(self):
        return len(self.supports)

    @property
    def final(self):
        return self.supports[-1]

    def amplitude_table(self):
        """``(steps + 1, d + 1)`` array of ``|a_k|`` along the trace."""
        d = max(p.degree for p in self.supports)
        return np.array([amplitude_array(p, d) for p in self.supports])

    def dominant_orders(self):
        return [int(np.argmax(row)) for row in self.amplitude_table()]


def _safe_cusps(p):
    try:
        return cusp_count(p)
    except DegenerateCurveError:
        return None


def _step(p, alpha, mode):
    if mode == "evolute":
        return skew_evolute(p, alpha)
    if mode == "involute":
        return skew_involute(p, alpha)
    if mode == "m_map":
        return m_map(p, alpha)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def iterate(p, alpha, n, mode="evolute", count_cusps=True):
    """Apply an operator ``n`` times, renormalizing by the dominant amplitude.

    Shape is all that matters, so evolute and involute iterates are divided
    by their largest amplitude each step. ``m_map`` preserves amplitudes and
    is left unscaled.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if not amplitudes(p):
        raise DegenerateCurveError("all amplitudes are zero")
    supports, scales = [p], [1.0]
    counts = [_safe_cusps(p) if count_cusps else None]
    for _ in range(n):
        q = _step(supports[-1], alpha, mode)
        scale = 1.0
        if mode != "m_map":
            scale = float(np.max(amplitude_array(q)))
            if scale == 0.0:
                raise DegenerateCurveError("iterate collapsed to zero")
            q = q * (1.0 / scale)
        supports.append(q)
        scales.append(scale)
        counts.append(_safe_cusps(q) if count_cusps else None)
    return IterationTrace(float(alpha), mode, supports, scales, counts)


def shape_distance(p, d):
    """Relative energy outside harmonic ``d``: ``sqrt(sum_{k != d} |a_k|^2) / |a_d|``."""
    amp = amplitude_array(p, max(p.degree, d))
    if amp[d] == 0.0:
        raise ValueError(f"harmonic {d} is absent")
    rest = np.delete(amp, d)
    return float(np.sqrt(np.sum(rest**2)) / amp[d])


def cusp_growth(p, alpha, n):
    """Cusp counts of the first ``n`` skew-evolute iterates."""
    return iterate(p, alpha, n, "evolute").cusp_counts[1:]


@dataclass(frozen=True, eq=False)
class TorusState:
    """Point of the torus of hedgehogs with fixed harmonic amplitudes.

    ``phases[k]`` is ``arg a_k`` in ``[0, 2 pi)`` for each ``k >= 1`` with
    nonzero amplitude; ``amplitudes`` maps ``k`` (including 0) to ``|a_k|``.
    ``a0`` keeps the sign of the constant term.
    """

    phases: dict
    amplitudes: dict
    a0: float = 0.0

    def __post_init__(self):
        phases = {int(k): float(np.mod(t, 2 * np.pi)) for k, t in self.phases.items()}
        for k in phases:
            if self.amplitudes.get(k, 0.0) <= 0.0:
                raise ValueError(f"phase given for harmonic {k} with zero amplitude")
        object.__setattr__(self, "phases", dict(sorted(phases.items())))

    @classmethod
    def from_support(cls, p):
        coeffs = p.coefficients()
        amps = amplitudes(p)
        phases = {k: float(np.angle(coeffs[k])) for k in amps if k >= 1}
        return cls(phases, amps, p.a0)

    def to_support(self):
        d = max(self.phases, default=0)
        coeffs = np.zeros(d + 1, dtype=complex)
        coeffs[0] = self.a0
        for k, t in self.phases.items():
            coeffs[k] = self.amplitudes[k] * np.exp(1j * t)
        return FourierSupport.from_complex(coeffs)

    def rotated(self, angles):
        return TorusState(
            {k: t + angles.get(k, 0.0) for k, t in self.phases.items()}, self.amplitudes, self.a0
        )


def rotation_angles(state, alpha):
    """Per-factor rotation of ``M_alpha``: ``arg m_multiplier(k, alpha)``."""
    return {k: m_multiplier(k, alpha).angle for k in state.phases}


def rotate_orbit(state, angles, n):
    """``[state, R(state), ..., R^n(state)]`` for the rotation by ``angles``."""
    ks = list(state.phases)
    base = np.array([state.phases[k] for k in ks])
    step = np.array([angles.get(k, 0.0) for k in ks])
    out = []
    for j in range(n + 1):
        theta = base + j * step
        out.append(TorusState(dict(zip(ks, theta)), state.amplitudes, state.a0))
    return out


def torus_orbit(state, alpha, n):
    """Orbit of ``M_alpha`` on the torus: ``n`` steps, the start included."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return rotate_orbit(state, rotation_angles(state, alpha), n)


def equidistribution_stat(orbit, factors=None, max_order=WEYL_ORDER):
    """Largest normalized Weyl sum ``|1/N sum_n exp(i m . theta_n)|``.

    Taken over nonzero integer vectors ``m`` with ``|m|_inf <= max_order``
    on the selected torus factors (default: all). Values near 0 suggest an
    equidistributed orbit; 1 means some character is constant on it.
    """
    if len(orbit) < 16:
        raise ValueError("orbit must have at least 16 points")
    ks = list(orbit[0].phases) if factors is None else [int(k) for k in factors]
    if not ks:
        return 1.0
    theta = np.array([[s.phases[k] for k in ks] for s in orbit])
    n_vec = (2 * max_order + 1) ** len(ks)
    if n_vec > MAX_WEYL_VECTORS:
        raise ValueError(f"{len(ks)} factors give {n_vec} frequency vectors; select fewer factors")
    best = 0.0
    rng = range(-max_order, max_order + 1)
    vecs = np.array([m for m in itertools.product(rng, repeat=len(ks)) if any(m)], dtype=float)
    # m and -m give conjugate sums; keep one of each pair
    vecs = vecs[: len(vecs) // 2]
    for chunk in np.array_split(vecs, max(1, len(vecs) // 512)):
        sums = np.exp(1j * (theta @ chunk.T)).mean(axis=0)
        best = max(best, float(np.max(np.abs(sums))))
    return best
