"""Small root-finding helpers shared by the cusp, Gutkin and oracle code."""

import numpy as np


def bisect(func, lo, hi, xtol=0.0, maxiter=200):
    """Bisection on a sign-changing bracket ``[lo, hi]``.

    With ``xtol=0`` the bracket is halved until the midpoint can no longer
    be distinguished from an endpoint, and the endpoint with the smaller
    ``|func|`` is returned.
    """
    flo = func(lo)
    fhi = func(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise ValueError(f"root not bracketed in [{lo}, {hi}]")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid <= min(lo, hi) or mid >= max(lo, hi) or abs(hi - lo) <= xtol:
            break
        fmid = func(mid)
        if fmid == 0.0:
            return mid
        if np.sign(fmid) == np.sign(flo):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return lo if abs(flo) <= abs(fhi) else hi


def dead_band_signs(values, rel_tol=1e-9):
    """Signs of ``values`` with entries below ``rel_tol * max|values|`` set to 0."""
    values = np.asarray(values, dtype=float)
    scale = np.max(np.abs(values)) if values.size else 0.0
    signs = np.sign(values)
    signs[np.abs(values) < rel_tol * scale] = 0.0
    return signs, scale


def sign_change_brackets(signs, circular):
    """Index pairs ``(i, j)`` of consecutive nonzero signs that differ.

    Zero entries are skipped, so a bracket may span several samples.
    """
    idx = np.flatnonzero(signs)
    if idx.size < 2:
        return []
    pairs = list(zip(idx[:-1], idx[1:]))
    if circular:
        pairs.append((idx[-1], idx[0]))
    return [(int(i), int(j)) for i, j in pairs if signs[i] != signs[j]]
