"""Small numeric helpers shared by the univalence and verifier modules."""
from __future__ import annotations

import math

import numpy as np

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def sin_multiple(k: int, gamma):
    """``sin(k*gamma)`` for gamma in [0, pi].

    For gamma > pi/2 the value is computed from delta = pi - gamma as
    ``(-1)**(k+1) * sin(k*delta)``, so that every multiple of one argument
    sees the same rounding of delta (matters near gamma = pi).
    """
    g = np.asarray(gamma, dtype=float)
    d = np.pi - g
    sign = 1.0 if k % 2 else -1.0
    out = np.where(g > np.pi / 2, sign * np.sin(k * d), np.sin(k * g))
    return float(out) if out.ndim == 0 else out


def sin_ratio(k: int, gamma):
    """``sin(k*gamma) / sin(gamma)`` with the limits k and (-1)**(k+1) k at 0, pi."""
    g = np.asarray(gamma, dtype=float)
    num = sin_multiple(k, g)
    den = sin_multiple(1, g)
    tiny = np.abs(den) < 1e-300
    lim = np.where(g > np.pi / 2, (1.0 if k % 2 else -1.0) * k, float(k))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(tiny, lim, num / np.where(tiny, 1.0, den))
    return float(out) if np.ndim(out) == 0 else out


def golden_min(f, lo, hi, tol: float = 1e-12, max_iter: int = 200):
    """Vectorized golden-section minimization over brackets ``[lo, hi]``.

    ``f`` maps an array of abscissae to an array of values. Returns
    ``(x, f(x))`` arrays.
    """
    a = np.array(lo, dtype=float, ndmin=1)
    b = np.array(hi, dtype=float, ndmin=1)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if np.all(b - a <= tol):
            break
        left = fc < fd
        # left: minimum in [a, d]; else in [c, b]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        nc = np.where(left, b - _INVPHI * (b - a), d)
        nd = np.where(left, c, a + _INVPHI * (b - a))
        new_x = np.where(left, nc, nd)
        fnew = f(new_x)
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
        c, d = nc, nd
    x = np.where(fc < fd, c, d)
    fx = np.minimum(fc, fd)
    return x, fx
