"""Dense complex polynomials: evaluation, differentiation and root finding.

Coefficients are stored in ascending order, ``coeffs[j]`` multiplying ``z**j``.
Scalars are plain Python ``complex`` values; arrays of points are accepted
wherever a scalar is, and evaluation is vectorized over them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ConvergenceError",
    "EvaluationOverflow",
    "Polynomial",
    "batch_roots",
    "derivative",
    "evaluate",
    "find_roots",
    "residual_bound",
]

MAX_ITER = 200
ABERTH_TOL = 1e-13
_EPS = np.finfo(float).eps


class ConvergenceError(RuntimeError):
    """Simultaneous iteration hit the iteration cap.

    ``best`` holds the last iterate, which is usually still a useful
    approximation of the roots; ``rows`` lists the batch rows that had not
    converged.
    """

    def __init__(self, message: str, best: np.ndarray, rows: np.ndarray | None = None):
        super().__init__(message)
        self.best = best
        self.rows = rows


class EvaluationOverflow(ArithmeticError):
    """A polynomial evaluation produced a non-finite value."""


@dataclass(frozen=True, eq=False)
class Polynomial:
    coeffs: np.ndarray

    def __init__(self, coeffs: Iterable[complex]):
        arr = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                       dtype=complex).ravel()
        if arr.size == 0:
            raise ValueError("a polynomial needs at least one coefficient")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if nz.size else 0

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[self.degree])

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.coeffs.imag == 0.0))

    def trimmed(self) -> "Polynomial":
        return Polynomial(self.coeffs[: self.degree + 1])

    def support(self) -> list[int]:
        """Indices of the nonzero coefficients."""
        return [int(j) for j in np.flatnonzero(self.coeffs)]

    def __call__(self, z):
        return evaluate(self, z)

    def __len__(self) -> int:
        return self.coeffs.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.trimmed().coeffs, other.trimmed().coeffs
        return a.shape == b.shape and bool(np.all(a == b))

    def __repr__(self) -> str:
        return f"Polynomial({self.coeffs.tolist()!r})"

    def allclose(self, other: "Polynomial", atol: float = 1e-12) -> bool:
        n = max(len(self), len(other))
        a = np.zeros(n, complex)
        b = np.zeros(n, complex)
        a[: len(self)] = self.coeffs
        b[: len(other)] = other.coeffs
        return bool(np.all(np.abs(a - b) <= atol))

    @classmethod
    def from_roots(cls, roots: Sequence[complex], leading: complex = 1.0) -> "Polynomial":
        c = np.array([1.0 + 0j])
        for r in roots:
            c = np.concatenate([[0j], c]) - r * np.concatenate([c, [0j]])
        return cls(leading * c)

    @classmethod
    def from_terms(cls, terms: dict[int, complex]) -> "Polynomial":
        """Build from a ``{degree: coefficient}`` mapping."""
        if not terms:
            return cls([0.0])
        c = np.zeros(max(terms) + 1, complex)
        for k, v in terms.items():
            if k < 0:
                raise ValueError("negative degree")
            c[k] = v
        return cls(c)


def _horner(coeffs: np.ndarray, z):
    acc = np.zeros_like(np.asarray(z, dtype=complex)) + coeffs[-1]
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def evaluate(p: Polynomial, z):
    """Horner evaluation of ``p`` at ``z`` (scalar or array)."""
    with np.errstate(over="ignore", invalid="ignore"):
        out = _horner(p.coeffs, np.asarray(z, dtype=complex))
    if not np.all(np.isfinite(out)):
        raise EvaluationOverflow("polynomial evaluation overflowed")
    return complex(out) if np.ndim(out) == 0 else out


def derivative(p: Polynomial) -> Polynomial:
    if len(p) == 1:
        return Polynomial([0.0])
    return Polynomial(p.coeffs[1:] * np.arange(1, len(p)))


def _quadratic_roots(c: np.ndarray) -> np.ndarray:
    # c = [c0, c1, c2], c2 != 0; cancellation-free form
    c0, c1, c2 = (complex(v) for v in c)
    s = np.sqrt(complex(c1 * c1 - 4 * c2 * c0))
    if (c1.conjugate() * s).real < 0:
        s = -s
    q = -0.5 * (c1 + s)
    if q == 0:
        return np.zeros(2, complex)
    return np.array([q / c2, c0 / q])


def _initial_guess(c: np.ndarray) -> np.ndarray:
    n = c.size - 1
    radius = 1.0 + float(np.max(np.abs(c[:-1] / c[-1])))
    # offset keeps the start off any symmetry axis of the polynomial
    ang = 2.0 * np.pi * np.arange(n) / n + 0.4
    return radius * np.exp(1j * ang)


def _aberth(c: np.ndarray, z: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    """Aberth-Ehrlich iteration on a batch.

    ``c`` has shape (m, n+1) (ascending coefficients), ``z`` shape (m, n).
    Rows converge independently; a root stops moving once its correction is
    below ``tol`` (relative for large roots) or its residual is at rounding
    level.
    """
    m, n = z.shape
    z = z.copy()
    absc = np.abs(c)
    eye = np.eye(n, dtype=bool)
    active = np.ones((m, n), bool)
    rows = np.arange(m)
    for _ in range(max_iter):
        # only rows with a moving root are iterated
        zr, cr, ar, act = z[rows], c[rows], absc[rows], active[rows]
        p = np.zeros_like(zr) + cr[:, -1:]
        dp = np.zeros_like(zr)
        bound = np.zeros(zr.shape) + ar[:, -1:]
        az = np.abs(zr)
        for j in range(n - 1, -1, -1):
            dp = dp * zr + p
            p = p * zr + cr[:, j : j + 1]
            bound = bound * az + ar[:, j : j + 1]
        at_root = np.abs(p) <= 4.0 * n * _EPS * bound
        diff = zr[:, :, None] - zr[:, None, :]
        diff[:, eye] = 1.0
        inv = 1.0 / diff
        inv[:, eye] = 0.0
        s = inv.sum(axis=2)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            w = ratio / (1.0 - ratio * s)
        w = np.where(at_root | ~np.isfinite(w) | ~act, 0.0, w)
        zr = zr - w
        act &= np.abs(w) > tol * np.maximum(1.0, np.abs(zr))
        z[rows] = zr
        active[rows] = act
        rows = rows[act.any(axis=1)]
        if rows.size == 0:
            return z
    raise ConvergenceError(f"Aberth iteration did not converge in {max_iter} steps", z, rows)


def _polish(c: np.ndarray, z: np.ndarray, steps: int = 3) -> np.ndarray:
    """Newton polishing; a step is kept only if it lowers the residual."""
    dc = c[1:] * np.arange(1, c.size)
    for _ in range(steps):
        p = _horner(c, z)
        dp = _horner(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = z - p / dp
        ok = np.isfinite(cand)
        better = ok & (np.abs(_horner(c, np.where(ok, cand, z))) < np.abs(p))
        z = np.where(better, cand, z)
    return z


def find_roots(p: Polynomial, tol: float = ABERTH_TOL, max_iter: int = MAX_ITER) -> np.ndarray:
    """All roots of ``p`` with multiplicity, as a complex array.

    Degree 1 and 2 use closed forms; higher degrees use Aberth-Ehrlich
    iteration started from rotated roots of unity on the Cauchy-bound circle,
    followed by Newton polishing.
    """
    q = p.trimmed()
    n = q.degree
    if n < 1:
        raise ValueError("find_roots needs degree >= 1")
    c = q.coeffs
    if n == 1:
        return np.array([-c[0] / c[1]])
    if n == 2:
        return _quadratic_roots(c)
    z = _aberth(c[None, :], _initial_guess(c)[None, :], tol, max_iter)[0]
    return _polish(c, z)


def batch_roots(coeffs: np.ndarray, tol: float = ABERTH_TOL,
                max_iter: int = MAX_ITER, initial: np.ndarray | None = None) -> np.ndarray:
    """Roots of many *monic* polynomials of the same degree at once.

    ``coeffs`` has shape (m, n+1), ascending, with ``coeffs[:, -1] == 1``.
    ``initial`` optionally seeds the iteration (shape (m, n)), e.g. with the
    roots of a nearby polynomial. Returns an (m, n) complex array.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 2 or c.shape[1] < 2:
        raise ValueError("expected a 2-d array of ascending coefficients")
    if not np.all(c[:, -1] == 1.0):
        raise ValueError("batch_roots expects monic rows")
    n = c.shape[1] - 1
    if initial is None:
        radius = 1.0 + np.max(np.abs(c[:, :-1]), axis=1)
        ang = 2.0 * np.pi * np.arange(n) / n + 0.4
        initial = radius[:, None] * np.exp(1j * ang)[None, :]
    else:
        initial = np.array(initial, dtype=complex)
        # Aberth needs pairwise distinct starting points
        initial = initial + 1e-9 * np.exp(1j * (0.4 + np.arange(n)))[None, :]
    return _aberth(c, initial, tol, max_iter)


def residual_bound(p: Polynomial, roots: np.ndarray) -> np.ndarray:
    """Backward error ``|p(r)| / sum_j |c_j| |r|**j`` for each root.

    Values near machine epsilon mean ``r`` is an exact root of a polynomial
    whose coefficients differ from ``p``'s by that relative amount.
    """
    r = np.asarray(roots)
    return np.abs(_horner(p.coeffs, r)) / _horner(np.abs(p.coeffs), np.abs(r)).real
