"""Suffridge polynomials and their T-symmetric analogues.

The classical family is

    S_{k,N}(z) = z + sum_{j=2}^{N} (1 - (j-1)/N) sin(pi k j/(N+1)) / sin(pi k/(N+1)) z^j,

and the T-symmetric family S_n^(T) has nonzero coefficients only at degrees
T(j-1)+1.  For n = 4 everything is governed by the single constant

    a_T = sin(2 pi/(3T+2)) / sin(T pi/(3T+2)),

together with u_T = T a_T and v_T = (T+1) a_T.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .numkit import Polynomial

__all__ = [
    "SuffridgeConstants",
    "SuffridgeSpec",
    "TSymSpec",
    "constants",
    "derivative_factor_a",
    "s4_coeffs",
    "suffridge_coeffs",
    "tsym_coeffs",
]


def _check_int(name: str, value, lo: int) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < lo:
        raise ValueError(f"{name} must be >= {lo}, got {value}")


@dataclass(frozen=True)
class SuffridgeSpec:
    k: int
    N: int

    def __post_init__(self):
        _check_int("N", self.N, 1)
        _check_int("k", self.k, 1)
        if self.k > self.N:
            raise ValueError(f"need 1 <= k <= N, got k={self.k}, N={self.N}")


@dataclass(frozen=True)
class TSymSpec:
    T: int
    n: int

    def __post_init__(self):
        _check_int("T", self.T, 1)
        _check_int("n", self.n, 2)

    @property
    def degree(self) -> int:
        return self.T * (self.n - 1) + 1


@dataclass(frozen=True)
class SuffridgeConstants:
    T: int
    a_T: float
    u_T: float
    v_T: float


def suffridge_coeffs(spec: SuffridgeSpec) -> Polynomial:
    k, N = spec.k, spec.N
    c = np.zeros(N + 1)
    c[1] = 1.0
    den = math.sin(math.pi * k / (N + 1))
    for j in range(2, N + 1):
        c[j] = (1.0 - (j - 1) / N) * math.sin(math.pi * k * j / (N + 1)) / den
    return Polynomial(c)


def tsym_coeffs(spec: TSymSpec) -> Polynomial:
    """Coefficients of S_n^(T) as a product of sine ratios.

    Sine factors common to numerator and denominator are cancelled before
    multiplying, which for T = 1 reduces the product to the single ratio of
    the classical family (and reproduces it bit for bit).
    """
    T, n = spec.T, spec.n
    den = 2 + T * (n - 1)
    c = np.zeros(spec.degree + 1)
    c[1] = 1.0
    num_args: Counter[int] = Counter()
    den_args: Counter[int] = Counter()
    for j in range(2, n + 1):
        k = j - 1
        num_args[2 + T * (k - 1)] += 1
        den_args[T * k] += 1
        common = num_args & den_args
        top, bot = num_args - common, den_args - common
        ratio = 1.0
        for m in sorted(top.elements()):
            ratio *= math.sin(math.pi * m / den)
        div = 1.0
        for m in sorted(bot.elements()):
            div *= math.sin(math.pi * m / den)
        c[T * (j - 1) + 1] = (1.0 - (j - 1) * T / (1 + (n - 1) * T)) * ratio / div
    return Polynomial(c)


def constants(T: int) -> SuffridgeConstants:
    _check_int("T", T, 1)
    a = math.sin(2 * math.pi / (3 * T + 2)) / math.sin(T * math.pi / (3 * T + 2))
    return SuffridgeConstants(T=T, a_T=a, u_T=T * a, v_T=(T + 1) * a)


def s4_coeffs(T: int) -> Polynomial:
    """S_4^(T) from its closed form; degree 3T+1."""
    a = constants(T).a_T
    m = 3 * T + 1
    c = np.zeros(m + 1)
    c[1] = 1.0
    c[T + 1] = (2 * T + 1) * a / m
    c[2 * T + 1] = (T + 1) * a / m
    c[m] = 1.0 / m
    return Polynomial(c)


def derivative_factor_a(T: int) -> float:
    """Middle coefficient ``a`` in (S_4^(T))'(z) = (1 + z^T)(1 + a z^T + z^2T)."""
    v = constants(T).v_T
    return (2 * T + 1) * v / (3 * T + 1) - 1.0
