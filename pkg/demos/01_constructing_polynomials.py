"""
=============================================
Constructing Suffridge-type polynomials
=============================================

Builds the classical Suffridge polynomials S_{k,N}, their T-symmetric
analogues S_n^(T), and the degree-(3T+1) member S_4^(T) that the rest of the
package studies. Run with ``python demos/01_constructing_polynomials.py``.
"""

# %%
# The classical family
# --------------------
#
# Coefficients are stored in ascending order, so ``coeffs[j]`` multiplies z^j.

import numpy as np

from suffpoly import (SuffridgeSpec, TSymSpec, constants, derivative,
                      derivative_factor_a, find_roots, s4_coeffs, suffridge_coeffs, tsym_coeffs)

np.set_printoptions(precision=7, suppress=True)

p = suffridge_coeffs(SuffridgeSpec(k=1, N=4))
print("S_{1,4}:", p.coeffs.real)

# %%
# T-symmetric analogues
# ---------------------
#
# S_n^(T) only has terms of degree T*j + 1, so it is of the form z g(z^T).
# For T = 1 it is the classical S_{1,n}; for T = 2 it is a rotated S_{n,2n-1}.

q = tsym_coeffs(TSymSpec(T=3, n=4))
print("S_4^(3) support:", q.support())
print("S_4^(3) nonzero coefficients:", q.coeffs.real[q.support()])

same = all(np.array_equal(tsym_coeffs(TSymSpec(1, n)).coeffs,
                          suffridge_coeffs(SuffridgeSpec(1, n)).coeffs) for n in range(2, 13))
print("S_n^(1) == S_{1,n} for n <= 12:", same)

z = 0.9 * np.exp(2j * np.pi * np.arange(64) / 64)
err = max(np.max(np.abs(tsym_coeffs(TSymSpec(2, n))(z)
                        + 1j * suffridge_coeffs(SuffridgeSpec(n, 2 * n - 1))(1j * z)))
          for n in range(2, 9))
print("max |S_n^(2)(z) + i S_{n,2n-1}(iz)| on |z| = 0.9:", err)

# %%
# The constants a_T, u_T, v_T
# ---------------------------
#
# u_T increases and v_T decreases with T; u_T tends to 4 pi / (3 sqrt 3).

for T in (1, 2, 3, 4, 10, 100):
    c = constants(T)
    print(f"T={T:>3}  a_T={c.a_T:.7f}  u_T={c.u_T:.7f}  v_T={c.v_T:.7f}")
print("limit of u_T:", 4 * np.pi / (3 * np.sqrt(3)))

# %%
# The derivative of S_4^(T)
# -------------------------
#
# (S_4^(T))' factors as (1 + z^T)(1 + a z^T + z^2T) with |a| < 2, so all 3T
# critical points lie on the unit circle.

T = 3
a = derivative_factor_a(T)
crit = find_roots(derivative(s4_coeffs(T)))
print(f"a = {a:.7f}; |critical points| - 1:", np.abs(crit) - 1)

y = np.roots([1, a, 1])
factored = np.concatenate([np.exp(1j * np.pi * (2 * np.arange(T) + 1) / T)]
                          + [r ** (1 / T) * np.exp(2j * np.pi * np.arange(T) / T) for r in y])
print("factored vs direct, max distance:",
      np.abs(np.sort_complex(factored) - np.sort_complex(crit)).max())
