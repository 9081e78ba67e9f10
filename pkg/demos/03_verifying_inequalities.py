"""
=============================================
Grid verification of the supporting inequalities
=============================================

The univalence argument for S_4^(T) rests on a handful of one- and
two-variable trigonometric inequalities. Each is checked on a dense grid with
refinement at the smallest values; the reports say where each inequality is
tightest.
"""

# %%
# Monotone constants and two auxiliary inequalities
# --------------------------------------------------

import math

import numpy as np

from suffpoly import (CaseFunctions, case_profile, explicit_t34_check, lemma_imp_check,
                      lemma_new_check, lemma_third_check, run_full_verification)
from suffpoly.verifier import gamma_star

for rep in lemma_imp_check(3, 200):
    print(rep.name, "passed" if rep.passed else "FAILED", rep.extremal_value, rep.notes)

third = lemma_third_check()
print("3 sin(xy) + y sin x: min", third.extremal_value, "at x =", third.extremal_location,
      "y =", third.notes["y_at_extremum"])
# the infimum 0 sits at the excluded corner (pi/2, 3): 12 * eps^2 for a grid offset eps
eps = third.grid[3]
print("  12 eps^2 =", 12 * eps ** 2)

new = lemma_new_check(5, 100)
print("lemma new: max", new.extremal_value, "at T =", new.notes["T_at_extremum"])

# %%
# Case functions
# --------------
#
# G1 touches zero at gamma* = 3T pi/(3T+2) for odd T; G2 touches zero at
# 2 pi/(3T+2) for every T, and also at gamma* for even T. Both stay
# nonnegative. Ftilde is negative inside (0, pi) and behaves like C gamma^4
# at the ends.

for T in (3, 4, 5, 6):
    g1 = case_profile(T, "G1")
    g2 = case_profile(T, "G2")
    print(f"T={T}: G1 zeros {np.round(g1.notes['interior_zeros'], 8)}, "
          f"G2 zeros {np.round(g2.notes['interior_zeros'], 8)}; "
          f"gamma*={gamma_star(T):.8f}, 2pi/(3T+2)={2 * math.pi / (3 * T + 2):.8f}")

cf = CaseFunctions(3)
print("Ftilde(pi/2; T=3) =", cf.Ftilde(math.pi / 2), " quartic coefficient", cf.ftilde_quartic())

for rep in explicit_t34_check():
    print(rep.name, "max", rep.extremal_value, "at x =", rep.extremal_location)

# %%
# Everything at once
# ------------------

reports = run_full_verification(6)
for rep in reports:
    print(f"{'PASS' if rep.passed else 'FAIL'} {rep.name:<16} T={rep.T}")
