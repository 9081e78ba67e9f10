"""
=============================================
Univalence of S_4^(T) in the unit disk
=============================================

Two independent routes decide whether S_4^(T) is injective in the disk:

* the generic route samples the image of the unit circle, finds
  self-intersections of the polyline and refines them with Newton's method;
* the f_gamma route writes P(e^{ix}) = P(e^{iy}) as a cubic in
  w = e^{iT(x+y)/2} for each half-difference gamma = (x-y)/2, and watches the
  root moduli along a fine gamma grid.

Both routes see the same structure: the boundary image touches itself
tangentially at T points (gamma = 2 pi/(3T+2), w = -1) but never crosses.
"""

# %%
# One polynomial, both methods
# ----------------------------

import math
import pathlib
import time

import numpy as np

from suffpoly import (Polynomial, boundary_curve, fgamma_sweep, find_self_intersections,
                      s4_coeffs, univalence_verdict)
from suffpoly.cli import render_svg

T = 3
start = time.perf_counter()
rep = univalence_verdict(s4_coeffs(T))
print(f"T={T}: {rep.verdict.value} via {[m.value for m in rep.methods]} "
      f"in {time.perf_counter() - start:.2f}s")
print("  smallest clear root gap:", rep.min_root_gap)
print("  signed gap (negative would mean an interior collision):", rep.min_signed_gap)

# %%
# The tangential contacts
# -----------------------
#
# At gamma0 = 2 pi/(3T+2) one root of f_gamma is exactly w = -1, and its
# argument is reachable, so the boundary image meets itself. The arcs are
# tangent there, and pulling the circle inward separates them.

sweep = fgamma_sweep(T)
for m in sweep.gap_minima:
    print(f"  gamma={m.gamma:.10f}  gap={m.gap:.2e}  w={m.w:.6f}  {m.kind}")
print("  2 pi/(3T+2) =", 2 * math.pi / (3 * T + 2))

p = s4_coeffs(T)
x = math.pi / T + 2 * math.pi / (3 * T + 2)
y = math.pi / T - 2 * math.pi / (3 * T + 2)
for r in (1.0, 0.999, 0.99):
    print(f"  r={r}: |P(r e^ix) - P(r e^iy)| = {abs(p(r * np.exp(1j * x)) - p(r * np.exp(1j * y))):.3e}")

for w in find_self_intersections(boundary_curve(p, 8192)):
    print(f"  boundary witness x={w.x:.6f} y={w.y:.6f} dist={w.image_distance:.1e} {w.kind}")

# %%
# A negative control
# ------------------
#
# z + z^2 has a critical point at -1/2 and its boundary image crosses itself
# at -1.

bad = univalence_verdict(Polynomial([0, 1, 1]))
print("z + z^2:", bad.verdict.value, bad.critical_points_inside,
      [(round(w.x, 6), round(w.y, 6), w.kind) for w in bad.witnesses])

# %%
# A range of T
# ------------

for T in (1, 2, 5, 10, 25):
    r = univalence_verdict(s4_coeffs(T))
    print(f"T={T:>2}: {r.verdict.value:<10} gap={r.min_root_gap:.4f} "
          f"contacts={len(r.parts['fgamma'].contacts)}")

# %%
# Picture
# -------
#
# The boundary image as an SVG file next to this script.

out = pathlib.Path(__file__).with_name("s4_T3_boundary.svg")
out.write_text(render_svg(boundary_curve(s4_coeffs(3), 4096).points, "S_4^(3) boundary image"))
print("wrote", out)
