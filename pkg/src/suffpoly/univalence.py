"""Univalence in the unit disk and quasi-extremality of S_4^(T).

Two independent routes are provided:

* a generic one for any polynomial (leading-coefficient and critical-point
  necessary conditions, then a self-intersection scan of the boundary image
  with Newton refinement of every candidate), and
* the difference-quotient route for S_4^(T): writing x = s + g, y = s - g,

      (P(e^{ix}) - P(e^{iy})) / (e^{ix} - e^{iy}) = f_g(w),   w = e^{iTs},

  a cubic in w whose coefficients are sine ratios in g. Replacing the unit
  circle by the circle of radius r turns w into r^T w, so a collision inside
  the disk is a root of f_g with modulus < 1 whose argument is attainable as
  T s with s in (g, 2 pi - g).

Roots of f_g lying exactly on the unit circle are boundary *contacts*: the
image of the circle touches itself there but the map stays injective in the
open disk. S_4^(T) has such contacts for every T (at g = 2 pi/(3T+2),
w = -1), so the verdict separates contacts from crossings instead of
requiring a strictly simple boundary curve.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import numkit
from ._trig import golden_min, sin_ratio
from .numkit import ConvergenceError, Polynomial
from .suffridge import constants, derivative_factor_a, s4_coeffs

__all__ = [
    "BoundaryCurve",
    "GammaSection",
    "GapMinimum",
    "Method",
    "QuasiExtremalReport",
    "UnivalenceConfig",
    "UnivalenceReport",
    "Verdict",
    "Witness",
    "boundary_curve",
    "fgamma",
    "fgamma_sweep",
    "find_self_intersections",
    "leading_coeff_bound",
    "quasi_extremal_check",
    "recognize_s4",
    "univalence_verdict",
]

TWO_PI = 2.0 * math.pi


class Verdict(str, enum.Enum):
    UNIVALENT = "Univalent"
    NOT_UNIVALENT = "NotUnivalent"
    INCONCLUSIVE = "Inconclusive"


class Method(str, enum.Enum):
    FGAMMA_SWEEP = "FGammaSweep"
    BOUNDARY_CURVE = "BoundaryCurve"
    CRITICAL_POINT = "CriticalPoint"


@dataclass
class UnivalenceConfig:
    samples: int = 8192
    refine_tol: float = 1e-10
    grid_count: int = 200_000
    gap_tol: float = 1e-6
    crit_tol: float = 1e-9
    # radius used to tell a tangential contact from a crossing
    probe_radius: float = 1.0 - 1e-4
    run_sweep: bool = True

    def __post_init__(self):
        if self.samples < 16:
            raise ValueError("samples must be >= 16")
        if self.grid_count < 1000:
            raise ValueError("grid_count must be >= 1000")
        for name in ("refine_tol", "gap_tol", "crit_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class Witness:
    """A pair of boundary arguments with (nearly) equal images.

    ``kind`` is ``"crossing"`` (the arcs cross, so the map is not injective in
    the disk), ``"contact"`` (the arcs only touch) or ``"unresolved"``.
    ``radius`` is 1 for boundary points and < 1 for interior collisions.
    """

    x: float
    y: float
    image_distance: float
    kind: str
    radius: float = 1.0

    def as_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "image_distance": self.image_distance,
                "kind": self.kind, "radius": self.radius}


@dataclass
class GapMinimum:
    """A refined local minimum of the root-modulus gap profile."""

    gamma: float
    gap: float
    w: complex
    reachable: bool
    kind: str  # "clear", "contact", "unreachable"

    def as_dict(self) -> dict:
        return {"gamma": self.gamma, "gap": self.gap, "w_re": self.w.real,
                "w_im": self.w.imag, "reachable": self.reachable, "kind": self.kind}


@dataclass
class UnivalenceReport:
    verdict: Verdict
    methods: list[Method]
    min_root_gap: float | None = None
    witnesses: list[Witness] = field(default_factory=list)
    critical_points_inside: list[complex] = field(default_factory=list)
    min_signed_gap: float | None = None
    gap_minima: list[GapMinimum] = field(default_factory=list)
    leading_coeff_ok: bool | None = None
    failed_gamma: list[float] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    parts: dict[str, "UnivalenceReport"] = field(default_factory=dict)

    @property
    def method(self) -> Method:
        return self.methods[0]

    @property
    def crossings(self) -> list[Witness]:
        return [w for w in self.witnesses if w.kind == "crossing"]

    @property
    def contacts(self) -> list[Witness]:
        return [w for w in self.witnesses if w.kind == "contact"]

    def as_dict(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "methods": [m.value for m in self.methods],
            "min_root_gap": self.min_root_gap,
            "min_signed_gap": self.min_signed_gap,
            "witnesses": [w.as_dict() for w in self.witnesses],
            "critical_points_inside": [{"re": z.real, "im": z.imag}
                                       for z in self.critical_points_inside],
            "gap_minima": [g.as_dict() for g in self.gap_minima],
            "leading_coeff_ok": self.leading_coeff_ok,
            "failed_gamma": list(self.failed_gamma),
            "notes": list(self.notes),
            "parameters": dict(self.parameters),
        }
        if self.parts:
            out["parts"] = {k: v.as_dict() for k, v in sorted(self.parts.items())}
        return out


# ----------------------------------------------------------------------------
# necessary conditions


def leading_coeff_bound(p: Polynomial) -> bool:
    """Necessary condition |a_N| <= 1/N for z + a_2 z^2 + ... + a_N z^N.

    The polynomial is normalized by its linear coefficient first. A ``True``
    result never implies univalence.
    """
    q = p.trimmed()
    n = q.degree
    if n < 1:
        raise ValueError("degree must be >= 1")
    a1 = q.coeffs[1]
    if a1 == 0:
        raise ValueError("linear coefficient is zero; cannot normalize")
    return bool(abs(q.coeffs[n] / a1) <= 1.0 / n + 1e-15)


def _critical_points_inside(p: Polynomial, tol: float) -> list[complex]:
    dp = numkit.derivative(p).trimmed()
    if dp.degree < 1:
        return [] if dp.coeffs[0] != 0 else [0j]
    roots = numkit.find_roots(dp)
    return [complex(r) for r in sorted(roots, key=lambda r: (abs(r), r.real, r.imag))
            if abs(r) <= 1.0 - tol]


# ----------------------------------------------------------------------------
# boundary curve route


@dataclass(frozen=True)
class BoundaryCurve:
    poly: Polynomial
    angles: np.ndarray
    points: np.ndarray

    def __iter__(self) -> Iterator[tuple[float, complex]]:
        return zip(self.angles.tolist(), self.points.tolist())

    def __len__(self) -> int:
        return self.angles.size


def boundary_curve(p: Polynomial, samples: int) -> BoundaryCurve:
    if samples < 4:
        raise ValueError("samples must be >= 4")
    ang = TWO_PI * np.arange(samples) / samples
    pts = numkit.evaluate(p, np.exp(1j * ang))
    return BoundaryCurve(p, ang, np.asarray(pts))


def _candidate_pairs(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (i, j) of polyline segments whose bounding boxes overlap.

    Segment i runs from pts[i] to pts[i+1] (cyclically). Sort-and-sweep on
    the x-extent, then a y-extent filter.
    """
    m = pts.size
    a, b = pts, np.roll(pts, -1)
    xmin, xmax = np.minimum(a.real, b.real), np.maximum(a.real, b.real)
    ymin, ymax = np.minimum(a.imag, b.imag), np.maximum(a.imag, b.imag)
    order = np.argsort(xmin, kind="stable")
    xs = xmin[order]
    stop = np.searchsorted(xs, xmax[order], side="right")
    counts = stop - np.arange(m) - 1
    counts = np.maximum(counts, 0)
    ii = np.repeat(np.arange(m), counts)
    offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    jj = ii + 1 + offs
    i, j = order[ii], order[jj]
    keep = (ymin[i] <= ymax[j]) & (ymin[j] <= ymax[i])
    i, j = i[keep], j[keep]
    gap = np.abs(i - j)
    keep = (gap > 1) & (gap < m - 1)
    i, j = np.minimum(i[keep], j[keep]), np.maximum(i[keep], j[keep])
    return i, j


def _segment_hits(pts: np.ndarray, i: np.ndarray, j: np.ndarray):
    """Exact segment-segment test; returns mask and the two segment parameters."""
    p0, p1 = pts[i], np.roll(pts, -1)[i]
    q0, q1 = pts[j], np.roll(pts, -1)[j]
    r, s = p1 - p0, q1 - q0
    d = q0 - p0

    def cross(u, v):
        return u.real * v.imag - u.imag * v.real

    den = cross(r, s)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = cross(d, s) / den
        u = cross(d, r) / den
    hit = (den != 0) & (t >= 0) & (t <= 1) & (u >= 0) & (u <= 1)
    return hit, t, u


def _pair_residual(p: Polynomial, dp: Polynomial, x, y, r: float = 1.0):
    zx, zy = r * np.exp(1j * x), r * np.exp(1j * y)
    F = numkit.evaluate(p, zx) - numkit.evaluate(p, zy)
    Fx = 1j * zx * numkit.evaluate(dp, zx)
    Fy = -1j * zy * numkit.evaluate(dp, zy)
    return np.asarray(F), np.asarray(Fx), np.asarray(Fy)


def _newton_pairs(p: Polynomial, x, y, r: float = 1.0, iters: int = 60, tol: float = 1e-10):
    """Damped Newton on Re/Im of P(r e^{ix}) - P(r e^{iy}) = 0, vectorized.

    Returns refined x, y, final residual and a convergence mask.
    """
    dp = numkit.derivative(p)
    x = np.array(x, dtype=float, ndmin=1)
    y = np.array(y, dtype=float, ndmin=1)
    F, Fx, Fy = _pair_residual(p, dp, x, y, r)
    res = np.abs(F)
    for _ in range(iters):
        todo = res > tol * 1e-3
        if not todo.any():
            break
        # 2x2 real system [[Re Fx, Re Fy], [Im Fx, Im Fy]] [dx, dy] = -[Re F, Im F]
        a11, a12, a21, a22 = Fx.real, Fy.real, Fx.imag, Fy.imag
        det = a11 * a22 - a12 * a21
        with np.errstate(divide="ignore", invalid="ignore"):
            dx = (-F.real * a22 + F.imag * a12) / det
            dy = (-F.imag * a11 + F.real * a21) / det
        ok = np.isfinite(dx) & np.isfinite(dy) & todo
        dx, dy = np.where(ok, dx, 0.0), np.where(ok, dy, 0.0)
        step = np.ones_like(x)
        improved = np.zeros(x.shape, bool)
        for _ in range(30):
            nx, ny = x + step * dx, y + step * dy
            nF, nFx, nFy = _pair_residual(p, dp, nx, ny, r)
            better = ok & ~improved & (np.abs(nF) < res)
            x, y = np.where(better, nx, x), np.where(better, ny, y)
            F, Fx, Fy = np.where(better, nF, F), np.where(better, nFx, Fx), np.where(better, nFy, Fy)
            res = np.abs(F)
            improved |= better
            if np.all(improved | ~ok):
                break
            step = np.where(improved, step, step * 0.5)
        if not improved.any():
            break
    return x, y, res, res <= tol


def _wrap(a):
    return np.mod(a, TWO_PI)


def _angle_sep(x, y):
    d = np.abs(_wrap(x - y))
    return np.minimum(d, TWO_PI - d)


def _classify(p: Polynomial, x: float, y: float, cfg_tol: float, probe_radius: float) -> str:
    """Crossing or tangential contact at a refined boundary collision."""
    dp = numkit.derivative(p)
    zx, zy = np.exp(1j * x), np.exp(1j * y)
    tx = 1j * zx * numkit.evaluate(dp, zx)
    ty = 1j * zy * numkit.evaluate(dp, zy)
    nt = abs(tx) * abs(ty)
    if nt == 0:
        return "unresolved"
    sin_angle = abs((tx * np.conj(ty)).imag) / nt
    if sin_angle > 1e-4:
        return "crossing"
    # tangent arcs: they cross iff the collision survives on a smaller circle
    px, py, res, conv = _newton_pairs(p, x, y, r=probe_radius, tol=cfg_tol)
    moved = max(abs(px[0] - x), abs(py[0] - y))
    if conv[0] and moved < 0.1 and _angle_sep(px[0], py[0]) > 1e-6:
        return "crossing"
    return "contact"


def find_self_intersections(curve: BoundaryCurve, refine_tol: float = 1e-10,
                            probe_radius: float = 1.0 - 1e-4) -> list[Witness]:
    """Self-intersections of the boundary image, refined and classified.

    Every crossing pair of polyline segments seeds a damped Newton solve for
    P(e^{ix}) = P(e^{iy}). Seeds that collapse onto x = y are discarded; the
    rest are deduplicated and classified as crossing / contact / unresolved.
    """
    p = curve.poly
    m = len(curve)
    if m < 4:
        return []
    i, j = _candidate_pairs(curve.points)
    hit, t, u = _segment_hits(curve.points, i, j)
    i, j, t, u = i[hit], j[hit], t[hit], u[hit]
    if i.size == 0:
        return []
    h = TWO_PI / m
    x0 = curve.angles[i] + t * h
    y0 = curve.angles[j] + u * h
    x, y, res, conv = _newton_pairs(p, x0, y0, tol=refine_tol)
    resolution = h
    out: list[Witness] = []
    seen: list[tuple[float, float]] = []
    for k in range(x.size):
        if _angle_sep(x[k], y[k]) <= resolution:
            continue
        a, b = float(_wrap(x[k])), float(_wrap(y[k]))
        if a < b:
            a, b = b, a
        if any(abs(a - sa) < 1e-7 and abs(b - sb) < 1e-7 for sa, sb in seen):
            continue
        seen.append((a, b))
        if conv[k]:
            kind = _classify(p, a, b, refine_tol, probe_radius)
        else:
            kind = "unresolved"
        out.append(Witness(a, b, float(res[k]), kind))
    out.sort(key=lambda w: (w.y, w.x))
    return out


# ----------------------------------------------------------------------------
# difference-quotient route for S_4^(T)


@dataclass(frozen=True)
class GammaSection:
    T: int
    gamma: float
    coeffs: tuple[float, float, float, float]

    @property
    def degenerate(self) -> bool:
        """True when the cubic term vanishes and f_gamma is quadratic."""
        return abs(self.coeffs[3]) * (3 * self.T + 1) * abs(math.sin(self.gamma)) <= 1e-12

    @property
    def degree(self) -> int:
        return 2 if self.degenerate else 3

    def polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs[: self.degree + 1])

    def roots(self) -> np.ndarray:
        return numkit.find_roots(self.polynomial())


def _fgamma_coeffs(T: int, gamma):
    a = constants(T).a_T
    m = 3 * T + 1
    c1 = (2 * T + 1) * a / m * sin_ratio(T + 1, gamma)
    c2 = (T + 1) * a / m * sin_ratio(2 * T + 1, gamma)
    c3 = sin_ratio(m, gamma) / m
    return c1, c2, c3


def fgamma(T: int, gamma: float) -> GammaSection:
    if not 0.0 < gamma < math.pi:
        raise ValueError("gamma must lie in (0, pi)")
    c1, c2, c3 = _fgamma_coeffs(T, gamma)
    return GammaSection(T, float(gamma), (1.0, float(c1), float(c2), float(c3)))


def _inverse_roots(T: int, gam: np.ndarray, initial=None) -> np.ndarray:
    """Reciprocals u = 1/w of the roots of f_gamma, one row per gamma.

    u solves the monic cubic u^3 + c1 u^2 + c2 u + c3, which stays well
    conditioned when c3 -> 0 (then one u -> 0, i.e. w -> infinity).
    """
    c1, c2, c3 = _fgamma_coeffs(T, gam)
    C = np.stack([c3, c2, c1, np.ones_like(gam)], axis=1).astype(complex)
    return numkit.batch_roots(C, initial=initial)


def _solve_grid(T: int, gam: np.ndarray) -> np.ndarray:
    """Roots on a fine grid, seeding each level from a coarser one."""
    n = gam.size
    u = np.empty((n, 3), complex)
    done = np.zeros(n, bool)
    stride = 1
    while stride * 4 < n // 64:
        stride *= 4
    idx = np.arange(0, n, stride)
    u[idx] = _inverse_roots(T, gam[idx])
    done[idx] = True
    while stride > 1:
        stride //= 4
        idx = np.arange(0, n, stride)
        idx = idx[~done[idx]]
        seed_idx = (idx // (stride * 4)) * (stride * 4)
        u[idx] = _inverse_roots(T, gam[idx], initial=u[seed_idx])
        done[idx] = True
    return u


def _reach(theta, gamma, T: int, slack: float = 1e-9):
    """Whether arg w = theta is attainable as T s (mod 2 pi), s in (gamma, 2 pi - gamma).

    Returns (reachable mask, s) with s the smallest attaining value.
    """
    theta = np.asarray(theta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    lo = T * (gamma - slack)
    hi = T * (TWO_PI - gamma + slack)
    k = np.ceil((lo - theta) / TWO_PI)
    t = theta + TWO_PI * k
    return t < hi, t / T


def _all_reach(theta: float, gamma: float, T: int, slack: float = 1e-9) -> list[float]:
    """Every s in (gamma, 2 pi - gamma) with T s = theta (mod 2 pi)."""
    ok, s = _reach(theta, gamma, T, slack)
    out = []
    s = float(s)
    while bool(ok) and s < TWO_PI - gamma + slack:
        out.append(s)
        s += TWO_PI / T
    return out


def _profiles(T: int, gam: np.ndarray, u: np.ndarray):
    """Unsigned gap min | |w| - 1 | and signed gap over reachable roots."""
    with np.errstate(divide="ignore"):
        mod = 1.0 / np.abs(u)
    gap = np.abs(mod - 1.0)
    theta = np.angle(np.conj(u))  # arg w = -arg u
    reach, _ = _reach(theta, gam[:, None], T)
    signed = np.where(reach, mod - 1.0, np.inf)
    return gap, signed, reach


def _local_minima(v: np.ndarray) -> np.ndarray:
    i = np.arange(1, v.size - 1)
    return i[(v[i] < v[i - 1]) & (v[i] <= v[i + 1])]


def fgamma_sweep(T: int, grid_count: int = 200_000, gap_tol: float = 1e-6,
                 refine: int | None = None) -> UnivalenceReport:
    """Univalence of S_4^(T) from the roots of f_gamma on a gamma grid.

    ``min_root_gap`` is the smallest refined gap | |w| - 1 | among local
    minima that are neither unreachable nor tangential contacts; the
    verdict rests on ``min_signed_gap``, the smallest |w| - 1 over reachable
    roots, which is negative exactly when S_4^(T) has an interior collision.
    """
    if grid_count < 1000:
        raise ValueError("grid_count must be >= 1000")
    eps = math.pi / (100 * grid_count)
    gam = np.linspace(eps, math.pi - eps, grid_count)
    params = {"T": T, "grid_count": grid_count, "gap_tol": gap_tol, "epsilon": eps}
    report = UnivalenceReport(Verdict.INCONCLUSIVE, [Method.FGAMMA_SWEEP], parameters=params)
    try:
        u = _solve_grid(T, gam)
    except ConvergenceError as exc:
        report.failed_gamma = [float(gam[r]) for r in (exc.rows if exc.rows is not None else [])]
        report.notes.append("root finder failed on the gamma grid")
        return report

    gap, signed, reach = _profiles(T, gam, u)
    gprof = gap.min(axis=1)
    sprof = signed.min(axis=1)

    def refine_on(profile_fn, prof):
        idx = _local_minima(prof)
        if refine is not None and idx.size > refine:
            idx = idx[np.argsort(prof[idx], kind="stable")[:refine]]
        idx = np.sort(idx)
        if idx.size == 0:
            return idx, np.empty(0), np.empty(0)
        x, fx = golden_min(profile_fn, gam[idx - 1], gam[idx + 1], tol=1e-12)
        return idx, x, fx

    def cold(g):
        return _inverse_roots(T, np.asarray(g, dtype=float))

    def gap_fn(g):
        gp, _, _ = _profiles(T, np.asarray(g), cold(g))
        return gp.min(axis=1)

    def signed_fn(g):
        _, sp, _ = _profiles(T, np.asarray(g), cold(g))
        return sp.min(axis=1)

    try:
        _, gx, gf = refine_on(gap_fn, gprof)
        _, sx, sf = refine_on(signed_fn, np.where(np.isfinite(sprof), sprof, 1e300))
    except ConvergenceError as exc:
        report.notes.append("root finder failed during refinement")
        report.failed_gamma = [] if exc.rows is None else [float(r) for r in exc.rows]
        return report

    if sf.size and np.min(sf) <= np.min(sprof):
        min_signed, min_loc = float(np.min(sf)), float(sx[int(np.argmin(sf))])
    else:
        min_signed, min_loc = float(np.min(sprof)), float(gam[int(np.argmin(sprof))])
    report.min_signed_gap = min_signed
    params["min_signed_location"] = min_loc

    # classify the refined minima of the unsigned profile
    minima: list[GapMinimum] = []
    clear = []
    uu = cold(gx) if gx.size else np.empty((0, 3))
    for k in range(gx.size):
        with np.errstate(divide="ignore"):
            w_all = 1.0 / uu[k]
        kk = int(np.argmin(np.abs(np.abs(w_all) - 1.0)))
        w = complex(w_all[kk])
        ok, _ = _reach(np.angle(w), gx[k], T)
        if gf[k] > gap_tol:
            kind = "clear"
            clear.append(float(gf[k]))
        elif not bool(ok):
            kind = "unreachable"
        else:
            kind = "contact"
        minima.append(GapMinimum(float(gx[k]), float(gf[k]), w, bool(ok), kind))
    report.gap_minima = minima
    report.min_root_gap = min(clear) if clear else None

    P = s4_coeffs(T)
    for gm in minima:
        if gm.kind != "contact":
            continue
        for s in _all_reach(np.angle(gm.w), gm.gamma, T):
            x, y = float(_wrap(s + gm.gamma)), float(_wrap(s - gm.gamma))
            x, y = max(x, y), min(x, y)
            dist = abs(numkit.evaluate(P, np.exp(1j * x)) - numkit.evaluate(P, np.exp(1j * y)))
            report.witnesses.append(Witness(x, y, float(dist), "contact"))
    report.witnesses.sort(key=lambda w: (w.y, w.x))

    if min_signed < -gap_tol:
        g0 = min_loc
        uu0 = cold([g0])[0]
        with np.errstate(divide="ignore"):
            w_all = 1.0 / uu0
        ok, s_all = _reach(np.angle(w_all), g0, T)
        cand = np.where(ok, np.abs(w_all), np.inf)
        kk = int(np.argmin(cand))
        r = float(abs(w_all[kk])) ** (1.0 / T)
        s = float(s_all[kk])
        x, y = float(_wrap(s + g0)), float(_wrap(s - g0))
        dist = abs(numkit.evaluate(P, r * np.exp(1j * x)) - numkit.evaluate(P, r * np.exp(1j * y)))
        report.witnesses.append(Witness(max(x, y), min(x, y), float(dist), "crossing", radius=r))
        report.verdict = Verdict.NOT_UNIVALENT
    else:
        report.verdict = Verdict.UNIVALENT
    report.notes.append(f"gamma within {eps:.3g} of 0 and pi excluded; f_gamma has "
                        "unit-modulus roots there by construction")
    return report


# ----------------------------------------------------------------------------
# pipeline


def recognize_s4(p: Polynomial, atol: float = 1e-12) -> int | None:
    """T if ``p`` equals S_4^(T) coefficient-wise, else None."""
    q = p.trimmed()
    n = q.degree
    if n < 4 or (n - 1) % 3:
        return None
    T = (n - 1) // 3
    if q.support() != [1, T + 1, 2 * T + 1, 3 * T + 1]:
        return None
    return T if q.allclose(s4_coeffs(T), atol=atol) else None


def _generic_report(p: Polynomial, cfg: UnivalenceConfig) -> UnivalenceReport:
    methods = [Method.CRITICAL_POINT, Method.BOUNDARY_CURVE]
    rep = UnivalenceReport(Verdict.INCONCLUSIVE, methods,
                           parameters={"samples": cfg.samples, "refine_tol": cfg.refine_tol,
                                       "crit_tol": cfg.crit_tol})
    q = p.trimmed()
    if q.coeffs[1] != 0:
        rep.leading_coeff_ok = leading_coeff_bound(q)
    rep.critical_points_inside = _critical_points_inside(q, cfg.crit_tol)
    curve = boundary_curve(q, cfg.samples)
    rep.witnesses = find_self_intersections(curve, cfg.refine_tol, cfg.probe_radius)
    if rep.leading_coeff_ok is False:
        rep.notes.append("leading coefficient exceeds 1/N: a zero of P(z)/z lies in the disk")
    if rep.critical_points_inside or rep.crossings or rep.leading_coeff_ok is False:
        rep.verdict = Verdict.NOT_UNIVALENT
    elif any(w.kind == "unresolved" for w in rep.witnesses):
        rep.verdict = Verdict.INCONCLUSIVE
        rep.notes.append("unresolved self-intersection candidates")
    else:
        rep.verdict = Verdict.UNIVALENT
    return rep


def univalence_verdict(p: Polynomial, config: UnivalenceConfig | None = None) -> UnivalenceReport:
    """Decide univalence of ``p`` in the open unit disk.

    S_4^(T) inputs are also run through :func:`fgamma_sweep`; if the two
    routes disagree the verdict is Inconclusive.
    """
    cfg = config or UnivalenceConfig()
    q = p.trimmed()
    if q.degree < 1:
        raise ValueError("degree must be >= 1")
    rep = _generic_report(q, cfg)
    T = recognize_s4(q) if cfg.run_sweep else None
    if T is None:
        return rep
    sweep = fgamma_sweep(T, cfg.grid_count, cfg.gap_tol)
    combined = UnivalenceReport(
        rep.verdict,
        rep.methods + [Method.FGAMMA_SWEEP],
        min_root_gap=sweep.min_root_gap,
        witnesses=rep.witnesses,
        critical_points_inside=rep.critical_points_inside,
        min_signed_gap=sweep.min_signed_gap,
        gap_minima=sweep.gap_minima,
        leading_coeff_ok=rep.leading_coeff_ok,
        failed_gamma=sweep.failed_gamma,
        notes=rep.notes + sweep.notes,
        parameters={**rep.parameters, **sweep.parameters},
        parts={"boundary": rep, "fgamma": sweep},
    )
    if sweep.verdict != rep.verdict:
        combined.verdict = Verdict.INCONCLUSIVE
        combined.notes.append(f"methods disagree: boundary={rep.verdict.value}, "
                              f"fgamma={sweep.verdict.value}")
    return combined


# ----------------------------------------------------------------------------
# quasi-extremality


@dataclass
class QuasiExtremalReport:
    T: int
    a: float
    roots: np.ndarray
    direct_roots: np.ndarray
    max_modulus_dev: float
    min_pairwise: float
    max_match_err: float
    tol: float
    passed: bool
    failures: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"T": self.T, "a": self.a, "max_modulus_dev": self.max_modulus_dev,
                "min_pairwise": self.min_pairwise, "max_match_err": self.max_match_err,
                "tol": self.tol, "passed": self.passed, "failures": list(self.failures)}


def _derivative_roots_factored(T: int) -> np.ndarray:
    a = derivative_factor_a(T)
    k = np.arange(T)
    first = np.exp(1j * math.pi * (2 * k + 1) / T)  # z^T = -1
    ys = numkit.find_roots(Polynomial([1.0, a, 1.0]))
    rest = [np.abs(y) ** (1.0 / T) * np.exp(1j * (np.angle(y) + TWO_PI * k) / T) for y in ys]
    return np.concatenate([first, *rest])


def quasi_extremal_check(T: int, tol: float = 1e-10) -> QuasiExtremalReport:
    """All 3T zeros of (S_4^(T))' simple and on the unit circle."""
    a = derivative_factor_a(T)
    roots = _derivative_roots_factored(T)
    direct = numkit.find_roots(numkit.derivative(s4_coeffs(T)))
    mod_dev = float(np.max(np.abs(np.abs(roots) - 1.0)))
    D = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(D, np.inf)
    min_pair = float(D.min()) if roots.size > 1 else math.inf
    M = np.abs(roots[:, None] - direct[None, :])
    ri, ci = linear_sum_assignment(M)
    match = float(M[ri, ci].max())
    failures = []
    if roots.size != 3 * T or direct.size != 3 * T:
        failures.append(f"expected {3 * T} roots")
    if mod_dev > tol:
        bad = roots[np.abs(np.abs(roots) - 1.0) > tol]
        failures.append(f"roots off the unit circle: {bad.tolist()}")
    if not min_pair > 10 * tol:
        failures.append(f"roots not distinct: min pairwise distance {min_pair:.3e}")
    if match > 10 * tol:
        failures.append(f"factored and direct roots disagree by {match:.3e}")
    return QuasiExtremalReport(T, a, roots, direct, mod_dev, min_pair, match, tol,
                               not failures, failures)
