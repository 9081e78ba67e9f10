"""Grid verification of the inequalities behind the univalence of S_4^(T).

Each check evaluates one inequality on a dense grid, refines the critical
extrema, and returns an :class:`InequalityReport`. Nothing here is a proof:
the reports record where each inequality is tightest and whether the grid
found a violation.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ._trig import golden_min, sin_multiple
from .suffridge import constants
from .univalence import Verdict, fgamma_sweep, quasi_extremal_check

__all__ = [
    "CHECK_NAMES",
    "CaseFunctions",
    "InequalityReport",
    "VerifyConfig",
    "case_profile",
    "explicit_t34_check",
    "gamma_star",
    "lemma_imp_check",
    "lemma_new_check",
    "lemma_new_expr",
    "lemma_third_check",
    "run_checks",
    "run_full_verification",
    "t34_expr",
]

NEAR_ZERO = 1e-10
IMP_U_BOUND = 2.5
IMP_V_BOUND = 1.0 / 0.345
U_LIMIT = 4.0 * math.pi / (3.0 * math.sqrt(3.0))


@dataclass
class InequalityReport:
    name: str
    T: int | None
    grid: tuple[float, float, int, float]
    extremal_value: float
    extremal_location: float
    violations: list[tuple[float, float]] = field(default_factory=list)
    extrema: list[tuple[float, float]] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        lo, hi, count, eps = self.grid
        return {
            "name": self.name,
            "T": self.T,
            "grid": {"lo": lo, "hi": hi, "count": count, "epsilon": eps},
            "extremal_value": self.extremal_value,
            "extremal_location": self.extremal_location,
            "violations": [[a, b] for a, b in self.violations],
            "extrema": [[a, b] for a, b in self.extrema],
            "notes": self.notes,
            "passed": self.passed,
        }


def gamma_star(T: int) -> float:
    """3T pi/(3T+2), where the case functions G1 (odd T) / G2 (even T) vanish."""
    return 3 * T * math.pi / (3 * T + 2)


class CaseFunctions:
    """G1, G2 and Ftilde for a fixed T, vectorized in gamma."""

    def __init__(self, T: int):
        c = constants(T)
        self.T = T
        self.m = 3 * T + 1
        self.v = c.v_T
        self.A = math.sin(T * math.pi / (3 * T + 2))
        self.B = math.sin(2 * math.pi / (3 * T + 2))

    def _s(self, k, g):
        return sin_multiple(k, g)

    def G1(self, g):
        T, m, s = self.T, self.m, self._s
        return ((s(1, g) + s(m, g) / m) * self.A
                + ((2 * T + 1) / m * s(T + 1, g) + (T + 1) / m * s(2 * T + 1, g)) * self.B)

    def G2(self, g):
        T, m, s = self.T, self.m, self._s
        return ((s(1, g) - s(m, g) / m) * self.A
                - ((2 * T + 1) / m * s(T + 1, g) - (T + 1) / m * s(2 * T + 1, g)) * self.B)

    def Ftilde(self, g):
        T, m, s = self.T, self.m, self._s
        sm, s1 = s(m, g), s(1, g)
        return (sm * sm - m * m * s1 * s1
                + self.v * (-(2 * T + 1) / (T + 1) * s(T + 1, g) * sm + m * s1 * s(2 * T + 1, g)))

    def G1_prime(self, g):
        """Factored derivative 2 cos((3T+2)g/2) (cos(3Tg/2) A + k cos(Tg/2) B)."""
        T, m = self.T, self.m
        g = np.asarray(g, dtype=float)
        k = (2 * T + 1) * (T + 1) / m
        return 2 * np.cos((3 * T + 2) * g / 2) * (np.cos(3 * T * g / 2) * self.A
                                                  + k * np.cos(T * g / 2) * self.B)

    def G2_prime(self, g):
        T, m = self.T, self.m
        g = np.asarray(g, dtype=float)
        k = (2 * T + 1) * (T + 1) / m
        return 2 * np.sin((3 * T + 2) * g / 2) * (np.sin(3 * T * g / 2) * self.A
                                                  - k * np.sin(T * g / 2) * self.B)

    def ftilde_quartic(self) -> float:
        """C with Ftilde(g) = C g^4 + O(g^6) as g -> 0; negative when v_T < 3."""
        T, m = self.T, self.m
        return m * T * (3 * T + 2) / 3.0 * ((2 * T + 1) * self.v - 3 * m)

    def get(self, which: str):
        return {"G1": self.G1, "G2": self.G2, "Ftilde": self.Ftilde}[which]


# ----------------------------------------------------------------------------
# lemmas


def lemma_imp_check(t_min: int = 3, t_max: int = 200) -> tuple[InequalityReport, InequalityReport]:
    """u_T increasing and below 2.5, v_T decreasing and below 1/0.345."""
    if not 3 <= t_min < t_max:
        raise ValueError("need 3 <= t_min < t_max")
    Ts = np.arange(t_min, t_max + 1)
    u = np.array([constants(int(T)).u_T for T in Ts])
    v = np.array([constants(int(T)).v_T for T in Ts])
    grid = (float(t_min), float(t_max), int(Ts.size), 0.0)

    du, dv = np.diff(u), np.diff(v)
    u_viol = [(float(T), float(d)) for T, d in zip(Ts[:-1], du) if not d > 0]
    u_viol += [(float(T), float(x)) for T, x in zip(Ts, u) if not x < IMP_U_BOUND]
    k = int(np.argmax(u))
    rep_u = InequalityReport(
        "lemma_imp_u", None, grid, float(u[k]), float(Ts[k]), u_viol,
        notes={"bound": IMP_U_BOUND, "min_increment": float(du.min()),
               "limit": U_LIMIT, "distance_to_limit": float(U_LIMIT - u[-1]),
               "printed_limit_bound_0.4_holds": bool(U_LIMIT < 0.4)},
    )
    v_viol = [(float(T), float(d)) for T, d in zip(Ts[:-1], dv) if not d < 0]
    v_viol += [(float(T), float(x)) for T, x in zip(Ts, v) if not x < IMP_V_BOUND]
    k = int(np.argmax(v))
    rep_v = InequalityReport(
        "lemma_imp_v", None, grid, float(v[k]), float(Ts[k]), v_viol,
        notes={"bound": IMP_V_BOUND, "max_increment": float(dv.max()),
               "margin": float(IMP_V_BOUND - v.max())},
    )
    return rep_u, rep_v


def lemma_third_check(y_max: float = 60.0, grid_x: int = 2000, grid_y: int = 2000) -> InequalityReport:
    """3 sin(xy) + y sin(x) > 0 for x in (0, pi/2), y >= 3.

    The infimum is 0, approached at the excluded corner x = pi/2, y = 3.
    """
    if y_max < 3:
        raise ValueError("y_max must be >= 3")
    hi = math.pi / 2
    eps = hi / (100 * grid_x)
    x = np.linspace(eps, hi - eps, grid_x)
    y = np.linspace(3.0, y_max, grid_y)
    best = (math.inf, 0.0, 0.0)
    viol = []
    for k in range(0, grid_y, 256):
        yy = y[k:k + 256, None]
        val = 3 * np.sin(x[None, :] * yy) + yy * np.sin(x[None, :])
        i, j = np.unravel_index(int(np.argmin(val)), val.shape)
        if val[i, j] < best[0]:
            best = (float(val[i, j]), float(x[j]), float(y[k + i]))
        bad = np.argwhere(val <= 0)
        viol += [(float(x[b]), float(val[a, b])) for a, b in bad[:100]]
    return InequalityReport("lemma_third", None, (0.0, hi, grid_x, eps), best[0], best[1],
                            viol, notes={"y_at_extremum": best[2], "y_range": [3.0, float(y_max)],
                                         "grid_y": grid_y})


def lemma_new_expr(T: int, g):
    v = constants(T).v_T
    m = 3 * T + 1
    g = np.asarray(g, dtype=float)
    return v * np.sin((2 * T + 1) * g) - m * np.sin(g) - np.sin(m * g)


def lemma_new_check(t_min: int = 5, t_max: int = 100, grid: int = 10_000) -> InequalityReport:
    """v_T sin((2T+1)g) - (3T+1) sin g - sin((3T+1)g) < 0 on (0, pi/(6T+2))."""
    if t_min < 5 or t_max < t_min:
        raise ValueError("need 5 <= t_min <= t_max")
    best = (-math.inf, 0.0, 0)
    viol = []
    per_T = []
    for T in range(t_min, t_max + 1):
        hi = math.pi / (6 * T + 2)
        eps = hi / (100 * grid)
        g = np.linspace(eps, hi - eps, grid)
        val = lemma_new_expr(T, g)
        k = int(np.argmax(val))
        per_T.append((float(T), float(val[k])))
        if val[k] > best[0]:
            best = (float(val[k]), float(g[k]), T)
        viol += [(float(g[i]), float(val[i])) for i in np.flatnonzero(val >= 0)[:100]]
    return InequalityReport("lemma_new", None, (0.0, math.pi / (6 * t_min + 2), grid, 0.0),
                            best[0], best[1], viol,
                            notes={"T_at_extremum": best[2], "t_range": [t_min, t_max],
                                   "relative_epsilon": 0.01 / grid},
                            extrema=per_T)


# ----------------------------------------------------------------------------
# case functions


def _polish_zero(deriv, g0: float, h: float) -> float | None:
    """Root of the derivative bracketing g0, if the sign changes within h."""
    a, b = g0 - h, g0 + h
    fa, fb = float(deriv(a)), float(deriv(b))
    if fa == 0:
        return a
    if fb == 0:
        return b
    if fa * fb > 0:
        return None
    return brentq(deriv, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)


def case_profile(T: int, which: str, grid: int = 200_000,
                 funcs: CaseFunctions | None = None, n_refine: int = 10) -> InequalityReport:
    """Sign profile of G1, G2 (expected >= 0) or Ftilde (expected < 0) on (0, pi)."""
    if T < 3:
        raise ValueError("case profiles need T >= 3")
    if grid < 10_000:
        raise ValueError("grid must be >= 1e4")
    if which not in ("G1", "G2", "Ftilde"):
        raise ValueError(f"unknown case function {which!r}")
    cf = funcs if funcs is not None else CaseFunctions(T)
    f = cf.get(which)
    eps = math.pi / (100 * grid)
    g = np.linspace(eps, math.pi - eps, grid)
    val = np.asarray(f(g))
    h = g[1] - g[0]
    notes: dict = {"T_parity": "odd" if T % 2 else "even"}

    if which == "Ftilde":
        C = cf.ftilde_quartic()
        # where C g^4 is below 1e-12 the sign is not resolvable; only require
        # that the value not be significantly positive there
        eta = (4e-12 / abs(C)) ** 0.25 if C != 0 else 0.0
        edge = (g < eta) | (g > math.pi - eta)
        noise = 64 * np.finfo(float).eps * (cf.m * np.sin(g)) ** 2
        bad = np.where(edge, val > noise, val > -1e-12)
        k = int(np.argmax(np.where(edge, -np.inf, val))) if (~edge).any() else int(np.argmax(val))
        notes.update({"quartic_coefficient": C, "endpoint_neighbourhood": eta,
                      "edge_points": int(edge.sum())})
        viol = [(float(g[i]), float(val[i])) for i in np.flatnonzero(bad)[:100]]
        return InequalityReport(f"case_{which}", T, (0.0, math.pi, grid, eps), float(val[k]),
                                float(g[k]), viol, notes=notes)

    viol = [(float(g[i]), float(val[i])) for i in np.flatnonzero(val < -NEAR_ZERO)[:100]]
    i = np.arange(1, grid - 1)
    lm = i[(val[i] < val[i - 1]) & (val[i] <= val[i + 1])]
    lm = lm[np.argsort(val[lm], kind="stable")[:n_refine]]
    extrema = []
    zeros = []
    if lm.size:
        xs, fs = golden_min(f, g[lm - 1], g[lm + 1], tol=1e-12)
        deriv = cf.G1_prime if which == "G1" else cf.G2_prime
        for x, fx in sorted(zip(xs.tolist(), fs.tolist())):
            if abs(fx) <= NEAR_ZERO:
                z = _polish_zero(deriv, x, 2 * h)
                if z is not None and abs(float(f(z))) <= abs(fx):
                    x, fx = z, float(f(z))
                zeros.append((x, fx))
            extrema.append((x, fx))
            if fx < -NEAR_ZERO:
                viol.append((x, fx))
    gs = gamma_star(T)
    notes["interior_zeros"] = [x for x, _ in zeros]
    notes["zero_at_gamma_star"] = any(abs(x - gs) <= 1e-8 for x, _ in zeros)
    notes["gamma_star"] = gs
    for x, fx in zeros:
        if abs(x - gs) > 1e-8:
            viol.append((x, fx))
            notes.setdefault("zeros_off_gamma_star", []).append(x)
    k = int(np.argmin(val))
    ext_val, ext_loc = float(val[k]), float(g[k])
    if extrema:
        x, fx = min(extrema, key=lambda e: e[1])
        if fx < ext_val:
            ext_val, ext_loc = fx, x
    return InequalityReport(f"case_{which}", T, (0.0, math.pi, grid, eps), ext_val, ext_loc,
                            viol, extrema=extrema, notes=notes)


# ----------------------------------------------------------------------------
# explicit T = 3, 4 inequalities


# (scale, {frequency: weight}) for sum_k weight * cos(k x); weights sum to 0
_T34 = {
    3: {1: 100.0, 10: -1.0, 0: -99.0, 3: 0.75 * 33, 7: 0.75 * 7, 4: -0.75 * 40},
    4: {1: 169.0, 13: -1.0, 0: -168.0, 4: 0.6 * 56, 9: 0.6 * 9, 5: -0.6 * 65},
}


def t34_expr(T: int, x):
    """The displayed cosine polynomial for T = 3 or 4.

    Since the weights sum to 0 it equals -2 sum_k w_k sin^2(k x/2), which
    avoids cancellation near x = 0 where the expression vanishes to 4th order.
    """
    x = np.asarray(x, dtype=float)
    return sum(-2.0 * w * np.sin(k * x / 2) ** 2 for k, w in _T34[T].items() if k)


def t34_expr_direct(T: int, x):
    x = np.asarray(x, dtype=float)
    return sum(w * np.cos(k * x) for k, w in _T34[T].items())


def explicit_t34_check(grid: int = 100_000) -> tuple[InequalityReport, InequalityReport]:
    if grid < 10_000:
        raise ValueError("grid must be >= 1e4")
    eps = math.pi / (100 * grid)
    x = np.linspace(eps, math.pi - eps, grid)
    out = []
    for T in (3, 4):
        val = t34_expr(T, x)
        k = int(np.argmax(val))
        viol = [(float(x[i]), float(val[i])) for i in np.flatnonzero(val >= 0)[:100]]
        out.append(InequalityReport(f"explicit_t{T}", T, (0.0, math.pi, grid, eps),
                                    float(val[k]), float(x[k]), viol,
                                    notes={"value_at_0": float(sum(_T34[T].values()))}))
    return out[0], out[1]


# ----------------------------------------------------------------------------
# orchestration


@dataclass
class VerifyConfig:
    grid: int = 200_000
    gap_tol: float = 1e-6
    tol: float = 1e-10
    imp_t_max: int = 200
    third_y_max: float = 60.0
    third_grid: int = 2000
    new_grid: int = 10_000
    t34_grid: int = 100_000
    threads: int = 1


def _sweep_report(T: int, cfg: VerifyConfig) -> InequalityReport:
    rep = fgamma_sweep(T, cfg.grid, cfg.gap_tol)
    eps = rep.parameters.get("epsilon", 0.0)
    viol = [((w.x - w.y) / 2, w.image_distance) for w in rep.crossings]
    if rep.verdict == Verdict.INCONCLUSIVE:
        viol += [(g, math.nan) for g in rep.failed_gamma] or [(math.nan, math.nan)]
    sg = rep.min_signed_gap if rep.min_signed_gap is not None else math.nan
    return InequalityReport(
        "fgamma_sweep", T, (0.0, math.pi, cfg.grid, eps), sg,
        rep.parameters.get("min_signed_location", math.nan), viol,
        extrema=[(m.gamma, m.gap) for m in rep.gap_minima],
        notes={"verdict": rep.verdict.value, "min_root_gap": rep.min_root_gap,
               "contacts": len(rep.contacts),
               "unreachable": [m.gamma for m in rep.gap_minima if m.kind == "unreachable"]},
    )


def _quasi_report(T: int, cfg: VerifyConfig) -> InequalityReport:
    q = quasi_extremal_check(T, cfg.tol)
    dev = np.abs(np.abs(q.roots) - 1.0)
    k = int(np.argmax(dev))
    viol = [(float(np.angle(r)), float(d)) for r, d in zip(q.roots, dev) if d > cfg.tol]
    if not q.min_pairwise > 10 * cfg.tol:
        viol.append((math.nan, q.min_pairwise))
    if q.max_match_err > 10 * cfg.tol:
        viol.append((math.nan, q.max_match_err))
    return InequalityReport(
        "quasi_extremal", T, (0.0, 2 * math.pi, 3 * T, 0.0), q.max_modulus_dev,
        float(np.angle(q.roots[k])), viol,
        notes={"a": q.a, "min_pairwise": q.min_pairwise, "max_match_err": q.max_match_err},
    )


def _per_T(T: int, cfg: VerifyConfig, funcs_factory) -> list[InequalityReport]:
    out = []
    if T >= 3:
        cf = funcs_factory(T)
        for which in ("G1", "G2", "Ftilde"):
            out.append(case_profile(T, which, cfg.grid, funcs=cf))
    out.append(_sweep_report(T, cfg))
    out.append(_quasi_report(T, cfg))
    return out


def run_full_verification(t_max: int, config: VerifyConfig | None = None,
                          funcs_factory=CaseFunctions) -> list[InequalityReport]:
    """All checks in a fixed order; overall pass iff every report passes.

    Order: lemma_imp (u, v), lemma_third, lemma_new, then for T = 1..t_max
    the case profiles (T >= 3), the f_gamma sweep and the quasi-extremality
    check, then the explicit T = 3, 4 inequalities.
    """
    if t_max < 5:
        raise ValueError("t_max must be >= 5")
    cfg = config or VerifyConfig()
    reports = list(lemma_imp_check(3, max(cfg.imp_t_max, t_max)))
    reports.append(lemma_third_check(cfg.third_y_max, cfg.third_grid, cfg.third_grid))
    reports.append(lemma_new_check(5, t_max, cfg.new_grid))
    Ts = list(range(1, t_max + 1))
    for b in _map_T(lambda T: _per_T(T, cfg, funcs_factory), Ts, cfg.threads):
        reports.extend(b)
    reports.extend(explicit_t34_check(cfg.t34_grid))
    return reports


def _map_T(fn, Ts, threads: int) -> list:
    """``[fn(T) for T in Ts]``, optionally on a thread pool (order preserved)."""
    threads = threads if threads > 0 else (os.cpu_count() or 1)
    if threads > 1 and len(Ts) > 1:
        with ThreadPoolExecutor(threads) as ex:
            return list(ex.map(fn, Ts))
    return [fn(T) for T in Ts]


CHECK_NAMES = ("imp", "third", "new", "g1", "g2", "ftilde", "t34", "fgamma", "quasi", "all")


def run_checks(name: str, t_max: int, config: VerifyConfig | None = None,
               funcs_factory=CaseFunctions) -> list[InequalityReport]:
    """Run one named group of checks (or ``"all"``) up to ``t_max``.

    Case profiles cover T = 3..t_max; the f_gamma sweep and the
    quasi-extremality check cover T = 1..t_max.
    """
    if name not in CHECK_NAMES:
        raise ValueError(f"unknown check {name!r}; expected one of {', '.join(CHECK_NAMES)}")
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    cfg = config or VerifyConfig()
    if name == "all":
        return run_full_verification(t_max, cfg, funcs_factory)
    if name == "imp":
        return list(lemma_imp_check(3, max(cfg.imp_t_max, t_max)))
    if name == "third":
        return [lemma_third_check(cfg.third_y_max, cfg.third_grid, cfg.third_grid)]
    if name == "new":
        if t_max < 5:
            raise ValueError("t_max must be >= 5 for the 'new' check")
        return [lemma_new_check(5, t_max, cfg.new_grid)]
    if name == "t34":
        return list(explicit_t34_check(cfg.t34_grid))
    if name in ("g1", "g2", "ftilde"):
        which = {"g1": "G1", "g2": "G2", "ftilde": "Ftilde"}[name]
        Ts = list(range(3, t_max + 1))
        if not Ts:
            raise ValueError("case profiles need t_max >= 3")
        return _map_T(lambda T: case_profile(T, which, cfg.grid, funcs=funcs_factory(T)),
                      Ts, cfg.threads)
    one = _sweep_report if name == "fgamma" else _quasi_report
    return _map_T(lambda T: one(T, cfg), list(range(1, t_max + 1)), cfg.threads)
