"""Command-line front end: ``gen``, ``check``, ``verify`` and ``plot``.

Every command builds its whole output in memory and writes it once, so a
failing command never leaves partial output behind. Settings are resolved
as command-line flags > ``SUFFRIDGE_*`` environment variables > defaults.

Exit codes::

    0  success / Univalent / all checks passed
    1  some verification check failed
    2  bad arguments, invalid polynomial spec, unreadable input
    3  NotUnivalent
    4  Inconclusive
    5  output could not be written
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .numkit import Polynomial
from .suffridge import SuffridgeSpec, TSymSpec, s4_coeffs, suffridge_coeffs, tsym_coeffs
from .univalence import UnivalenceConfig, Verdict, boundary_curve, univalence_verdict
from .verifier import CHECK_NAMES, VerifyConfig, run_checks

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_UNIVALENT = 3
EXIT_INCONCLUSIVE = 4
EXIT_IO = 5

_VERDICT_EXIT = {
    Verdict.UNIVALENT: EXIT_OK,
    Verdict.NOT_UNIVALENT: EXIT_NOT_UNIVALENT,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}

FORMATS = ("json", "csv", "text")
CSV_COLUMNS = ("check", "T", "gamma_or_x", "value")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


# ----------------------------------------------------------------------------
# configuration


@dataclass
class RunConfig:
    grid_count: int = 200_000
    samples: int = 4096
    gap_tol: float = 1e-6
    tol: float = 1e-10
    t_max: int = 10
    output_format: str = "json"
    output_path: str | None = None
    threads: int = 1

    def __post_init__(self):
        if self.grid_count < 1000:
            raise ValueError("grid_count must be >= 1000")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if not (self.gap_tol > 0 and self.tol > 0):
            raise ValueError("tolerances must be positive")
        if self.t_max < 1:
            raise ValueError("t_max must be positive")
        if self.output_format not in FORMATS:
            raise ValueError(f"output_format must be one of {FORMATS}")
        if self.threads < 0:
            raise ValueError("threads must be >= 0 (0 = auto)")


_ENV = {
    "grid_count": ("SUFFRIDGE_GRID", int),
    "tol": ("SUFFRIDGE_TOL", float),
    "threads": ("SUFFRIDGE_THREADS", int),
}


def resolve_config(args: argparse.Namespace, environ: Mapping[str, str] | None = None) -> RunConfig:
    """Merge flags, environment and defaults into a validated RunConfig."""
    env = os.environ if environ is None else environ
    values = {}
    for name, (var, conv) in _ENV.items():
        raw = env.get(var)
        if raw is not None and raw.strip() != "":
            try:
                values[name] = conv(raw)
            except ValueError:
                raise CliError(f"invalid value for {var}: {raw!r}") from None
    for name in ("grid_count", "samples", "gap_tol", "tol", "t_max", "output_format",
                 "output_path", "threads"):
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    try:
        return RunConfig(**values)
    except ValueError as exc:
        raise CliError(str(exc)) from None


# ----------------------------------------------------------------------------
# serialization


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def _encode(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(float(obj)))
    elif isinstance(obj, (complex, np.complexfloating)):
        _encode({"re": obj.real, "im": obj.imag}, out)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif hasattr(obj, "value") and isinstance(obj.value, str):  # str enums
        out.append(json.dumps(obj.value))
    elif isinstance(obj, Mapping):
        out.append("{")
        for i, key in enumerate(sorted(obj, key=str)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key)))
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _encode(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no whitespace, floats with 17 significant
    digits, non-finite floats as null. Parsing and re-serializing the output
    reproduces it byte for byte."""
    out: list[str] = []
    _encode(obj, out)
    return "".join(out)


def coeffs_to_records(p: Polynomial) -> list[dict]:
    """Nonzero coefficients as ``{degree, re, im}`` records, ascending."""
    return [{"degree": j, "re": float(p.coeffs[j].real), "im": float(p.coeffs[j].imag)}
            for j in p.support()]


def records_to_poly(records) -> Polynomial:
    if not isinstance(records, list) or not records:
        raise ValueError("expected a non-empty JSON array of {degree, re, im}")
    terms: dict[int, complex] = {}
    for rec in records:
        if not isinstance(rec, dict) or "degree" not in rec:
            raise ValueError("each entry needs a 'degree' field")
        deg = rec["degree"]
        if isinstance(deg, bool) or not isinstance(deg, int) or deg < 0:
            raise ValueError(f"invalid degree {deg!r}")
        re_, im_ = rec.get("re", 0.0), rec.get("im", 0.0)
        if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re_, im_)):
            raise ValueError("'re' and 'im' must be numbers")
        terms[deg] = terms.get(deg, 0j) + complex(re_, im_)
    return Polynomial.from_terms(terms)


def read_coeffs_file(path: str) -> Polynomial:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return records_to_poly(data)
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read coefficients from {path}: {exc}") from None


def reports_to_csv(name_reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in name_reports:
        rows = rep.extrema or [(rep.extremal_location, rep.extremal_value)]
        T = "" if rep.T is None else str(rep.T)
        for loc, val in rows:
            w.writerow([rep.name, T, _fmt_float(float(loc)), _fmt_float(float(val))])
    return buf.getvalue()


def reports_to_text(reports) -> str:
    lines = []
    for rep in reports:
        T = "-" if rep.T is None else str(rep.T)
        lines.append(f"{'PASS' if rep.passed else 'FAIL'} {rep.name} T={T} "
                     f"extremal={_fmt_float(rep.extremal_value)} "
                     f"at={_fmt_float(rep.extremal_location)} "
                     f"violations={len(rep.violations)}")
    ok = all(r.passed for r in reports)
    lines.append(f"{'ALL PASS' if ok else 'SOME FAILED'} ({len(reports)} reports)")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# SVG


def render_svg(points: np.ndarray, title: str, size: int = 800) -> str:
    """Closed polyline of ``points`` plus an axis cross at the origin.

    The view box covers the points and the origin with a 5% margin and equal
    scaling on both axes. Output depends only on the inputs.
    """
    pts = np.asarray(points, dtype=complex)
    xs = np.concatenate([pts.real, [0.0]])
    ys = np.concatenate([pts.imag, [0.0]])
    xmin, xmax, ymin, ymax = xs.min(), xs.max(), ys.min(), ys.max()
    span = max(xmax - xmin, ymax - ymin) or 1.0
    margin = 0.05 * span
    full = span + 2 * margin
    scale = size / full
    cx, cy = (xmin + xmax) / 2, (ymin + ymax) / 2

    def px(x, y):
        return (size / 2 + (x - cx) * scale, size / 2 - (y - cy) * scale)

    closed = np.concatenate([pts, pts[:1]])
    coords = " ".join("%.4f,%.4f" % px(z.real, z.imag) for z in closed)
    ox, oy = px(0.0, 0.0)
    return (
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">\n'
        f"<title>{title}</title>\n"
        f'<line x1="0" y1="{oy:.4f}" x2="{size}" y2="{oy:.4f}" stroke="#999999" '
        'stroke-width="1"/>\n'
        f'<line x1="{ox:.4f}" y1="0" x2="{ox:.4f}" y2="{size}" stroke="#999999" '
        'stroke-width="1"/>\n'
        f'<polyline fill="none" stroke="#000000" stroke-width="1" points="{coords}"/>\n'
        "</svg>\n"
    )


# ----------------------------------------------------------------------------
# commands


def cmd_gen(args, cfg: RunConfig) -> tuple[int, str]:
    try:
        if args.suffridge is not None:
            p = suffridge_coeffs(SuffridgeSpec(*args.suffridge))
        else:
            p = tsym_coeffs(TSymSpec(*args.tsym))
    except (TypeError, ValueError) as exc:
        raise CliError(f"invalid polynomial spec: {exc}") from None
    return EXIT_OK, dumps(coeffs_to_records(p)) + "\n"


def cmd_check(args, cfg: RunConfig) -> tuple[int, str]:
    start = time.perf_counter()
    if args.T is not None:
        if args.T < 1:
            raise CliError("T must be >= 1")
        poly, source, sweep = s4_coeffs(args.T), {"T": args.T}, True
    else:
        poly, source, sweep = read_coeffs_file(args.coeffs_file), {"file": args.coeffs_file}, False
    if poly.trimmed().degree < 1:
        raise CliError("polynomial must have degree >= 1")
    try:
        ucfg = UnivalenceConfig(samples=cfg.samples, refine_tol=cfg.tol,
                                grid_count=cfg.grid_count, gap_tol=cfg.gap_tol,
                                run_sweep=sweep)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    rep = univalence_verdict(poly, ucfg)
    out = rep.as_dict()
    out["input"] = source
    out["runtime_ms"] = (time.perf_counter() - start) * 1000.0
    return _VERDICT_EXIT[rep.verdict], dumps(out) + "\n"


def cmd_verify(args, cfg: RunConfig) -> tuple[int, str]:
    if args.lemma == "all" and cfg.t_max < 5:
        raise CliError("--t-max must be >= 5 with --lemma all")
    vcfg = VerifyConfig(grid=cfg.grid_count, gap_tol=cfg.gap_tol, tol=cfg.tol,
                        threads=cfg.threads)
    try:
        reports = run_checks(args.lemma, cfg.t_max, vcfg)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    ok = all(r.passed for r in reports)
    if cfg.output_format == "json":
        text = dumps({"check": args.lemma, "t_max": cfg.t_max, "passed": ok,
                      "reports": [r.as_dict() for r in reports]}) + "\n"
    elif cfg.output_format == "csv":
        text = reports_to_csv(reports)
    else:
        text = reports_to_text(reports)
    return (EXIT_OK if ok else EXIT_FAILED), text


def cmd_plot(args, cfg: RunConfig) -> tuple[int, str]:
    if args.T < 1:
        raise CliError("T must be >= 1")
    curve = boundary_curve(s4_coeffs(args.T), cfg.samples)
    return EXIT_OK, render_svg(curve.points, f"S_4^({args.T}) boundary image, "
                                             f"{cfg.samples} samples")


# ----------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", dest="grid_count", type=int, default=None,
                   help="grid points per sweep (env SUFFRIDGE_GRID, default 200000)")
    p.add_argument("--tol", type=float, default=None,
                   help="refinement tolerance (env SUFFRIDGE_TOL, default 1e-10)")
    p.add_argument("--gap-tol", dest="gap_tol", type=float, default=None,
                   help="root-gap tolerance of the f_gamma sweep (default 1e-6)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads, 0 = auto (env SUFFRIDGE_THREADS, default 1)")
    p.add_argument("--output", "-o", dest="output_path", default=None,
                   help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="suffpoly",
        description="Construct Suffridge-type polynomials and check their univalence.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="print polynomial coefficients as JSON")
    grp = g.add_mutually_exclusive_group(required=True)
    grp.add_argument("--suffridge", nargs=2, type=int, metavar=("k", "N"))
    grp.add_argument("--tsym", nargs=2, type=int, metavar=("T", "n"))
    g.add_argument("--output", "-o", dest="output_path", default=None)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="decide univalence in the unit disk")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--T", type=int, help="check S_4^(T) with both methods")
    src.add_argument("--coeffs-file", dest="coeffs_file",
                     help="JSON array of {degree, re, im}; generic method")
    c.add_argument("--samples", type=int, default=None,
                   help="boundary-curve samples (default 4096)")
    _add_common(c)
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify", help="grid-verify the supporting inequalities")
    v.add_argument("--t-max", dest="t_max", type=int, default=None,
                   help="largest T to check (default 10)")
    v.add_argument("--lemma", default="all",
                   help=f"one of {', '.join(CHECK_NAMES)} (default all)")
    v.add_argument("--format", dest="output_format", choices=FORMATS, default=None)
    _add_common(v)
    v.set_defaults(func=cmd_verify)

    pl = sub.add_parser("plot", help="SVG of the boundary image of S_4^(T)")
    pl.add_argument("--T", type=int, required=True)
    pl.add_argument("--samples", type=int, default=None)
    pl.add_argument("--out", dest="output_path", default=None,
                    help="SVG path (default stdout)")
    pl.set_defaults(func=cmd_plot)
    return parser


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


def main(argv: Sequence[str] | None = None, environ: Mapping[str, str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        if getattr(args, "lemma", None) is not None and args.lemma not in CHECK_NAMES:
            raise CliError(f"unknown lemma {args.lemma!r}; expected one of "
                           f"{', '.join(CHECK_NAMES)}")
        cfg = resolve_config(args, environ)
        code, text = args.func(args, cfg)
        _write(text, cfg.output_path)
        return code
    except CliError as exc:
        sys.stderr.write(f"suffpoly: error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
