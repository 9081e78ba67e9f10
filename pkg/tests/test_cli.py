import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from suffpoly.cli import (EXIT_INCONCLUSIVE, EXIT_IO, EXIT_NOT_UNIVALENT, EXIT_OK, EXIT_USAGE,
                          RunConfig, build_parser, dumps, main, resolve_config)


def run(capsys, *argv, env=None):
    code = main(list(argv), environ=env or {})
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_tsym(capsys):
    code, out, _ = run(capsys, "gen", "--tsym", "3", "4")
    assert code == EXIT_OK
    recs = json.loads(out)
    assert [r["degree"] for r in recs] == [1, 4, 7, 10]
    vals = [r["re"] for r in recs]
    assert vals == pytest.approx([1, 0.5007592, 0.2861481, 0.1], abs=1e-7)
    assert all(r["im"] == 0 for r in recs)


def test_gen_trivial_and_identity(capsys):
    code, out, _ = run(capsys, "gen", "--suffridge", "1", "1")
    assert json.loads(out) == [{"degree": 1, "re": 1, "im": 0}]
    _, a, _ = run(capsys, "gen", "--tsym", "1", "4")
    _, b, _ = run(capsys, "gen", "--suffridge", "1", "4")
    assert a == b


def test_gen_17_digits(capsys):
    _, out, _ = run(capsys, "gen", "--tsym", "3", "4")
    assert "0.50075922641740078" in out


@pytest.mark.parametrize("argv", [
    ["gen", "--suffridge", "5", "3"],
    ["gen", "--tsym", "0", "4"],
    ["gen"],
    ["gen", "--tsym", "3", "4", "--suffridge", "1", "2"],
])
def test_gen_invalid(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert err


def test_check_t(capsys):
    code, out, _ = run(capsys, "check", "--T", "7")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["verdict"] == "Univalent"
    for key in ("methods", "min_root_gap", "witnesses", "critical_points_inside", "runtime_ms"):
        assert key in rep
    assert "FGammaSweep" in rep["methods"] and "BoundaryCurve" in rep["methods"]


def test_check_coarse_grid(capsys):
    code, out, _ = run(capsys, "check", "--T", "3", "--grid", "1000")
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] == "Univalent"


def test_check_file_not_univalent(capsys, tmp_path):
    f = tmp_path / "zplusz2.json"
    f.write_text(json.dumps([{"degree": 1, "re": 1, "im": 0}, {"degree": 2, "re": 1, "im": 0}]))
    code, out, _ = run(capsys, "check", "--coeffs-file", str(f))
    assert code == EXIT_NOT_UNIVALENT
    rep = json.loads(out)
    assert rep["verdict"] == "NotUnivalent"
    xs = sorted([rep["witnesses"][0]["x"], rep["witnesses"][0]["y"]])
    assert xs == pytest.approx([2.0943951023931957, 4.1887902047863914], abs=1e-9)


def test_check_inconclusive_exit_code(capsys, tmp_path, monkeypatch):
    from suffpoly import cli
    from suffpoly.univalence import UnivalenceReport, Verdict

    monkeypatch.setattr(cli, "univalence_verdict",
                        lambda p, cfg: UnivalenceReport(Verdict.INCONCLUSIVE, []))
    code, out, _ = run(capsys, "check", "--T", "2")
    assert code == EXIT_INCONCLUSIVE
    assert json.loads(out)["verdict"] == "Inconclusive"


@pytest.mark.parametrize("content", [None, "not json", "[]", '[{"re": 1}]',
                                     '[{"degree": -1, "re": 1, "im": 0}]'])
def test_check_bad_file(capsys, tmp_path, content):
    f = tmp_path / "c.json"
    if content is not None:
        f.write_text(content)
    code, out, err = run(capsys, "check", "--coeffs-file", str(f))
    assert code == EXIT_USAGE
    assert out == "" and err


def test_verify_imp(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "imp", "--t-max", "200")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["passed"] is True
    assert [r["name"] for r in d["reports"]] == ["lemma_imp_u", "lemma_imp_v"]


def test_verify_third_text(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "third", "--format", "text")
    assert code == EXIT_OK
    assert out.startswith("PASS lemma_third")
    assert out.rstrip().endswith("ALL PASS (1 reports)")


def test_verify_unknown_lemma(capsys):
    code, out, err = run(capsys, "verify", "--lemma", "bogus")
    assert code == EXIT_USAGE
    assert out == "" and "unknown lemma" in err


def test_verify_all_needs_t_max_5(capsys):
    code, _, _ = run(capsys, "verify", "--lemma", "all", "--t-max", "4")
    assert code == EXIT_USAGE


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--lemma", "g1", "--t-max", "4", "--format", "csv",
                       "--grid", "20000")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "check,T,gamma_or_x,value"
    assert all(line.split(",")[0] == "case_G1" for line in lines[1:])
    assert {line.split(",")[1] for line in lines[1:]} == {"3", "4"}


def test_verify_failure_exit_code(capsys):
    # G2 vanishes at 2 pi/(3T+2), away from gamma*; the profile check flags it
    code, out, _ = run(capsys, "verify", "--lemma", "g2", "--t-max", "3", "--grid", "20000")
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_verify_output_file(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--lemma", "t34", "--output", str(dest))
    assert code == EXIT_OK and out == ""
    assert json.loads(dest.read_text())["passed"] is True


def test_plot_svg(capsys, tmp_path):
    dest = tmp_path / "s41.svg"
    code, _, _ = run(capsys, "plot", "--T", "1", "--samples", "2048", "--out", str(dest))
    assert code == EXIT_OK
    root = ET.parse(dest).getroot()
    assert root.tag == "{http://www.w3.org/2000/svg}svg" and root.get("version") == "1.1"
    poly = root.find("{http://www.w3.org/2000/svg}polyline")
    pts = poly.get("points").split()
    assert len(pts) == 2049 and pts[0] == pts[-1]
    assert len(root.findall("{http://www.w3.org/2000/svg}line")) == 2


def test_plot_deterministic_and_small(capsys, tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run(capsys, "plot", "--T", "5", "--samples", "4096", "--out", str(a))
    run(capsys, "plot", "--T", "5", "--samples", "4096", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, "plot", "--T", "1", "--samples", "8")
    assert code == EXIT_OK
    ET.fromstring(out)


def test_plot_io_failure(capsys, tmp_path):
    code, _, err = run(capsys, "plot", "--T", "1", "--out", str(tmp_path / "no" / "x.svg"))
    assert code == EXIT_IO and err


def test_config_precedence():
    parser = build_parser()
    args = parser.parse_args(["check", "--T", "3"])
    assert resolve_config(args, {}).grid_count == 200_000
    cfg = resolve_config(args, {"SUFFRIDGE_GRID": "5000", "SUFFRIDGE_TOL": "1e-9",
                                "SUFFRIDGE_THREADS": "0"})
    assert (cfg.grid_count, cfg.tol, cfg.threads) == (5000, 1e-9, 0)
    args = parser.parse_args(["check", "--T", "3", "--grid", "7000"])
    assert resolve_config(args, {"SUFFRIDGE_GRID": "5000"}).grid_count == 7000


def test_config_invalid(capsys):
    code, _, err = run(capsys, "check", "--T", "3", env={"SUFFRIDGE_GRID": "abc"})
    assert code == EXIT_USAGE and "SUFFRIDGE_GRID" in err
    code, _, _ = run(capsys, "check", "--T", "3", "--grid", "999")
    assert code == EXIT_USAGE
    with pytest.raises(ValueError):
        RunConfig(tol=0)


def test_dumps_canonical_round_trip():
    obj = {"b": [1.0, 0.1, 1e-300, float("nan"), float("inf"), True, None],
           "a": {"z": 2, "y": 1 / 3}, "c": "x"}
    s = dumps(obj)
    assert s.startswith('{"a":{"y":0.33333333333333331,"z":2},"b":[1,0.10000000000000001')
    assert "null,null,true,null" in s
    assert dumps(json.loads(s)) == s


def test_module_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "suffpoly", "gen", "--suffridge", "1", "2"],
                       capture_output=True, text=True, check=True)
    recs = json.loads(r.stdout)
    assert [x["degree"] for x in recs] == [1, 2]
    assert recs[1]["re"] == pytest.approx(0.5, abs=1e-15)
