import json

import pytest

from monogenic.cli import main
from monogenic.evalspec import SpecParseError, parse_points, parse_spec
from monogenic.verify import (ERRATA, CheckRecord, Recorder, SuiteConfig, emit_report,
                              exit_status, run_suite)


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def _eval(tmp_path, spec, points):
    s, p, out = _write(tmp_path, "f.spec", spec), _write(tmp_path, "p.txt", points), tmp_path / "o.json"
    assert main(["eval", "--spec", str(s), "--points", str(p), "--out", str(out)]) == 0
    return json.loads(out.read_text())["functions"]


def test_eval_examples(tmp_path):
    (v,) = _eval(tmp_path, "V k=(2) n=1\n", "0 1\n")
    assert v["values"][0][0] == pytest.approx([2 ** -0.5, 0.0])
    (e,) = _eval(tmp_path, "E u=(1)\n", "0, 0\n")
    assert e["values"][0] == [[1.0, 0.0], [0.0, 0.0]]
    (k,) = _eval(tmp_path, "m2_kernel N=4\n", "0.1 0.2\n")
    assert k["values"][0][0][0] > 0


@pytest.mark.parametrize("spec,point", [
    ("B z=(0.5+0.1j,) N=6", "0 0.3"),
    ("m2_coherent z=(0.2j,) t=0.1 N=6  # comment", "0.1 0.3"),
    ("g_wavelet tp=(0.1,) a=(0.2, 0.3)", "0.1 0.2 0.3"),
    ("reduced_wavelet a=(0.2, 0.3)", "0.1 0.2"),
    ("hermite m=(2,)", "0.4"),
    ("gen_kernel y=(0.5,)", "0.4"),
    ("sb_kernel v=(0.1+0.2j,)", "0.3+0.1j"),
])
def test_eval_all_kinds(tmp_path, spec, point):
    (out,) = _eval(tmp_path, spec + "\n", point + "\n")
    assert out["kind"] == spec.split()[0]
    assert len(out["values"]) == 1


@pytest.mark.parametrize("text,line,col", [
    ("V k=(2)\nnope k=1\n", 2, 1),
    ("V k=(2) junk\n", 1, 9),
    ("E u=(1,\n", 1, 5),
    ("\nV n=1\n", 2, 6),
    ("E u=(1) w=2\n", 1, 9),
])
def test_parse_errors_locate(text, line, col):
    with pytest.raises(SpecParseError) as exc:
        parse_spec(text)
    assert (exc.value.line, exc.value.col) == (line, col)


def test_points_parsing():
    pts = parse_points("1 2\n# c\n\n3,4\n1+1j 0\n")
    assert len(pts) == 3 and pts[2][0] == 1 + 1j


def test_eval_usage_errors(tmp_path, capsys):
    s = _write(tmp_path, "f.spec", "V k=(2)\n")
    p = _write(tmp_path, "p.txt", "0 1 2\n")
    assert main(["eval", "--spec", str(s), "--points", str(p)]) == 2
    assert main(["eval", "--spec", str(tmp_path / "missing"), "--points", str(p)]) == 2
    assert main(["eval", "--spec", str(_write(tmp_path, "b", "V k=(\n")), "--points", str(p)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_verify_usage_errors():
    assert main(["verify", "--n", "0"]) == 2
    assert main(["verify", "--suite", "nope"]) == 2
    assert main(["verify", "--format", "xml"]) == 2
    assert main([]) == 2


def test_verify_clifford_json(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--suite", "clifford", "--n", "4", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert set(data) >= {"suite", "config", "checks", "errata"}
    for c in data["checks"]:
        assert set(c) == {"id", "params", "residual", "tol", "pass", "diagnostic", "notes"}
        assert c["pass"] == (c["residual"] is not None and c["residual"] <= c["tol"])


def test_verify_formats(tmp_path):
    cfg = SuiteConfig(suite="clifford", n=2)
    recs = run_suite(cfg)
    csv_text = emit_report(cfg, recs, "csv")
    assert csv_text.splitlines()[0] == "id,params,residual,tol,pass,diagnostic,notes"
    text = emit_report(cfg, recs, "text")
    assert text.count("printed:") == len(ERRATA) == 7


def test_empty_report_and_exit_codes():
    cfg = SuiteConfig()
    data = json.loads(emit_report(cfg, []))
    assert data["checks"] == [] and len(data["errata"]) == 7
    assert exit_status([]) == 0
    rec = Recorder(cfg)
    rec.add("diag", 1.0, 0.1, diagnostic=True)
    assert exit_status(rec.records) == 0
    rec.add("hard", 1.0, 0.1)
    assert exit_status(rec.records) == 1


def test_non_finite_residual_fails():
    rec = Recorder(SuiteConfig())
    r = rec.add("x", float("nan"), 1.0)
    assert r.residual is None and not r.passed


def test_tol_scale_applies():
    rec = Recorder(SuiteConfig(tol_scale=10.0))
    assert rec.add("x", 5.0, 1.0).passed


def test_diagnostic_failure_warns(capsys):
    assert main(["verify", "--suite", "m2", "--n", "1", "--degree", "4", "--format", "csv"]) == 0
    assert "warning" in capsys.readouterr().err
