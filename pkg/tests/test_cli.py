import io
import json

import pytest

from meanbounds import GeneratorKind
from meanbounds import divergence as divergence_mod
from meanbounds.cli import main

GOLDEN = {"priors": [0.5, 0.5], "conditionals": [[0.8, 0.2], [0.2, 0.8]]}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def golden_file(tmp_path):
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(GOLDEN), encoding="utf-8")
    return str(path)


def test_means_table():
    code, out, _ = run("means", "4", "1")
    assert code == 0
    assert "2.91547595" in out
    rows = [line.split() for line in out.splitlines()]
    names = [r[0] for r in rows if len(r) == 2 and r[0] not in ("mean", "difference")
             and not r[0].startswith("-")]
    assert names[:7] == ["H", "G", "N1", "N3", "N2", "A", "S"]
    assert len(names) == 18


def test_means_equal_arguments_csv():
    code, out, _ = run("means", "1", "1", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "mean,value"
    assert all(line.endswith(",1.0") for line in lines[1:8])
    assert lines[9] == "difference,value"
    assert all(line.endswith(",0.0") for line in lines[10:])


@pytest.mark.parametrize("argv,name", [
    (("means", "-1", "2"), "argument a"),
    (("means", "2", "0"), "argument b"),
    (("means", "x", "2"), "argument a"),
])
def test_means_bad_input(argv, name):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""
    assert name in err


def test_usage_errors():
    assert run()[0] == 2
    assert run("bogus")[0] == 2
    assert run("means", "1")[0] == 2
    assert run("verify", "--samples", "x")[0] == 2
    assert run("verify", "--unknown")[0] == 2
    assert run("verify", "--samples", "0")[0] == 2


def test_bounds_golden(golden_file):
    code, out, _ = run("bounds", "--problem", golden_file, "--kinds", "AG,AH,SA", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "kind,divergence,coefficient,bound,exact_error,slack"
    rows = {line.split(",")[0]: [float(v) for v in line.split(",")[1:]] for line in lines[1:]}
    assert rows["AG"][2] == pytest.approx(0.4, abs=1e-12)
    assert rows["AG"][3] == pytest.approx(0.2, abs=1e-12)
    assert rows["AH"][2] == pytest.approx(0.32, abs=1e-12)
    assert rows["SA"][2] == pytest.approx(0.299390, abs=1e-6)


def test_bounds_all_kinds_and_chained(golden_file):
    code, out, _ = run("bounds", "--problem", golden_file, "--kinds", "all", "--chained",
                       "--format", "csv")
    assert code == 0
    sections = out.strip().split("\n\n")
    assert len(sections) == 3
    bound_rows = sections[0].splitlines()[1:]
    assert len(bound_rows) == 11
    assert all(float(r.split(",")[-1]) >= 0 for r in bound_rows)
    assert len(sections[1].splitlines()) == 1 + 8
    sharp = sections[2].splitlines()
    assert sharp[0].endswith("sharper")
    assert all(r.endswith(",true") for r in sharp[1:])


def test_bounds_degenerate_file(tmp_path):
    path = tmp_path / "same.json"
    path.write_text(json.dumps({"priors": [0.5, 0.5],
                                "conditionals": [[0.3, 0.7], [0.3, 0.7]]}), encoding="utf-8")
    code, out, _ = run("bounds", "--problem", str(path), "--format", "csv")
    assert code == 0
    assert all(line.split(",")[3] == "0.5" for line in out.splitlines()[1:])


def test_bounds_bad_files(tmp_path):
    code, _, err = run("bounds", "--problem", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"priors": [0.5, 0.5], "conditionals": [[0.8, 0.3], [0.2, 0.8]]}),
                   encoding="utf-8")
    code, _, err = run("bounds", "--problem", str(bad))
    assert code == 2 and "conditionals[0]" in err


def test_bounds_unknown_kind(golden_file):
    code, _, err = run("bounds", "--problem", golden_file, "--kinds", "N2N3")
    assert code == 2 and "unknown kind" in err


def test_bounds_published_mode(golden_file):
    _, normal, _ = run("bounds", "--problem", golden_file, "--kinds", "N2N1", "--format", "csv")
    _, printed, _ = run("bounds", "--problem", golden_file, "--kinds", "N2N1", "--published",
                        "--format", "csv")
    assert float(normal.splitlines()[1].split(",")[2]) == pytest.approx(4 / (2 ** 0.5 - 1))
    assert float(printed.splitlines()[1].split(",")[2]) == pytest.approx(4 / (2 * 2 ** 0.5 - 1))


def test_bounds_exit_1_on_invalid_bound(golden_file, monkeypatch):
    monkeypatch.setitem(divergence_mod.F_INFINITY, GeneratorKind.AG, 0.1)
    code, _, err = run("bounds", "--problem", golden_file, "--kinds", "AG")
    assert code == 1
    assert "below the exact error" in err


def test_divergence_command():
    code, out, _ = run("divergence", "1,0", "0,1", "--kinds", "AG", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "AG,1.0"
    assert run("divergence", "0.5,0.5", "1,0,0")[0] == 2
    assert run("divergence", "0.5,0.6", "0.5,0.5")[0] == 2


def test_verify_smoke_and_determinism():
    code1, out1, _ = run("verify", "--samples", "1")
    assert code1 == 0
    args = ("verify", "--samples", "500", "--seed", "3", "--alphabet-sizes", "2,5",
            "--format", "json")
    code2, out2, _ = run(*args)
    code3, out3, _ = run(*args)
    assert code2 == code3 == 0
    assert out2 == out3
    doc = json.loads(out2)
    assert doc["config"]["alphabet_sizes"] == [2, 5]
    erratum = [c for c in doc["checks"] if c["status"] == "erratum"]
    assert [c["check_name"] for c in erratum] == ["constants N2N1"]


def test_verify_negative_control(monkeypatch):
    monkeypatch.setitem(divergence_mod.F_INFINITY, GeneratorKind.SH, 0.5)
    code, out, _ = run("verify", "--samples", "200")
    assert code == 1
    assert "FAIL" in out


def test_report_command(golden_file):
    code, out, _ = run("report", "--problem", golden_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["bayes_error"] == pytest.approx(0.2)
    assert len(doc["bounds"]) == 11
    assert len(doc["chained"]) == 8
    assert all(s["sharper"] for s in doc["sharpness"])
    assert "N2N1" in doc["errata"]
