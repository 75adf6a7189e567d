import json
import subprocess
import sys

import pytest

from wonderful import cli
from wonderful.qpoly import ONE


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_poset_text_and_dot(capsys):
    code, out = run(capsys, "poset", "--kind", "A", "--n", "4")
    assert code == 0 and "(2,2) < (4)" in out
    code, out = run(capsys, "poset", "--kind", "A", "--n", "4", "--output", "dot")
    assert out.startswith('digraph "A4"') and '"(2,2)" -> "(4)";' in out


def test_poset_json(capsys):
    code, out = run(capsys, "poset", "--kind", "B", "--n", "3", "--output", "json")
    data = json.loads(out)
    assert code == 0 and data["kind"] == "B"
    assert set(data["elements"]) == {"(1|2)", "(3|0)"}


@pytest.mark.parametrize("kind,n,count", [("A", 4, 2), ("A", 5, 3), ("B", 3, 2)])
def test_classify(capsys, kind, n, count):
    code, out = run(capsys, "classify", "--kind", kind, "--n", str(n))
    assert code == 0 and out.splitlines()[0] == f"{count} invariant building sets"


def test_classify_exhaustive_json(capsys):
    code, out = run(capsys, "classify", "--kind", "A", "--n", "4", "--exhaustive", "--output", "json")
    data = json.loads(out)
    assert code == 0 and data["agree"] and data["count"] == data["exhaustive_count"] == 2


def test_poincare(capsys):
    code, out = run(capsys, "poincare", "--kind", "A", "--n", "5", "--s", "1")
    assert code == 0 and out.strip() == "q^3+16*q^2+16*q+1"
    code, out = run(capsys, "poincare", "--kind", "D", "--n", "4", "--s", "1", "--oracle")
    assert code == 0 and "oracle: agrees" in out


def test_poincare_json(capsys):
    code, out = run(capsys, "poincare", "--kind", "boolean", "--n", "4", "--s", "2",
                    "--oracle", "--output", "json")
    data = json.loads(out)
    assert code == 0 and data["agree"] and data["kind"] == "Boolean"
    assert data["poincare"] == data["oracle"]


def test_poincare_mismatch_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli.fm, "poincare", lambda *a, **k: ONE)
    code, out = run(capsys, "poincare", "--kind", "A", "--n", "4", "--oracle")
    assert code == cli.EXIT_MISMATCH and "DISAGREES" in out


def test_oracle_monomials(capsys):
    code, out = run(capsys, "oracle", "--kind", "A", "--n", "4", "--monomials")
    lines = out.splitlines()
    assert code == 0 and lines[1] == "q^2+8*q+1"
    assert "1 : degree 0" in lines
    assert "c_{{1,2,3,4}}^2 : degree 2" in lines
    assert len(lines) == 2 + 10


def test_oracle_form(capsys):
    code, out = run(capsys, "oracle", "--kind", "A", "--n", "4", "--form", "(4)")
    # the smallest form generates the minimal family
    assert code == 0 and out.splitlines() == ["11 members", "q^2+5*q+1"]


def test_series(capsys):
    code, out = run(capsys, "series", "--kind", "A", "--order", "4", "--n", "4")
    assert code == 0
    assert [line.split() for line in out.splitlines()] == [
        ["4", "1", "q^2+q"], ["4", "2", "4*q"], ["4", "4", "1"]]


def test_series_reading(capsys):
    code, out = run(capsys, "series", "--kind", "D", "--order", "4", "--n", "4",
                    "--reading", "lambda", "--output", "json")
    rows = json.loads(out)
    assert code == 0 and {r["j"] for r in rows} == {1, 2, 4}


def test_euler(capsys):
    code, out = run(capsys, "euler", "--kind", "A", "--n", "6")
    assert code == 0 and "closed: 360" in out and out.strip().endswith("agree")
    code, out = run(capsys, "euler", "--kind", "B", "--n", "5", "--output", "json")
    assert json.loads(out)["values"]["permutohedron"] == 1920


def test_verify_quick(capsys):
    code, out = run(capsys, "verify")
    assert code == 0 and "FAIL" not in out
    assert out.strip().splitlines()[-1].endswith("checks passed")


@pytest.mark.parametrize("argv", [
    ["poincare", "--kind", "C", "--n", "3"],
    ["poincare", "--kind", "A", "--n", "0"],
    ["poincare", "--kind", "A", "--n", "4", "--form", "(3"],
    ["poincare", "--kind", "A", "--n", "4", "--form", "(3,2)"],
    ["euler", "--kind", "D", "--n", "4"],
    ["series", "--kind", "boolean"],
    ["series", "--kind", "A", "--order", "0"],
    ["classify", "--kind", "A"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == cli.EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wonderful", "poincare", "--kind", "B", "--n", "3"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "q^2+14*q+1"
