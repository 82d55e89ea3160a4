"""CLI contract: exit codes, human output shape, JSON mode."""

import json

import pytest

from agentmc.cli import main

from conftest import FIXTURES

M1 = str(FIXTURES / "m1.cgs")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_true_exits_zero(capsys):
    code, out, err = run(capsys, "check", M1, "--formula", "<A0,A1> F goal")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "overall: true"
    assert "S0: true" in lines
    assert any(l.startswith("method: ") for l in lines)
    assert any(l.startswith("fallback: ") for l in lines)
    assert any(l.startswith("elapsed: ") for l in lines)
    assert err == ""


def test_check_false_exits_one(capsys):
    code, out, _ = run(capsys, "check", M1, "--formula", "<A0> F goal")
    assert code == 1
    assert out.splitlines()[0] == "overall: false"


def test_check_unknown_atom_exits_two(capsys):
    code, out, err = run(capsys, "check", M1, "--formula", "<A0,A1> F missing_atom")
    assert code == 2
    assert out == ""
    assert "missing_atom" in err


def test_check_parse_error_exits_two(capsys):
    code, _, err = run(capsys, "check", M1, "--formula", "<A0,A1> F (")
    assert code == 2
    assert "line 1" in err or "error" in err


def test_check_unreadable_model_exits_two(capsys):
    code, _, err = run(capsys, "check", "/nonexistent/path.cgs", "--formula", "E F goal")
    assert code == 2
    assert err


def test_check_missing_formula_is_usage_error(capsys):
    code, _, _ = run(capsys, "check", M1)
    assert code == 2


def test_check_json_schema(capsys):
    code, out, _ = run(capsys, "check", M1, "--formula", "<A0,A1> F goal", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["overall"] is True
    assert payload["per_initial"] == {"S0": True}
    assert payload["method"] == "Explicit"
    assert payload["trace"]["fallback_applied"] is False
    assert payload["witness"]["coalition"] == ["A0", "A1"]

    code, out, _ = run(capsys, "check", M1, "--formula", "<A1> F goal", "--json")
    assert code == 1
    negative = json.loads(out)
    assert negative["overall"] is False
    assert set(negative) == set(payload)


def test_check_formula_file(tmp_path, capsys):
    path = tmp_path / "f.txt"
    path.write_text("<A0,A1> F goal")
    code, out, _ = run(capsys, "check", M1, "--formula-file", str(path))
    assert code == 0
    assert out.startswith("overall: true")


def test_check_policy_flags(capsys):
    code, out, _ = run(
        capsys, "check", M1, "--formula", "E F goal",
        "--explicit-max", "2", "--implicit-max", "3", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["trace"]["preferred_method"] == "Abstract"
    assert payload["trace"]["fallback_applied"] is True


def test_method_explicit_override(capsys):
    code, out, _ = run(
        capsys, "check", M1, "--formula", "E F goal",
        "--method", "explicit", "--explicit-max", "2", "--implicit-max", "3",
    )
    assert code == 0
    assert "method: Explicit" in out


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", M1)
    assert code == 0
    assert out.strip() == "OK"


def test_validate_violations(tmp_path, capsys):
    bad = tmp_path / "bad.cgs"
    bad.write_text(
        "ModelType: CGS\nAgents: A0\nStates: S0 S1\nInitial: S0\nAtoms:\n"
        "Actions A0: a\nTransition: S0 a -> S1\n"
    )
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 2
    assert "totality" in out

    code, out, _ = run(capsys, "validate", str(bad), "--json")
    assert code == 2
    payload = json.loads(out)
    assert payload["ok"] is False
    assert any(v["invariant"] == "totality" for v in payload["violations"])


def test_validate_json_ok(capsys):
    code, out, _ = run(capsys, "validate", M1, "--json")
    assert code == 0
    assert json.loads(out) == {"ok": True, "violations": []}


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", M1, "--formula", "E F goal")
    assert code == 0
    assert out.strip() == "model: CGS, logic: CTL"

    code, out, _ = run(capsys, "classify", M1, "--formula", "<A0> F goal")
    assert out.strip() == "model: CGS, logic: ATL"

    code, out, _ = run(capsys, "classify", M1)
    assert code == 0
    assert out.strip() == "model: CGS"


def test_graph_stdout_and_file(tmp_path, capsys):
    code, out, _ = run(capsys, "graph", M1)
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("->") == 10

    target = tmp_path / "m1.dot"
    code, out, _ = run(capsys, "graph", M1, "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().count("->") == 10


def test_validate_rejects_formula_flag(capsys):
    code, _, _ = run(capsys, "validate", M1, "--formula", "E F goal")
    assert code == 2


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0
