"""Command-line interface: output schemas, exit codes, round-trips."""

import json

import pytest

from hopfon.cli import main


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def hyper_spec(tmp_path):
    return write(
        tmp_path,
        "hyper.json",
        {"type": "diagonal", "lambda1": [1, 2, 0, 1], "lambda2": [1, 4, 0, 1]},
    )


def test_classify_hyperresonant(tmp_path, capsys):
    code, out = run(capsys, ["classify", "--spec", hyper_spec(tmp_path)])
    assert code == 0
    assert out["classification"] == {"kind": "hyperresonant", "m1": 2, "m2": 1}
    assert out["function_field"]["field"] == "rational"


def test_classify_exceptional(tmp_path, capsys):
    spec = write(
        tmp_path, "exc.json", {"type": "exceptional", "lambda": [1, 2, 0, 1], "m": 3}
    )
    code, out = run(capsys, ["classify", "--spec", spec])
    assert code == 0
    assert out["classification"] == {"kind": "exceptional", "m": 3}


def test_malformed_spec_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "diagonal", "lambda1": [1, 2')
    code = main(["classify", "--spec", str(bad)])
    err = capsys.readouterr().err
    assert code == 2
    assert "line" in err


def test_semantically_invalid_spec_exits_2(tmp_path, capsys):
    spec = write(tmp_path, "nope.json", {"type": "spherical"})
    code = main(["classify", "--spec", spec])
    assert code == 2


def test_structures_generic_n1(tmp_path, capsys):
    spec = write(
        tmp_path,
        "gen.json",
        {"type": "diagonal", "lambda1": [1, 2, 0, 1], "lambda2": [1, 3, 0, 1], "n": 1},
    )
    code, out = run(capsys, ["structures", "--spec", spec])
    assert code == 0
    assert out["count"] == 3


def test_structures_exceptional_below_degree_warns(tmp_path, capsys):
    spec = write(
        tmp_path, "exc2.json", {"type": "exceptional", "lambda": [1, 2, 0, 1], "m": 2}
    )
    code, out = run(capsys, ["structures", "--spec", spec, "--n", "1"])
    assert code == 0
    assert out["count"] == 0
    assert "n < m" in out["warning"]


def test_structures_hyper_with_params_and_verify(tmp_path, capsys):
    spec = write(
        tmp_path,
        "h12.json",
        {"type": "diagonal", "lambda1": [1, 4, 0, 1], "lambda2": [1, 2, 0, 1]},
    )
    code, out = run(
        capsys,
        ["structures", "--spec", spec, "--n", "2", "--params", "2;2,3", "--verify",
         "--samples", "60", "--seed", "5"],
    )
    assert code == 0
    kinds = [s["kind"] for s in out["structures"]]
    assert kinds.count("hyperresonant") == 2
    for s in out["structures"]:
        assert all(r["passed"] for r in s["verification"])


def test_structures_roundtrip_devmaps(tmp_path, capsys):
    from hopfon.devmaps import DevMap

    spec = write(
        tmp_path,
        "h12b.json",
        {
            "type": "diagonal",
            "lambda1": [1, 4, 0, 1],
            "lambda2": [1, 2, 0, 1],
            "n": 2,
            "params": [[[2, 1, 0, 1]]],
        },
    )
    code, out = run(capsys, ["structures", "--spec", spec])
    assert code == 0
    for entry in out["structures"]:
        d = DevMap.from_record(entry["dev"])
        assert d.to_record() == entry["dev"]


def test_cases_output(capsys):
    code, out = run(capsys, ["cases", "--n", "1", "--m1", "1", "--m2", "1"])
    assert code == 0
    assert len(out["rows"]) == 6
    assert out["impossible"] == 2
    assert out["feasible"] == 4


def test_verify_command(tmp_path, capsys):
    spec = write(
        tmp_path,
        "gen2.json",
        {"type": "diagonal", "lambda1": [1, 2, 0, 1], "lambda2": [1, 3, 0, 1]},
    )
    code, out = run(
        capsys,
        ["verify", "--spec", spec, "--n", "1", "--trials", "40", "--samples", "60",
         "--deg-bound", "2"],
    )
    assert code == 0
    assert out["passed"]
    checks = {r["check"] for r in out["reports"]}
    assert {"group_axioms", "equivariance", "immersion", "bounded_completeness"} <= checks


def test_normal_form_command_identity_poly(tmp_path, capsys):
    element = write(
        tmp_path,
        "elt.json",
        {
            "n": 1,
            "g": [[[2, 1, 0, 1], [0, 1, 0, 1]], [[0, 1, 0, 1], [1, 1, 0, 1]]],
            "p": [[3, 1, 0, 1], [5, 1, 0, 1]],
        },
    )
    code, out = run(capsys, ["normal-form", "--element", element])
    assert code == 0
    assert out["unique"]
    assert out["resonance"]["resonant_degrees"] == [0]
    # nonresonant coefficient killed, resonant one rescaled to 1
    assert out["p"][1] == []
    assert out["p"][0] == [[[1, 1, 0, 1], [0, 1, 0, 1]]]


def test_normal_form_jordan(tmp_path, capsys):
    element = write(
        tmp_path,
        "jordan.json",
        {
            "n": 2,
            "g": [[[1, 1, 0, 1], [1, 1, 0, 1]], [[0, 1, 0, 1], [1, 1, 0, 1]]],
            "p": [[1, 1, 0, 1], [2, 1, 0, 1], [4, 1, 0, 1]],
        },
    )
    code, out = run(capsys, ["normal-form", "--element", element])
    assert code == 0
    # unipotent shape: p = Z1^n
    assert out["p"][0] == [] and out["p"][1] == []
    assert out["p"][2] == [[[1, 1, 0, 1], [0, 1, 0, 1]]]


def test_sections_commands(tmp_path, capsys):
    exc = write(
        tmp_path, "exc3.json", {"type": "exceptional", "lambda": [1, 2, 0, 1], "m": 2}
    )
    code, out = run(capsys, ["sections", "--spec", exc, "--jordan", "[5,1,0,1]"])
    assert code == 0
    assert out["variant"] == "jordan_family"
    assert out["closed_form"] == "(z2/a) * (lam/z1)^2 + c, infinity"

    code, out = run(capsys, ["sections", "--spec", exc, "--power", "3"])
    assert code == 0
    assert out["variant"] == "monomial" and out["exponents"] == [3, 0]

    hyper = hyper_spec(tmp_path)
    code, out = run(capsys, ["sections", "--spec", hyper, "--powers", "1,1"])
    assert code == 0
    assert out["variant"] == "monomial_times_rational"

    code, out = run(capsys, ["sections", "--spec", hyper, "--twist", "[1,5,0,1]"])
    assert code == 0
    assert out["variant"] == "zero"


def test_deterministic_output_under_fixed_seed(tmp_path, capsys):
    spec = write(
        tmp_path,
        "h12c.json",
        {"type": "diagonal", "lambda1": [1, 4, 0, 1], "lambda2": [1, 2, 0, 1]},
    )
    argv = ["structures", "--spec", spec, "--n", "2", "--params", "2;2,3",
            "--verify", "--samples", "40", "--seed", "11"]
    first = run(capsys, argv)
    second = run(capsys, argv)
    assert first == second


def test_verify_detects_failure_with_tight_tolerance(tmp_path, capsys):
    spec = write(
        tmp_path,
        "gen3.json",
        {"type": "diagonal", "lambda1": [1, 2, 0, 1], "lambda2": [1, 3, 0, 1]},
    )
    code, out = run(
        capsys,
        ["verify", "--spec", spec, "--n", "1", "--trials", "10", "--samples", "30",
         "--tol", "1e-30"],
    )
    assert code == 1
    assert not out["passed"]
