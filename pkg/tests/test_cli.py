"""CLI behaviour: exit codes, report content, and byte determinism."""

import json
import os
import subprocess
import sys

import pytest

from supercohom.cli import run_command
from supercohom.cohomology import annihilator
from supercohom.superalgebra import adjoint_module
from supercohom.workspace import load

HERE = os.path.dirname(__file__)
FIXDIR = os.path.abspath(os.path.join(HERE, "..", "fixtures"))


def fx(name: str) -> str:
    return os.path.join(FIXDIR, name + ".json")


STRICT_DOC = {
    "field": "rational",
    "algebra": {
        "basis": [["a0", 0], ["a1", 0], ["x0", 1], ["x1", 1]],
        "brackets": {},
    },
    "cochains": {
        "mu1": {
            "arity": 2,
            "parity": 0,
            "coords": {
                "a0,x0|x0": "1",
                "a0,x1|x1": "-1",
                "a1,x0|x0": "-1",
                "a1,x1|x1": "1",
                "x0,x1|a0": "1",
                "x0,x1|a1": "1",
            },
        }
    },
    "deformations": {"d": {"terms": ["bracket", "mu1"]}},
}


@pytest.fixture
def strict_file(tmp_path):
    path = tmp_path / "strict.json"
    path.write_text(json.dumps(STRICT_DOC))
    return str(path)


def run_json(capsys, argv):
    rc = run_command(argv + ["--emit", "json"])
    out = capsys.readouterr().out
    return rc, json.loads(out)


# -- validate ------------------------------------------------------------------


def test_validate_good_file_exits_zero(capsys):
    assert run_command(["validate", fx("fixture_gl11_z2")]) == 0
    out = capsys.readouterr().out
    assert "all checks passed" in out
    assert "action: ok" in out


def test_validate_json_reports_checks(capsys):
    rc, doc = run_json(capsys, ["validate", fx("fixture_super_poincare")])
    assert rc == 0
    assert doc["ok"] is True
    assert doc["field"] == "cyclotomic(4)"
    assert doc["group"] == {"order": 4}


def test_validate_rejects_broken_jacobi(tmp_path, capsys):
    doc = {
        "field": "rational",
        "algebra": {
            "basis": [["a", 0], ["b", 0], ["c", 0]],
            "brackets": {"a,b": {"c": "1"}, "a,c": {"a": "1"}, "b,c": {"b": "1"}},
        },
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert run_command(["validate", str(path)]) == 1
    assert "jacobi" in capsys.readouterr().err


def test_missing_file_is_an_input_error(capsys):
    assert run_command(["validate", "no-such-file.json"]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_malformed_json_is_an_input_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"field": ')
    assert run_command(["validate", str(path)]) == 2
    assert "line" in capsys.readouterr().err


def test_unknown_subcommand_is_an_input_error(capsys):
    assert run_command(["frobnicate", "x.json"]) == 2
    capsys.readouterr()


# -- cohomology ------------------------------------------------------------------


def test_cohomology_degree_zero_matches_annihilator(capsys):
    rc, doc = run_json(capsys, ["cohomology", fx("fixture_gl11_z2"), "--n", "0"])
    assert rc == 0
    ws = load(fx("fixture_gl11_z2"))
    ann = annihilator(ws.algebra, adjoint_module(ws.algebra), ws.rep)
    assert doc["h"][0] == len(ann) == 1


def test_cohomology_table_is_parity_split(capsys):
    assert run_command(["cohomology", fx("fixture_gl11"), "--n", "1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1].split() == ["parity", "cochains", "cocycles", "coboundaries", "H"]
    assert out[2].split() == ["0", "8", "3", "1", "2"]
    assert out[3].split() == ["1", "8", "2", "2", "0"]


def test_cohomology_unknown_module_is_an_input_error(capsys):
    assert run_command(["cohomology", fx("fixture_gl11"), "--n", "0", "--module", "W"]) == 2
    assert "unknown module" in capsys.readouterr().err


# -- mc-check --------------------------------------------------------------------


def test_mc_check_bracket_passes_on_all_shipped_algebras(capsys):
    for name in ("fixture_gl11", "fixture_gl21", "fixture_sl11", "fixture_super_poincare"):
        assert run_command(["mc-check", fx(name)]) == 0, name
    capsys.readouterr()


def test_mc_check_non_structure_candidate_fails(capsys):
    assert run_command(["mc-check", fx("fixture_gl11"), "--candidate", "mu1"]) == 1
    out = capsys.readouterr().out
    assert "[F, F] = 0: NO" in out
    assert "residual at (e11, e12, e12)" in out


# -- deform ----------------------------------------------------------------------


def test_deform_check_reports_order_one_failure(capsys):
    rc = run_command(
        ["deform", "check", fx("fixture_gl11_z2"), "--deformation", "mu_t"]
    )
    assert rc == 1
    out = capsys.readouterr().out
    assert "order 0: ok" in out
    assert "order 1: FAIL (4 triples)" in out
    assert "(e11, e12, e12) -> -2*e11 + -2*e22" in out
    assert "deformation NOT valid" in out


def test_deform_check_strict_passes_on_genuine_deformation(strict_file, capsys):
    assert run_command(["deform", "check", strict_file, "--deformation", "d", "--strict"]) == 0
    out = capsys.readouterr().out
    assert "order 2: ok" in out
    assert "deformation valid" in out


def test_deform_obstruct_solvable_on_genuine_deformation(strict_file, capsys):
    rc, doc = run_json(capsys, ["deform", "obstruct", strict_file, "--deformation", "d"])
    assert rc == 0
    assert doc["solvable"] is True and doc["closed"] is True
    assert doc["obstruction"] == {}


def test_deform_obstruct_refuses_invalid_deformation(capsys):
    rc = run_command(["deform", "obstruct", fx("fixture_gl11_z2"), "--deformation", "mu_t"])
    assert rc == 1
    assert "obstruction undefined" in capsys.readouterr().out


def test_deform_unknown_name_is_an_input_error(capsys):
    assert run_command(["deform", "check", fx("fixture_gl11_z2"), "--deformation", "nope"]) == 2
    capsys.readouterr()


# -- derivations -------------------------------------------------------------------


def test_derivations_counts(capsys):
    assert run_command(["derivations", fx("fixture_gl11")]) == 0
    assert "3 derivations into adjoint, 1 inner" in capsys.readouterr().out
    assert run_command(["derivations", fx("fixture_gl11_z2")]) == 0
    assert "1 invariant derivations into adjoint, 0 inner" in capsys.readouterr().out


# -- extend ------------------------------------------------------------------------


def test_extend_non_cocycle_fails(capsys):
    assert run_command(["extend", fx("fixture_gl11"), "--cocycle", "mu1"]) == 1
    out = capsys.readouterr().out
    assert "2-cocycle: NO" in out


def test_extend_zero_glue_builds_the_split_extension(tmp_path, capsys):
    doc = {
        "field": "rational",
        "algebra": {"basis": [["a", 0]], "brackets": {}},
        "cochains": {"h": {"arity": 2, "parity": 0, "coords": {}}},
    }
    path = tmp_path / "split.json"
    path.write_text(json.dumps(doc))
    assert run_command(["extend", str(path), "--cocycle", "h"]) == 0
    out = capsys.readouterr().out
    assert "2-cocycle: yes" in out
    assert "extension basis: a, a'" in out


def test_extend_classify_finds_the_gl11_class(capsys):
    rc, doc = run_json(capsys, ["extend", "classify", fx("fixture_gl11")])
    assert rc == 0
    assert doc["count"] == 1
    assert len(doc["classes"]) == 1
    rc, doc = run_json(capsys, ["extend", "classify", fx("fixture_gl11_z2")])
    assert rc == 0
    assert doc["count"] == 0


# -- environment and determinism ------------------------------------------------


def test_bad_thread_cap_is_an_input_error(capsys, monkeypatch):
    monkeypatch.setenv("SUPERCOHOM_THREADS", "0")
    assert run_command(["validate", fx("fixture_gl11")]) == 2
    assert "SUPERCOHOM_THREADS" in capsys.readouterr().err
    monkeypatch.setenv("SUPERCOHOM_THREADS", "junk")
    assert run_command(["validate", fx("fixture_gl11")]) == 2
    capsys.readouterr()


def test_positive_thread_cap_is_accepted(capsys, monkeypatch):
    monkeypatch.setenv("SUPERCOHOM_THREADS", "8")
    assert run_command(["validate", fx("fixture_gl11")]) == 0
    capsys.readouterr()


DETERMINISM_COMMANDS = [
    ["validate", fx("fixture_super_poincare")],
    ["cohomology", fx("fixture_gl11_z2"), "--n", "1", "--emit", "json"],
    ["deform", "check", fx("fixture_gl11_z2"), "--deformation", "mu_t"],
    ["extend", "classify", fx("fixture_gl11")],
]


def _run_once(argv, seed, threads):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    if threads is None:
        env.pop("SUPERCOHOM_THREADS", None)
    else:
        env["SUPERCOHOM_THREADS"] = str(threads)
    out = subprocess.run(
        [sys.executable, "-m", "supercohom.cli", *argv],
        capture_output=True,
        env=env,
        cwd=os.path.join(HERE, ".."),
    )
    return out.stdout


def test_output_bytes_identical_across_runs_and_thread_caps():
    for argv in DETERMINISM_COMMANDS:
        first = _run_once(argv, seed=0, threads=None)
        assert first  # every command prints something
        assert _run_once(argv, seed=1, threads=1) == first
        assert _run_once(argv, seed=2, threads=8) == first
