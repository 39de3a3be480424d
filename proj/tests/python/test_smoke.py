import json
import os
from pathlib import Path

import jsonschema
import pytest

import hornpre

DATA = Path(os.environ.get("HORNPRE_DATA_DIR", Path(__file__).parents[2] / "data"))
DOCS = Path(os.environ.get("HORNPRE_DOCS_DIR", Path(__file__).parents[2] / "docs"))


def load(name):
    return hornpre.parse((DATA / name).read_text())


def test_parse_and_print_round_trip():
    p = load("fig1.chc")
    assert p.init_arity == 2
    assert p.num_clauses == 5
    assert {"init", "wh", "error", "exit0"} <= p.predicates
    again = hornpre.parse(str(p))
    assert str(again) == str(p)


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        hornpre.parse("init(A).\nerror :- A<, init(A).\n")


def test_running_example_one_shot():
    r = hornpre.infer(load("fig1.chc"), trseq=["cs,pe"])
    assert r["classification"] == "optimal"
    assert r["iterations"] == 1
    assert r["psi_safe"] == "(A>=1, A-B=<0) ; (A=<0, B>=0)"


def test_nonterm_and_check():
    r = hornpre.infer(load("fig5.chc"), check=True)
    assert r["psi_nonterm"] == "(A>=0, A=<10)"
    assert r["check"]["safe_violations"] == []
    assert r["check"]["unsafe_violations"] == []


def test_result_matches_schema():
    schema = json.loads((DOCS / "result.schema.json").read_text())
    jsonschema.validate(hornpre.infer(load("double_step.chc"), check=True), schema)
    for name in ("fig1_cs_pe.json", "fig5_check.json"):
        jsonschema.validate(json.loads((DOCS / "golden" / name).read_text()), schema)


def test_bad_options():
    p = load("fig1.chc")
    with pytest.raises(ValueError):
        hornpre.infer(p, trseq=["cs,xx"])
    with pytest.raises(ValueError):
        hornpre.infer(p, pool="nope")


def test_transforms_and_np():
    p = hornpre.parse("init(A,B) :- A>=1, B=<2.\nerror :- A>B, init(A,B).\n")
    assert hornpre.np_extract(p) == "(A>=1, B=<2)"
    for t in (hornpre.partial_evaluate(p, "error"), hornpre.constraint_specialise(p, "error")):
        assert isinstance(t, hornpre.Program)
    assert "init" in hornpre.analyze(p)


def test_oracle():
    fig1 = load("fig1.chc")
    assert hornpre.derivable(fig1, "error", 4, [1, 0]) == "derivable"
    assert hornpre.derivable(fig1, "error", 4, [1, 1]) == "not_within_bound"
    with pytest.raises(ValueError):
        hornpre.derivable(fig1, "error", 4, [1])


def test_run_main():
    code, out, err = hornpre.run_main([str(DATA / "fig1.chc"), "--format", "json"])
    assert code == 0, err
    assert json.loads(out)["format"] == "hornpre-result"
    code, _, _ = hornpre.run_main([str(DATA / "missing.chc")])
    assert code == 1
