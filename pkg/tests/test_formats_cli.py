import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from algograph import corpus, formats
from algograph.cli import Workspace, main
from algograph.glueing import glue, random_program
from algograph.isomorphism import is_isomorphic
from algograph.logic import parse_theory
from algograph.representation import builtin_tm_programs
from algograph.structures import BUILTIN_STRUCTURES

INSTR = ["right", "left", "write_0", "write_1", "read_0", "read_1"]


def _structure(name):
    return BUILTIN_STRUCTURES[name]()


def _theories(ref):
    return corpus.euclidean_theory()


@settings(max_examples=100)
@given(st.integers(0, 10**9))
def test_program_round_trip(seed):
    p = random_program(random.Random(seed), INSTR)
    text = formats.dumps(formats.program_to_dict(p))
    q = formats.program_from_dict(json.loads(text))
    assert q == p
    assert formats.dumps(formats.program_to_dict(q)) == text


def test_program_key_order():
    d = formats.program_to_dict(builtin_tm_programs()["tm_not"])
    assert list(d) == ["model", "states", "initial", "terminal", "edges"]
    assert list(d["edges"][0]) == ["from", "to", "label"]


@pytest.mark.parametrize(
    "make", [corpus.gcd_B, corpus.gcd_A, corpus.mergesort, corpus.merge, corpus.subtraction_remainder, corpus.gcd_A_logical]
)
def test_algorithm_round_trip(make):
    alg = make()
    d = formats.algorithm_to_dict(alg)
    again = formats.algorithm_from_dict(json.loads(formats.dumps(d)), _structure, _theories)
    assert formats.algorithm_to_dict(again) == d


def test_round_tripped_algorithm_still_runs():
    from algograph.algorithms import abstract_run

    d = json.loads(formats.dumps(formats.algorithm_to_dict(corpus.gcd_B())))
    alg = formats.algorithm_from_dict(d, _structure, _theories)
    assert abstract_run(alg, {"x": 84, "y": 36}).outcome.configuration["x"] == 12


def test_theory_round_trip():
    t = corpus.euclidean_theory()
    again = formats.theory_from_text(formats.theory_to_text(t), t.name)
    assert formats.theory_to_text(again) == formats.theory_to_text(t)
    assert parse_theory(formats.theory_to_text(t)).sentences[0].name == "add-assoc"


def test_malformed_program():
    from algograph.errors import ParseError

    with pytest.raises(ParseError):
        formats.program_from_dict({"states": ["i"]})


# ---------------------------------------------------------------------------
# command line


def cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_tm_not(capsys):
    code, out, _ = cli(capsys, "run", "tm_not", "--input", "^0")
    assert code == 0
    assert "Terminated" in out and "final: 1" in out


def test_run_budget_zero(capsys):
    code, out, _ = cli(capsys, "run", "tm_not", "--input", "^0", "--budget", "0")
    assert code == 3 and "OutOfBudget" in out


def test_run_stuck(capsys):
    code, out, _ = cli(capsys, "run", "tm_read1", "--input", "0")
    assert code == 2 and "Stuck" in out


def test_run_unknown_name(capsys):
    code, _, err = cli(capsys, "run", "no_such_program")
    assert code == 1 and "no_such_program" in err


def test_bad_usage(capsys):
    assert cli(capsys, "frobnicate")[0] == 1
    assert cli(capsys, "run")[0] == 1


def test_run_semantic_json(capsys):
    code, out, _ = cli(capsys, "run", "gcd_B", "--input", "{x: 12, y: 8}", "--json")
    d = json.loads(out)
    assert code == 0 and d["outcome"] == "Terminated" and "x: 4" in d["final"]


def test_run_dot(capsys, tmp_path):
    dot = tmp_path / "v.dot"
    code, _, _ = cli(capsys, "run", "tm_not", "--input", "1", "--dot", str(dot))
    assert code == 0 and dot.read_text().startswith("digraph")


def _write_labelling(tmp_path):
    phi = corpus.gcd_component_programs()
    files = {}
    for k, (lab, p) in enumerate(phi.items()):
        name = f"c{k}.json"
        (tmp_path / name).write_text(formats.dumps(formats.program_to_dict(p)))
        files[lab] = name
    lab_path = tmp_path / "phi.json"
    lab_path.write_text(formats.dumps(formats.labelling_to_dict("programs", files, "naturals[x,y,z]")))
    alg_path = tmp_path / "A.json"
    alg_path.write_text(formats.dumps(formats.algorithm_to_dict(corpus.gcd_A_syntax())))
    return alg_path, lab_path


def test_glue_and_check_files(capsys, tmp_path):
    alg_path, lab_path = _write_labelling(tmp_path)
    out_path = tmp_path / "P.json"
    assert cli(capsys, "glue", "--algorithm", str(alg_path), "--labelling", str(lab_path), "--out", str(out_path))[0] == 0
    text = out_path.read_text()
    P = formats.program_from_dict(json.loads(text))
    assert formats.dumps(formats.program_to_dict(P)) == text
    assert is_isomorphic(P, glue(corpus.gcd_A_syntax(), corpus.gcd_component_programs()))
    code, out, _ = cli(capsys, "check-implements", "--program", str(out_path), "--algorithm", str(alg_path),
                       "--labelling", str(lab_path))
    assert code == 0 and "implements: yes" in out
    code, out, _ = cli(capsys, "check-implements", "--program", "tm_not", "--algorithm", str(alg_path),
                       "--labelling", str(lab_path))
    assert code == 4
    code, out, _ = cli(capsys, "succinct-check", "--program", str(out_path), "--algorithm", str(alg_path),
                       "--labelling", str(lab_path), "--f", "n/2")
    assert code == 0 and "f-succinct: yes" in out
    code, out, _ = cli(capsys, "succinct-find", "--program", "gcd_glued", "--library", str(lab_path), "--f", "n/2",
                       "--out", str(tmp_path / "found.json"))
    assert code == 0 and "size 8" in out
    found = formats.algorithm_from_dict(json.loads((tmp_path / "found.json").read_text()), _structure, _theories)
    assert len(found.edges) == 4


def test_glued_program_runs_from_file(capsys, tmp_path):
    alg_path, lab_path = _write_labelling(tmp_path)
    out_path = tmp_path / "P.json"
    cli(capsys, "glue", "--algorithm", str(alg_path), "--labelling", str(lab_path), "--out", str(out_path))
    code, out, _ = cli(capsys, "run", str(out_path), "--input", "{x: 12, y: 8, z: 0}")
    assert code == 0 and "x: 4" in out


def test_verify_impl(capsys, tmp_path):
    assert cli(capsys, "verify-impl")[0] == 0
    (tmp_path / "id.json").write_text(formats.dumps(formats.program_to_dict(builtin_tm_programs()["tm_identity"])))
    (tmp_path / "m.json").write_text(formats.dumps(formats.manifest_to_dict("bool", "booleans", {"not": "id.json"})))
    code, out, _ = cli(capsys, "verify-impl", "--manifest", str(tmp_path / "m.json"))
    assert code == 4 and "FAIL" in out


def test_check_model_and_instantiate(capsys, tmp_path):
    code, out, _ = cli(capsys, "check-model", "--structure", "naturals", "--theory", "euclidean", "--samples", "100")
    assert code == 0
    out_path = tmp_path / "g.json"
    code, _, _ = cli(capsys, "instantiate", "--algorithm", "gcd_A", "--structure", "naturals", "--out", str(out_path))
    assert code == 0
    code, out, _ = cli(capsys, "run", str(out_path), "--input", "{x: 12, y: 8}")
    assert code == 0 and "x: 4" in out
    (tmp_path / "bad.json").write_text(json.dumps(dict(corpus.NAT_BINDING, add="mult")))
    code, out, _ = cli(capsys, "instantiate", "--algorithm", "gcd_A", "--structure", "naturals",
                       "--binding", str(tmp_path / "bad.json"))
    assert code == 4 and "FAIL" in out


def test_theory_file(capsys, tmp_path):
    path = tmp_path / "comm.theory"
    path.write_text("(forall (a b) (= (add a b) (add b a)))\n")
    (tmp_path / "b.json").write_text(json.dumps({"add": "sub"}))
    code, out, _ = cli(capsys, "check-model", "--structure", "naturals", "--theory", str(path),
                       "--binding", str(tmp_path / "b.json"))
    assert code == 4


def test_unfold(capsys):
    code, out, _ = cli(capsys, "unfold", "--algorithm", "mergesort", "--label", "sort", "--depth", "3",
                       "--input", "{x: [4, 2, 3, 1]}")
    assert code == 0 and "x: [1, 2, 3, 4]" in out
    code, out, _ = cli(capsys, "unfold", "--algorithm", "mergesort", "--label", "sort", "--depth", "2")
    assert code == 0 and out.startswith("depth 2:")


def test_dot(capsys):
    code, out, _ = cli(capsys, "dot", "gcd_A_syntax")
    assert code == 0 and "doublecircle" in out


def test_census_bytes(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        assert cli(capsys, "census", "--n", "5", "--f", "n-1", "--out", str(p), "--seed", "3")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("n,programs_enumerated,succinct_count,fraction\n")


def test_list(capsys):
    code, out, _ = cli(capsys, "list")
    assert code == 0 and "gcd_B" in out


@pytest.mark.parametrize("name", ["booleans", "gcd", "mergesort", "census"])
def test_demos(capsys, name):
    code, out, _ = cli(capsys, "demo", name)
    assert code == 0 and out


def test_demo_gcd_content(capsys):
    _, out, _ = cli(capsys, "demo", "gcd")
    assert "x = 4" in out and "True" in out


def test_workspace_names_unique():
    ws = Workspace()
    names = list(ws.programs) + list(ws.algorithms)
    assert len(names) == len(set(names))
