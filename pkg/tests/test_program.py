import re

import pytest
from hypothesis import given, settings, strategies as st

from algograph import corpus
from algograph.errors import ConventionViolation, UnknownInstruction
from algograph.graph import to_dot
from algograph.model import Tape, parse_tape, tm_model
from algograph.program import (
    MachineState,
    OutOfBudget,
    Stuck,
    Terminated,
    check_local_determinism,
    make_program,
    replay,
    run,
    run_deterministic,
    step,
)
from algograph.glueing import random_program
from algograph.representation import delta_bool, tm_not

from conftest import tapes

TM = tm_model()


def test_terminal_has_no_successors():
    p = make_program([("i", "t", "write_1")])
    assert step(TM, p, MachineState(Tape(), "t")) == []


def test_edge_out_of_terminal_rejected():
    with pytest.raises(ConventionViolation):
        make_program([("i", "t", "right"), ("t", "i", "left")])


def test_guards_select_one_successor():
    p = make_program([("i", "a", "read_0"), ("i", "b", "read_1"), ("a", "t", "right"), ("b", "t", "right")])
    succ = step(TM, p, MachineState(parse_tape("1"), "i"))
    assert [(i, s.control) for i, s in succ] == [(1, "b")]


def test_two_writes_two_successors():
    p = make_program([("i", "a", "write_1"), ("i", "b", "write_1"), ("a", "t", "right"), ("b", "t", "right")])
    assert len(step(TM, p, MachineState(Tape(), "i"))) == 2


def test_single_write_terminates():
    tr = run(TM, make_program([("i", "t", "write_1")]), Tape(), 10)
    assert tr.outcome == Terminated(parse_tape("1"), 1)


def test_self_loop_runs_out_of_budget():
    p = make_program([("i", "i", "right")], states=("i", "t"))
    assert isinstance(run(TM, p, Tape(), 100).outcome, OutOfBudget)


def test_stuck():
    p = make_program([("i", "t", "read_1")])
    out = run(TM, p, parse_tape("0"), 10).outcome
    assert out == Stuck(MachineState(parse_tape("0"), "i"))


def test_tm_not_on_zero():
    tr = run(TM, tm_not(), delta_bool()(0), 100)
    assert isinstance(tr.outcome, Terminated)
    assert tr.outcome.configuration == delta_bool()(1)
    assert tr.outcome.steps <= 16


def test_unknown_label_rejected():
    with pytest.raises(UnknownInstruction):
        run(TM, make_program([("i", "t", "fly")]), Tape())


def test_shortest_branch_wins():
    # a long branch listed first, a short one second
    p = make_program([("i", "a", "right"), ("a", "t", "right"), ("i", "t", "left")])
    tr = run(TM, p, Tape(), 10)
    assert tr.outcome.steps == 1 and tr.edges == (2,)


def test_tie_goes_to_first_edge():
    p = make_program([("i", "t", "write_0"), ("i", "t", "write_1")])
    tr = run(TM, p, Tape(), 10)
    assert tr.edges == (0,)


@pytest.mark.parametrize(
    "edges, clean",
    [
        ([("i", "t", "read_0"), ("i", "t", "read_1"), ("i", "t", "read_*")], True),
        ([("i", "t", "write_0"), ("i", "t", "write_1")], False),
        ([], True),
    ],
)
def test_local_determinism(edges, clean):
    p = make_program(edges, states=("i", "t"))
    report = check_local_determinism(TM, p)
    assert report.clean == clean
    if not clean:
        assert "i" in report.flagged


def _dot_counts(text):
    nodes = re.findall(r'^\s+"[^"]*" \[shape=', text, re.M)
    edges = re.findall(r'^\s+"[^"]*" -> "[^"]*" \[label=', text, re.M)
    return len(nodes), len(edges)


def test_dot_single_edge():
    text = to_dot(make_program([("i", "t", "write_1")]))
    assert _dot_counts(text) == (2, 1)
    assert '"t" [shape=doublecircle]' in text
    assert '__start -> "i"' in text


def test_dot_gcd_A():
    # graph A: a loop on the inner state and the exit edge
    text = to_dot(corpus.gcd_A())
    n_nodes, n_edges = _dot_counts(text)
    g = corpus.gcd_A().syntax
    assert (n_nodes, n_edges) == (len(g.states), len(g.edges))


def test_dot_escapes_labels():
    text = to_dot(make_program([("i", "t", 'say "hi" \\')], model="x"))
    assert r'[label="say \"hi\" \\"]' in text


INSTR = ["right", "left", "write_0", "write_1", "read_0", "read_1", "read_*"]


@st.composite
def programs(draw):
    import random

    return random_program(random.Random(draw(st.integers(0, 10**9))), INSTR, max_states=5, max_edges=7)


@settings(max_examples=150)
@given(programs(), tapes(max_window=6))
def test_runs_replay(p, t):
    tr = run(TM, p, t, 8)
    assert replay(TM, p, tr)
    # terminal absorption: only the last state may be terminal
    assert all(s.control != p.terminal for s in tr.states[:-1])
    if isinstance(tr.outcome, Terminated):
        assert tr.final.control == p.terminal


@settings(max_examples=150)
@given(programs(), tapes(max_window=6))
def test_budget_monotone(p, t):
    tr = run(TM, p, t, 8)
    if isinstance(tr.outcome, Terminated):
        n = tr.outcome.steps
        for b in (n, n + 1, n + 17):
            assert run(TM, p, t, b).outcome == tr.outcome


@settings(max_examples=150)
@given(programs(), tapes(max_window=6))
def test_deterministic_programs_agree(p, t):
    if not check_local_determinism(TM, p).clean:
        return
    a, b = run(TM, p, t, 8), run_deterministic(TM, p, t, 8)
    assert type(a.outcome) is type(b.outcome)
    if isinstance(a.outcome, (Terminated, Stuck)):
        assert a.outcome == b.outcome
        assert a.edges == b.edges
