import itertools
import random
from dataclasses import replace

from hypothesis import given, settings, strategies as st

from algograph import corpus
from algograph.glueing import random_program
from algograph.isomorphism import canonical_form, graph_isomorphic, is_isomorphic
from algograph.program import make_program

INSTR = ["right", "left", "write_1"]


def _shuffled(p, rng):
    names = list(p.states)
    rng.shuffle(names)
    ren = {s: f"n{k}" for k, s in enumerate(names)}
    q = p.renamed(ren)
    edges = list(q.edges)
    rng.shuffle(edges)
    return replace(q, states=tuple(sorted(q.states)), edges=tuple(edges)), ren


def _is_witness(w, g1, g2):
    if w is None or w[g1.initial] != g2.initial or w[g1.terminal] != g2.terminal:
        return False
    mapped = sorted((w[e.source], w[e.target], e.label) for e in g1.edges)
    return mapped == sorted((e.source, e.target, e.label) for e in g2.edges)


def test_self_identity():
    B = corpus.gcd_B().syntax
    assert graph_isomorphic(B, B) == {s: s for s in B.states}


def test_permuted_names():
    B = corpus.gcd_B().syntax
    C, ren = _shuffled(B, random.Random(1))
    w = graph_isomorphic(B, C)
    assert _is_witness(w, B, C)


def test_different_labels():
    assert graph_isomorphic(make_program([("i", "t", "right")]), make_program([("i", "t", "left")])) is None


def test_initial_terminal_matter():
    p = make_program([("a", "b", "right")], "a", "b", states=("a", "b", "c"))
    q = make_program([("a", "b", "right")], "a", "c", states=("a", "b", "c"))
    assert not is_isomorphic(p, q)


programs = st.integers(0, 10**9).map(lambda s: random_program(random.Random(s), INSTR, 5, 6))


@settings(max_examples=200)
@given(programs, st.integers(0, 10**6))
def test_equivalence(p, s):
    rng = random.Random(s)
    q, _ = _shuffled(p, rng)
    r, _ = _shuffled(q, rng)
    w1, w2 = graph_isomorphic(p, q), graph_isomorphic(q, r)
    assert _is_witness(w1, p, q) and _is_witness(w2, q, r)
    inv = {v: k for k, v in w1.items()}
    assert _is_witness(inv, q, p)
    assert _is_witness({k: w2[v] for k, v in w1.items()}, p, r)
    assert canonical_form(p) == canonical_form(r)


def _brute_iso(g1, g2):
    if len(g1.states) != len(g2.states):
        return False
    inner1 = [s for s in g1.states if s not in (g1.initial, g1.terminal)]
    inner2 = [s for s in g2.states if s not in (g2.initial, g2.terminal)]
    target = sorted((e.source, e.target, e.label) for e in g2.edges)
    for perm in itertools.permutations(inner2):
        w = dict(zip(inner1, perm))
        w[g1.initial], w[g1.terminal] = g2.initial, g2.terminal
        if sorted((w[e.source], w[e.target], e.label) for e in g1.edges) == target:
            return True
    return False


@settings(max_examples=300)
@given(programs, programs)
def test_matches_brute_force(p, q):
    assert is_isomorphic(p, q) == _brute_iso(p, q)
    assert (canonical_form(p) == canonical_form(q)) == _brute_iso(p, q)
