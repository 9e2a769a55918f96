import random

import pytest

from algograph import corpus
from algograph.algorithms import SemanticAlgorithm, abstract_run, as_syntactic, make_algorithm, single_edge
from algograph.data import Environment
from algograph.errors import ArityMismatch, ConventionViolation, MissingLabel
from algograph.glueing import (
    BOTTOM_LABEL,
    NOT_FOUND,
    check_coherent,
    check_implements,
    compose_labellings,
    glue,
    glue_alg,
    glue_traced,
    glued_counts,
    preglue,
    random_algorithm,
    random_instance,
    search_implementation,
    unfold,
)
from algograph.isomorphism import graph_isomorphic, is_isomorphic
from algograph.model import tm_model
from algograph.program import Terminated, make_program, run
from algograph.representation import delta_bool, tm_identity, tm_not
from algograph.structures import booleans

TM = tm_model()


def two_state(label="right"):
    return make_program([("i", "t", label)])


# the glueing figure: four algorithm edges over three labels
FIG_A = make_algorithm([("b", "l", "a1"), ("b", "r", "a2"), ("l", "e", "a4"), ("r", "b", "a4")], "b", "e")
FIG_PHI = {
    "a1": make_program([("i", "c", "right"), ("c", "t", "left")]),
    "a2": make_program(
        [("i", "d", "read_0"), ("d", "t", "write_1"), ("i", "e", "read_1"), ("e", "f", "right"),
         ("f", "d", "left"), ("d", "f", "right"), ("f", "i", "write_0")]
    ),
    "a4": make_program([("i", "a", "read_*"), ("a", "i", "write_0"), ("i", "bb", "read_1"), ("bb", "t", "left")]),
}
# the same program written out by hand, state names unrelated to the construction
FIG_M = make_program(
    [
        ("B", "c", "right"), ("c", "L", "left"),
        ("B", "d", "read_0"), ("d", "R", "write_1"), ("B", "e", "read_1"), ("e", "f", "right"),
        ("f", "d", "left"), ("d", "f", "right"), ("f", "B", "write_0"),
        ("L", "a1", "read_*"), ("a1", "L", "write_0"), ("L", "b1", "read_1"), ("b1", "E", "left"),
        ("R", "a2", "read_*"), ("a2", "R", "write_0"), ("R", "b2", "read_1"), ("b2", "B", "left"),
    ],
    initial="B",
    terminal="E",
    states=("B", "L", "R", "E", "c", "d", "e", "f", "a1", "b1", "a2", "b2"),
)


def test_preglue_copies():
    A = make_algorithm([("i", "m", "o"), ("m", "n", "o"), ("n", "t", "o")])
    pg = preglue(A, {"o": two_state()})
    assert (len(pg.states), len(pg.edges)) == (6, 3)
    assert preglue(make_algorithm([], states=("i", "t")), {}).states == ()
    assert len(preglue(FIG_A, FIG_PHI).boundaries) == 4


def test_preglue_missing_label():
    with pytest.raises(MissingLabel):
        preglue(single_edge("o"), {})


def test_single_edge_glue_is_component():
    Q = FIG_PHI["a2"]
    assert is_isomorphic(glue(single_edge("o"), {"o": Q}), Q)


def test_chain():
    A = make_algorithm([("i", "m", "o"), ("m", "t", "p")])
    P = glue(A, {"o": two_state("right"), "p": two_state("left")})
    assert (len(P.states), len(P.edges)) == (3, 2)
    assert is_isomorphic(P, make_program([("i", "m", "right"), ("m", "t", "left")]))


def test_figure_example():
    assert check_implements(FIG_M, FIG_A, FIG_PHI)
    assert glued_counts(FIG_A, FIG_PHI) == (12, 17)


def test_extra_state_breaks_implementation():
    P = glue(FIG_A, FIG_PHI)
    bigger = make_program(P.edges, P.initial, P.terminal, P.states + ("stray",))
    verdict = check_implements(bigger, FIG_A, FIG_PHI)
    assert not verdict and verdict.witness is None


def test_isolated_vertex_kept():
    A = make_algorithm([("i", "t", "o")], states=("i", "t", "lonely"))
    P = glue(A, {"o": two_state()})
    assert "lonely" in P.states and len(P.states) == 3


def test_component_with_equal_ends_rejected():
    from algograph.program import Program

    bad = Program(("i",), (), "i", "i")
    with pytest.raises(ConventionViolation):
        glue(single_edge("o"), {"o": bad})


def test_trace_provenance():
    P, tr = glue_traced(FIG_A, FIG_PHI)
    assert set(tr.states) == set(P.states)
    assert sorted(tr.edges) == list(range(len(P.edges)))
    for s in FIG_A.states:
        assert tr.states[s] == ("vertex", s)


def test_gcd_glue_runs():
    P = glue(corpus.gcd_A_syntax(), corpus.gcd_component_programs())
    out = run(corpus.naturals_xyz_model(), P, Environment.of(x=12, y=8, z=0), 100_000).outcome
    assert isinstance(out, Terminated) and out.configuration["x"] == 4


def test_gcd_B_is_a_glueing():
    phi = {lab: single_edge(lab) for lab in corpus.gcd_A_syntax().labels}
    phi[corpus.EUCLID] = corpus.subtraction_remainder()
    B = glue_alg(corpus.gcd_A_syntax(), phi)
    assert graph_isomorphic(B, corpus.gcd_B().syntax) is not None
    assert B.label_multiset() == corpus.gcd_B().syntax.label_multiset()


def test_glue_alg_inherits_meaning():
    phi = {lab: SemanticAlgorithm(single_edge(lab), corpus.gcd_A().structure, {lab: corpus.gcd_A().meaning[lab]})
           for lab in corpus.gcd_A_syntax().labels if lab != corpus.EUCLID}
    phi[corpus.EUCLID] = corpus.subtraction_remainder()
    B = glue_alg(corpus.gcd_A_syntax(), phi)
    assert isinstance(B, SemanticAlgorithm)
    for a, b in [(12, 8), (7, 0), (0, 5), (91, 35)]:
        assert abstract_run(B, {"x": a, "y": b}).outcome.configuration["x"] == corpus.euclid(a, b)


def test_glue_alg_single_edge_identity():
    B = corpus.gcd_B().syntax
    assert is_isomorphic(glue_alg(single_edge("o"), {"o": B}), B)


def test_search_implementation():
    rng = random.Random(5)
    A, phi = random_instance(rng)
    P = glue(A, phi)
    found = search_implementation(P, A, {f"p{k}": q for k, q in enumerate(phi.values())})
    assert found is not NOT_FOUND and check_implements(P, A, found)
    assert search_implementation(P, single_edge("o"), {}) is NOT_FOUND
    Q = two_state("write_1")
    assert search_implementation(Q, single_edge("o"), {"w0": two_state("write_0"), "w1": Q}) == {"o": Q}


def test_coherence():
    alg = SemanticAlgorithm(single_edge("neg"), booleans(), {"neg": _not_op()})
    report = check_coherent({"neg": tm_not()}, alg, TM, delta_bool())
    assert report.coherent
    report = check_coherent({"neg": tm_identity()}, alg, TM, delta_bool())
    assert not report.coherent
    assert report.verdicts["neg"].failures[0][0] == (0,)
    empty = SemanticAlgorithm(make_algorithm([], states=("i", "t")), booleans(), {})
    assert check_coherent({}, empty, TM, delta_bool()).coherent


def _not_op():
    from algograph.data import anchor

    return anchor(booleans()["not"], ("x",))


def test_compose_gcd_chain():
    A = corpus.gcd_A_syntax()
    phi = {lab: single_edge(lab) for lab in A.labels}
    phi[corpus.EUCLID] = corpus.subtraction_remainder()
    psi = {lab: make_program([("i", "t", f"op{k}")], model="abstract") for k, lab in enumerate(sorted(
        set(corpus.gcd_B().labels)))}
    theta = compose_labellings(A, phi, psi)
    assert is_isomorphic(glue(A, theta), glue(corpus.gcd_B().syntax, psi))


def test_compose_identity_case():
    A = make_algorithm([("i", "m", "o"), ("m", "t", "p")])
    psi = {"o": two_state("right"), "p": FIG_PHI["a4"]}
    theta = compose_labellings(A, {lab: single_edge(lab) for lab in "op"}, psi)
    for lab in "op":
        assert is_isomorphic(theta[lab], psi[lab])


def test_compose_missing_label():
    with pytest.raises(MissingLabel):
        compose_labellings(single_edge("o"), {}, {})


def test_compose_associativity_two_levels():
    # o -> (p then q), p -> single r edge, q -> single s edge
    A = single_edge("o")
    phi = {"o": make_algorithm([("i", "m", "p"), ("m", "t", "q")])}
    chi = {"p": single_edge("r"), "q": single_edge("s")}
    psi = {"r": two_state("right"), "s": two_state("left")}
    left = glue(A, compose_labellings(A, phi, compose_labellings_alg(chi, psi)))
    right = glue(glue_alg(glue_alg(A, phi), chi), psi)
    assert is_isomorphic(left, right)


def compose_labellings_alg(chi, psi):
    return {lab: glue(alg, psi) for lab, alg in chi.items()}


@pytest.mark.parametrize("seed", range(30))
def test_count_formula_and_round_trip(seed):
    A, phi = random_instance(random.Random(seed))
    P = glue(A, phi)
    assert glued_counts(A, phi) == (len(P.states), len(P.edges))
    used = [phi[e.label] for e in A.edges]
    assert len(P.states) == len(A.states) + sum(len(c.states) - 2 for c in used)
    assert check_implements(P, A, phi)


@pytest.mark.parametrize("seed", range(20))
def test_preorder(seed):
    rng = random.Random(1000 + seed)
    labels = [f"o{j}" for j in range(rng.randint(1, 3))]
    inner = [f"u{j}" for j in range(rng.randint(1, 3))]
    A = random_algorithm(rng, labels)
    phi = {lab: random_algorithm(rng, inner) for lab in labels}
    psi = {lab: _random_prog(rng) for lab in inner}
    assert is_isomorphic(glue(A, compose_labellings(A, phi, psi)), glue(glue_alg(A, phi), psi))


def _random_prog(rng):
    from algograph.glueing import random_program

    return random_program(rng, ["right", "left", "write_1"], 4, 4)


def test_unfold_syntactic():
    A = make_algorithm([("i", "m", "o"), ("m", "t", "rec")])
    u0 = unfold(A, "rec", 0)
    assert [e.label for e in u0.edges] == ["o", BOTTOM_LABEL]
    u1 = unfold(A, "rec", 1)
    assert as_syntactic(u1).label_multiset() == {"o": 2, BOTTOM_LABEL: 1}


def test_unfold_mergesort_grows():
    counts = [len(unfold(corpus.mergesort(), "sort", d).syntax.states) for d in range(3)]
    assert counts[0] < counts[1] < counts[2]


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_unfold_mergesort_sorts(d):
    u = unfold(corpus.mergesort(), "sort", d)
    rng = random.Random(d)
    for _ in range(10):
        xs = tuple(rng.randint(0, 50) for _ in range(rng.randint(0, 2 ** (d - 1))))
        out = abstract_run(u, {"x": xs}, budget=100_000).outcome
        assert isinstance(out, Terminated) and out.configuration["x"] == tuple(sorted(xs))


def test_unfold_too_shallow_gets_stuck():
    u = unfold(corpus.mergesort(), "sort", 1)
    out = abstract_run(u, {"x": (3, 2, 1)}).outcome
    assert not isinstance(out, Terminated)


def test_unfold_rejects_call_of_wrong_arity():
    # the two-call composite is not a call to sort(x) -> (x)
    with pytest.raises(ArityMismatch):
        unfold(corpus.mergesort(), corpus.SORT_BOTH, 2)
