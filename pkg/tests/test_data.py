import random

import pytest
from hypothesis import given, strategies as st
from sympy import Poly, symbols

from algograph.data import (
    AbstractDataStructure,
    Environment,
    anchor,
    compose_maps,
    induced_model,
    maximal_arity,
    parse_environment,
    product,
)
from algograph.errors import ArityMismatch, FrameMismatch, UnknownVariable
from algograph.model import UNDEFINED, apply_instruction
from algograph.recfun import (
    ADDITION,
    CONSTANT_ONE,
    MULTIPLICATION,
    OUT_OF_BUDGET,
    Composition,
    Mu,
    PrimRec,
    Projection,
    Successor,
    Zero,
    eval_recfun,
    format_term,
    parse_term,
    recursive_functions,
)
from algograph.structures import (
    BOOL,
    LIST,
    NAT,
    booleans,
    gf2_divmod,
    gf2_mul,
    gf2_polynomials,
    lists_of_naturals,
    naturals,
    parse_gf2,
    render_gf2,
)

B, N, L = booleans(), naturals(), lists_of_naturals()
X = symbols("x")


def test_boolean_maps():
    assert B["and"](1, 1) == (1,)
    assert B["or"](1, 0) == (1,)
    assert B["read0"](1) is UNDEFINED
    assert B["read0"](0) == (0,)
    assert B["not"](0) == (1,)


def test_maximal_arity():
    assert maximal_arity(B) == 2
    assert maximal_arity(naturals(extended=False)) == 1
    assert maximal_arity(AbstractDataStructure(NAT, {}, "empty")) == 0


def test_natural_maps():
    assert N["succ"](3) == (4,)
    assert N["pred"](0) is UNDEFINED
    assert N["mod"](12, 8) == (4,)
    assert N["mod"](3, 0) is UNDEFINED
    assert N["sub"](2, 3) is UNDEFINED
    assert N["div"](17, 5) == (3,)
    assert N["geq"](3, 3) == (3, 3) and N["lt"](3, 3) is UNDEFINED
    assert N["swap"](1, 2) == (2, 1)


def test_list_maps():
    assert L["split"]((5, 3, 8, 1)) == ((5, 8), (3, 1))
    assert L["fst"](()) is UNDEFINED
    assert L["concat"]((1,), (2, 3)) == ((1, 2, 3),)
    assert L["queue"]((4, 5)) == ((5,),)


def test_product():
    P = product(B, N)
    assert len(P.maps) == len(B.maps) + len(N.maps)
    assert P["left.not"]((1, 5)) == ((0, 5),)
    assert P["right.succ"]((1, 5)) == ((1, 6),)
    empty = AbstractDataStructure(NAT, {}, "empty")
    assert set(product(B, empty).maps) == {"left." + n for n in B.maps}
    assert maximal_arity(P) == max(maximal_arity(B), maximal_arity(N))


@given(st.integers(0, 1), st.integers(0, 50))
def test_product_components_commute(b, n):
    P = product(B, N)
    for s in B.maps:
        for s2 in ("succ", "pred", "read0", "readS"):
            ls, rs = P["left." + s], P["right." + s2]
            if ls.dom != 1 or ls.im != 1:
                continue
            a = ls((b, n))
            c = rs((b, n))
            if a is UNDEFINED or c is UNDEFINED:
                continue
            ab, cb = rs(*a), ls(*c)
            if ab is UNDEFINED or cb is UNDEFINED:
                continue
            assert ab == cb


def test_compose_euclid_step():
    step = compose_maps(
        "euclid_step",
        ("x", "y"),
        ("x", "y"),
        [anchor(N["mod"], ("x", "y"), ("z",)), anchor(N["id"], ("y",), ("x",)), anchor(N["id"], ("z",), ("y",))],
        scratch=("z",),
    )
    assert step(12, 8) == (8, 4)
    assert step(3, 0) is UNDEFINED


def test_compose_empty_is_identity():
    m = compose_maps("nothing", ("a", "b"), ("a", "b"), [])
    assert m(3, 4) == (3, 4) and m.dom == m.im == 2


def test_compose_undefined_stage():
    m = compose_maps("p", ("a",), ("a",), [anchor(N["pred"], ("a",))])
    assert m(0) is UNDEFINED and m(5) == (4,)


def test_compose_frame_escape():
    with pytest.raises(FrameMismatch):
        compose_maps("bad", ("a",), ("a",), [anchor(N["succ"], ("b",), ("a",))])


def test_anchor_arity():
    with pytest.raises(ArityMismatch):
        anchor(N["add"], ("a",), ("b",))


def test_induced_model():
    swap = anchor(N["swap"], ("x", "y"))
    mod = anchor(N["mod"], ("y", "x"), ("y",))
    readS = anchor(N["readS"], ("y",))
    M = induced_model(N, ("x", "y"), [swap, mod, readS, anchor(N["id"], ("x",))])
    env = Environment.of(x=12, y=8)
    after = apply_instruction(M, mod.name, apply_instruction(M, swap.name, env))
    assert after == Environment.of(x=8, y=4)
    assert apply_instruction(M, "id@(x)->(x)", env) == env
    assert apply_instruction(M, readS.name, Environment.of(x=1, y=0)) is UNDEFINED
    with pytest.raises(UnknownVariable):
        induced_model(N, ("x",), [swap])


@given(st.integers(0, 100), st.integers(0, 100), st.integers(0, 100))
def test_partiality_propagation(x, y, z):
    env = Environment.of(x=x, y=y, z=z)
    op = anchor(N["sub"], ("x", "y"), ("x",))
    out = op.apply(env)
    assert (out is UNDEFINED) == (x < y)
    if out is not UNDEFINED:
        assert out["x"] == x - y and out["y"] == y and out["z"] == z


def test_environment_literal():
    env = parse_environment("{x: 12, y: 8}", NAT)
    assert env == Environment.of(x=12, y=8)
    assert str(env) == "{x: 12, y: 8}"
    assert parse_environment("{x: [3, 1], y: []}", LIST)["x"] == (3, 1)


@pytest.mark.parametrize("domain", [BOOL, NAT, LIST, gf2_polynomials().domain])
def test_sampler_round_trip(domain):
    rng = random.Random(7)
    for _ in range(100):
        v = domain.draw(rng)
        assert domain.equal(domain.parse(domain.render(v)), v)


def test_recfun_examples():
    assert eval_recfun(ADDITION, (3, 4)) == 7
    assert eval_recfun(Projection(2, 3), (9, 8, 7)) == 8
    assert eval_recfun(Mu(CONSTANT_ONE), (), budget=1000) is OUT_OF_BUDGET
    with pytest.raises(ArityMismatch):
        eval_recfun(ADDITION, (1,))


def test_recfun_arities():
    assert PrimRec(Zero(1), Composition(Successor(), (Projection(1, 3),))).arity == 2
    assert Mu(Projection(1, 2)).arity == 1


def test_recfun_structure():
    R = recursive_functions(budget=500)
    assert R.wrap(ADDITION)(2, 2) == (4,)
    assert R.wrap(Zero(0))() == (0,)
    assert R.wrap(Mu(CONSTANT_ONE))() is UNDEFINED


@pytest.mark.parametrize("term", [ADDITION, MULTIPLICATION, Mu(CONSTANT_ONE), Zero(0), Zero(2)])
def test_term_text_round_trip(term):
    assert parse_term(format_term(term)) == term


def test_term_literal():
    t = parse_term("(primrec (proj 1 1) (comp succ (proj 2 3)))")
    assert t == ADDITION


def _sym(p: int) -> Poly:
    return Poly(sum(X**i for i in range(p.bit_length()) if p >> i & 1) if p else 0, X, modulus=2)


@given(st.integers(0, 2**8), st.integers(1, 2**8))
def test_gf2_against_sympy(a, b):
    q, r = gf2_divmod(a, b)
    sq, sr = _sym(a).div(_sym(b))
    assert _sym(q) == sq and _sym(r) == sr
    assert _sym(gf2_mul(a, b)) == _sym(a) * _sym(b)


@given(st.integers(0, 2**12))
def test_gf2_text_round_trip(p):
    assert parse_gf2(render_gf2(p)) == p
