"""Shipped algorithms: two presentations of Euclid's algorithm and mergesort.

``gcd_A`` loops on ``y ≠ 0`` with the remainder step ``y = x mod y; x = y``.
``gcd_B`` computes the remainder by repeated subtraction; it is ``gcd_A``
with the remainder edge replaced by :func:`subtraction_remainder`.

The mergesort family works over lists of naturals on the frame
``(x, a, b, y)``: the input and output sit in ``x``.
"""

from __future__ import annotations

from math import gcd

from .algorithms import (
    LogicalAlgorithm,
    SemanticAlgorithm,
    SymbolStep,
    instantiate,
    make_algorithm,
)
from .data import AbstractDataStructure, AnchoredOperation, anchor, compose_maps, induced_model
from .logic import Theory, parse_theory
from .model import ModelOfComputation
from .program import Program, make_program
from .structures import lists_of_naturals, naturals

# labels as they appear on the edges
NONZERO = "y ≠ 0"
ISZERO = "y = 0"
RETURN = "return x"
EUCLID = "y = x mod y; x = y"
GEQ = "x ⩾ y"
LT = "x < y"
SUB = "x = x − y"
SWAP = "x = y; y = x"

EUCLIDEAN_THEORY = """
; commutative semiring
(axiom add-assoc (forall (a b c) (= (add (add a b) c) (add a (add b c)))))
(axiom add-comm (forall (a b) (= (add a b) (add b a))))
(axiom add-zero (forall (a) (= (add a zero) a)))
(axiom mult-assoc (forall (a b c) (= (mult (mult a b) c) (mult a (mult b c)))))
(axiom mult-comm (forall (a b) (= (mult a b) (mult b a))))
(axiom mult-one (forall (a) (= (mult a one) a)))
(axiom mult-zero (forall (a) (= (mult a zero) zero)))
(axiom distrib (forall (a b c) (= (mult a (add b c)) (add (mult a b) (mult a c)))))
(axiom one-nonzero (rel nonzero one))
; zero test
(axiom zero-iszero (rel iszero zero))
(axiom zero-test (forall (a) (or (rel iszero a) (rel nonzero a))))
(axiom zero-test-excl (forall (a) (not (and (rel iszero a) (rel nonzero a)))))
(axiom iszero-eq (forall (a) (=> (rel iszero a) (= a zero))))
; division with remainder
(axiom division (forall (a b) (=> (rel nonzero b) (= a (add (mult (div a b) b) (mod a b))))))
"""


def euclidean_theory() -> Theory:
    return parse_theory(EUCLIDEAN_THEORY, "euclidean")


NAT_BINDING = {
    "add": "add",
    "mult": "mult",
    "div": "div",
    "mod": "mod",
    "zero": "const_0",
    "one": "const_1",
    "iszero": "read0",
    "nonzero": "readS",
}

GF2_BINDING = {
    "add": "add",
    "mult": "mult",
    "div": "div",
    "mod": "mod",
    "zero": "const_0",
    "one": "const_1",
    "iszero": "iszero",
    "nonzero": "nonzero",
}


def gcd_A_syntax():
    return make_algorithm(
        [
            ("i", "l", NONZERO),
            ("l", "i", EUCLID),
            ("i", "r", ISZERO),
            ("r", "t", RETURN),
        ]
    )


def gcd_A_logical() -> LogicalAlgorithm:
    return LogicalAlgorithm(
        gcd_A_syntax(),
        euclidean_theory(),
        {
            NONZERO: (SymbolStep("nonzero", ("y",), ("y",)),),
            ISZERO: (SymbolStep("iszero", ("y",), ("y",)),),
            RETURN: (SymbolStep("id", ("x",), ("x",)),),
            EUCLID: (SymbolStep("swap", ("x", "y"), ("x", "y")), SymbolStep("mod", ("y", "x"), ("y",))),
        },
        ("x", "y"),
        "gcd_A",
    )


def gcd_A(structure: AbstractDataStructure | None = None, binding=None, sample_size: int = 200, seed: int = 0):
    """gcd_A instantiated over ``structure`` (naturals by default)."""
    structure = structure or naturals()
    if binding is None:
        binding = GF2_BINDING if structure.name == "gf2poly" else NAT_BINDING
    return instantiate(gcd_A_logical(), structure, binding, sample_size, seed)


def subtraction_remainder(structure: AbstractDataStructure | None = None) -> SemanticAlgorithm:
    """Leaves ``(y, x mod y)`` in ``(x, y)`` by subtracting while ``x ⩾ y``."""
    N = structure or naturals()
    syntax = make_algorithm(
        [
            ("i", "s", GEQ),
            ("s", "i", SUB),
            ("i", "w", LT),
            ("w", "t", SWAP),
        ]
    )
    meaning = {
        GEQ: anchor(N["geq"], ("x", "y")),
        LT: anchor(N["lt"], ("x", "y")),
        SUB: AnchoredOperation(N["sub"], ("x", "y"), ("x",)),
        SWAP: anchor(N["swap"], ("x", "y")),
    }
    return SemanticAlgorithm(syntax, N, meaning, ("x", "y"), name="subtraction_remainder")


def gcd_B(structure: AbstractDataStructure | None = None) -> SemanticAlgorithm:
    N = structure or naturals()
    syntax = make_algorithm(
        [
            ("i", "l", NONZERO),
            ("l", "s", GEQ),
            ("s", "l", SUB),
            ("l", "w", LT),
            ("w", "i", SWAP),
            ("i", "r", ISZERO),
            ("r", "t", RETURN),
        ]
    )
    meaning = {
        NONZERO: anchor(N["readS"], ("y",)),
        ISZERO: anchor(N["read0"], ("y",)),
        RETURN: anchor(N["id"], ("x",)),
        GEQ: anchor(N["geq"], ("x", "y")),
        LT: anchor(N["lt"], ("x", "y")),
        SUB: AnchoredOperation(N["sub"], ("x", "y"), ("x",)),
        SWAP: anchor(N["swap"], ("x", "y")),
    }
    return SemanticAlgorithm(syntax, N, meaning, ("x", "y"), name="gcd_B")


# ---------------------------------------------------------------------------
# gcd as a program over the induced naturals model


GCD_FRAME = ("x", "y", "z")


def _gcd_anchors(N):
    return {
        "readS@(y)->(y)": anchor(N["readS"], ("y",)),
        "read0@(y)->(y)": anchor(N["read0"], ("y",)),
        "id@(x)->(x)": anchor(N["id"], ("x",)),
        "geq@(x,y)->(x,y)": anchor(N["geq"], ("x", "y")),
        "lt@(x,y)->(x,y)": anchor(N["lt"], ("x", "y")),
        "swap@(x,y)->(x,y)": anchor(N["swap"], ("x", "y")),
        "id@(y)->(z)": AnchoredOperation(N["id"], ("y",), ("z",)),
        "readS@(z)->(z)": anchor(N["readS"], ("z",)),
        "read0@(z)->(z)": anchor(N["read0"], ("z",)),
        "pred@(x)->(x)": anchor(N["pred"], ("x",)),
        "pred@(z)->(z)": anchor(N["pred"], ("z",)),
    }


def naturals_xyz_model(structure: AbstractDataStructure | None = None) -> ModelOfComputation:
    """The model induced on the frame ``(x, y, z)`` by the gcd component instructions."""
    N = structure or naturals()
    return induced_model(N, GCD_FRAME, _gcd_anchors(N).values(), "naturals[x,y,z]")


def gcd_component_programs() -> dict[str, Program]:
    """A program per gcd_A label over ``naturals[x,y,z]``.

    The remainder program subtracts ``y`` from ``x`` one unit at a time,
    counting down a copy of ``y`` in ``z``, until ``x < y``; then it swaps.
    """
    m = "naturals[x,y,z]"
    return {
        NONZERO: make_program([("i", "t", "readS@(y)->(y)")], model=m),
        ISZERO: make_program([("i", "t", "read0@(y)->(y)")], model=m),
        RETURN: make_program([("i", "t", "id@(x)->(x)")], model=m),
        EUCLID: make_program(
            [
                ("i", "c", "geq@(x,y)->(x,y)"),
                ("c", "l", "id@(y)->(z)"),
                ("l", "p", "readS@(z)->(z)"),
                ("p", "q", "pred@(x)->(x)"),
                ("q", "l", "pred@(z)->(z)"),
                ("l", "i", "read0@(z)->(z)"),
                ("i", "w", "lt@(x,y)->(x,y)"),
                ("w", "t", "swap@(x,y)->(x,y)"),
            ],
            model=m,
        ),
    }


def euclid(a: int, b: int) -> int:
    return gcd(a, b)


# ---------------------------------------------------------------------------
# mergesort

SHORT = "|x| ⩽ 1"
LONG = "|x| > 1"
SPLIT = "a,b = split(x); y = []"
SORT_BOTH = "sort(a); sort(b)"
SORT_A = "sort(a)"
SORT_B = "sort(b)"
TAKE_A = "a[0] ⩽ b[0]"
TAKE_B = "a[0] > b[0]"
PUSH_A = "y = y + [a[0]]; queue(a)"
PUSH_B = "y = y + [b[0]]; queue(b)"
RETURN_MERGED = "return(y+a+b)"
MERGE = "merge"

SORT_FRAME = ("x", "a", "b", "y")


def _list_meanings(L):
    def pipeline(label, *stages):
        frame = tuple(dict.fromkeys(v for s in stages for v in s.inputs + s.outputs))
        return AnchoredOperation(compose_maps(label, frame, frame, stages), frame, frame)

    sort_a = anchor(L["sort"], ("a",))
    sort_b = anchor(L["sort"], ("b",))
    return {
        SHORT: anchor(L["short"], ("x",)),
        LONG: anchor(L["long"], ("x",)),
        SPLIT: pipeline(
            SPLIT,
            AnchoredOperation(L["split"], ("x",), ("a", "b")),
            AnchoredOperation(L["nil"], (), ("y",)),
        ),
        SORT_BOTH: pipeline(SORT_BOTH, sort_a, sort_b),
        SORT_A: sort_a,
        SORT_B: sort_b,
        TAKE_A: anchor(L["fst_le"], ("a", "b")),
        TAKE_B: anchor(L["fst_gt"], ("a", "b")),
        PUSH_A: pipeline(
            PUSH_A, AnchoredOperation(L["append_head"], ("y", "a"), ("y",)), anchor(L["queue"], ("a",))
        ),
        PUSH_B: pipeline(
            PUSH_B, AnchoredOperation(L["append_head"], ("y", "b"), ("y",)), anchor(L["queue"], ("b",))
        ),
        RETURN_MERGED: pipeline(
            RETURN_MERGED,
            anchor(L["some_nil"], ("a", "b")),
            AnchoredOperation(L["concat"], ("y", "a"), ("x",)),
            AnchoredOperation(L["concat"], ("x", "b"), ("x",)),
        ),
        MERGE: AnchoredOperation(L["merge"], ("a", "b"), ("x",)),
    }


_MERGE_LOOP = [
    ("m", "u", TAKE_A),
    ("u", "m", PUSH_A),
    ("m", "v", TAKE_B),
    ("v", "m", PUSH_B),
    ("m", "t", RETURN_MERGED),
]


def _semantic(edges, labels_used, name, initial="i"):
    L = lists_of_naturals()
    meaning = _list_meanings(L)
    syntax = make_algorithm(edges, initial=initial)
    computes = anchor(L["sort"], ("x",))
    return SemanticAlgorithm(
        syntax, L, {lab: meaning[lab] for lab in syntax.labels}, SORT_FRAME, computes, name
    )


def mergesort(order: str | None = None) -> SemanticAlgorithm:
    """Mergesort with the two recursive calls on one edge.

    With ``order="ab"`` or ``"ba"`` that edge is split into two consecutive
    edges ``sort(a)`` and ``sort(b)`` in the given order.
    """
    head = [("i", "t", SHORT), ("i", "p", LONG), ("p", "q", SPLIT)]
    if order is None:
        calls = [("q", "m", SORT_BOTH)]
    elif order == "ab":
        calls = [("q", "h", SORT_A), ("h", "m", SORT_B)]
    elif order == "ba":
        calls = [("q", "h", SORT_B), ("h", "m", SORT_A)]
    else:
        raise ValueError("order must be None, 'ab' or 'ba'")
    name = "mergesort" if order is None else f"mergesort_{order}"
    return _semantic(head + calls + _MERGE_LOOP, None, name)


def merge() -> SemanticAlgorithm:
    """The merge loop alone: reads ``a``, ``b`` (and ``y``, normally empty), writes ``x``."""
    alg = _semantic(_MERGE_LOOP, None, "merge", initial="m")
    return SemanticAlgorithm(
        alg.syntax, alg.structure, alg.meaning, SORT_FRAME, _list_meanings(alg.structure)[MERGE], "merge"
    )


def mergesort_outer() -> SemanticAlgorithm:
    """Mergesort with the merge loop collapsed into a single ``merge`` edge."""
    edges = [("i", "t", SHORT), ("i", "p", LONG), ("p", "q", SPLIT), ("q", "m", SORT_BOTH), ("m", "t", MERGE)]
    return _semantic(edges, None, "mergesort_outer")


def builtin_algorithms() -> dict[str, object]:
    return {
        "gcd_A": gcd_A_logical(),
        "gcd_A_nat": gcd_A(),
        "gcd_B": gcd_B(),
        "subtraction_remainder": subtraction_remainder(),
        "mergesort": mergesort(),
        "mergesort_ab": mergesort("ab"),
        "mergesort_ba": mergesort("ba"),
        "merge": merge(),
        "mergesort_outer": mergesort_outer(),
    }
