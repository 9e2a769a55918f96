"""Recursive-function terms, their budgeted evaluator, and the induced structure.

Terms are built from zero constants, successor and projections, closed under
composition, primitive recursion (on the first argument) and minimisation
(searching the first argument upward from 0). Every term has a fixed arity.

Textual form is an s-expression::

    zero | (zero n) | succ | (proj i n) | (comp f g1 ... gm)
    (primrec base step) | (mu f)
"""

from __future__ import annotations

from dataclasses import dataclass

from .data import AbstractDataStructure, StructuralMap
from .errors import ArityMismatch, ParseError
from .model import UNDEFINED
from .sexp import parse_one


class _OutOfBudget:
    def __repr__(self):
        return "OutOfBudget"


OUT_OF_BUDGET = _OutOfBudget()


class _Exhausted(Exception):
    pass


@dataclass(frozen=True)
class Zero:
    arity: int = 0


@dataclass(frozen=True)
class Successor:
    arity: int = 1


@dataclass(frozen=True)
class Projection:
    index: int  # 1-based
    n: int

    def __post_init__(self):
        if not 1 <= self.index <= self.n:
            raise ArityMismatch(f"projection {self.index} out of range for arity {self.n}")

    @property
    def arity(self):
        return self.n


@dataclass(frozen=True)
class Composition:
    f: "Term"
    gs: tuple["Term", ...]

    def __post_init__(self):
        object.__setattr__(self, "gs", tuple(self.gs))
        if self.f.arity != len(self.gs):
            raise ArityMismatch(f"outer function has arity {self.f.arity}, given {len(self.gs)} inner functions")
        if len({g.arity for g in self.gs}) > 1:
            raise ArityMismatch("inner functions of a composition must share an arity")
        if not self.gs:
            raise ArityMismatch("composition with a nullary outer function is just the function")

    @property
    def arity(self):
        return self.gs[0].arity


@dataclass(frozen=True)
class PrimRec:
    """h(0, ys) = base(ys); h(k+1, ys) = step(k, h(k, ys), ys)."""

    base: "Term"
    step: "Term"

    def __post_init__(self):
        if self.step.arity != self.base.arity + 2:
            raise ArityMismatch(
                f"primitive recursion needs a step of arity {self.base.arity + 2}, got {self.step.arity}"
            )

    @property
    def arity(self):
        return self.base.arity + 1


@dataclass(frozen=True)
class Mu:
    """mu(f)(ys) = least z with f(z, ys) = 0, all earlier probes defined."""

    f: "Term"

    def __post_init__(self):
        if self.f.arity < 1:
            raise ArityMismatch("minimisation needs a function of arity >= 1")

    @property
    def arity(self):
        return self.f.arity - 1


Term = Zero | Successor | Projection | Composition | PrimRec | Mu


class _Meter:
    def __init__(self, budget):
        self.left = budget

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise _Exhausted


def _eval(t, args, meter):
    meter.tick()
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Successor):
        return args[0] + 1
    if isinstance(t, Projection):
        return args[t.index - 1]
    if isinstance(t, Composition):
        inner = tuple(_eval(g, args, meter) for g in t.gs)
        return _eval(t.f, inner, meter)
    if isinstance(t, PrimRec):
        n, rest = args[0], args[1:]
        acc = _eval(t.base, rest, meter)
        for k in range(n):
            acc = _eval(t.step, (k, acc) + rest, meter)
        return acc
    if isinstance(t, Mu):
        z = 0
        while True:
            meter.tick()
            if _eval(t.f, (z,) + tuple(args), meter) == 0:
                return z
            z += 1
    raise TypeError(f"not a recursive-function term: {t!r}")


def eval_recfun(term: Term, args: tuple = (), budget: int = 1_000_000):
    """Evaluate ``term`` at ``args``; returns ``OUT_OF_BUDGET`` when the budget runs out."""
    args = tuple(args)
    if len(args) != term.arity:
        raise ArityMismatch(f"term of arity {term.arity} applied to {len(args)} arguments")
    try:
        return _eval(term, args, _Meter(budget))
    except _Exhausted:
        return OUT_OF_BUDGET


# ---------------------------------------------------------------------------
# text


def term_from_sexp(expr) -> Term:
    if isinstance(expr, str):
        if expr == "zero":
            return Zero(0)
        if expr == "succ":
            return Successor()
        raise ParseError(f"unknown atom {expr!r}")
    if not expr:
        raise ParseError("empty term")
    head, *rest = expr
    try:
        if head == "zero":
            return Zero(int(rest[0]) if rest else 0)
        if head == "proj":
            return Projection(int(rest[0]), int(rest[1]))
        if head == "comp":
            return Composition(term_from_sexp(rest[0]), tuple(term_from_sexp(g) for g in rest[1:]))
        if head == "primrec":
            return PrimRec(term_from_sexp(rest[0]), term_from_sexp(rest[1]))
        if head == "mu":
            return Mu(term_from_sexp(rest[0]))
    except (IndexError, ValueError) as exc:
        raise ParseError(f"malformed term {expr!r}: {exc}") from None
    raise ParseError(f"unknown constructor {head!r}")


def parse_term(text: str) -> Term:
    return term_from_sexp(parse_one(text))


def format_term(t: Term) -> str:
    if isinstance(t, Zero):
        return "zero" if t.arity == 0 else f"(zero {t.arity})"
    if isinstance(t, Successor):
        return "succ"
    if isinstance(t, Projection):
        return f"(proj {t.index} {t.n})"
    if isinstance(t, Composition):
        return "(comp " + " ".join(format_term(x) for x in (t.f,) + t.gs) + ")"
    if isinstance(t, PrimRec):
        return f"(primrec {format_term(t.base)} {format_term(t.step)})"
    if isinstance(t, Mu):
        return f"(mu {format_term(t.f)})"
    raise TypeError(t)


ADDITION = PrimRec(Projection(1, 1), Composition(Successor(), (Projection(2, 3),)))
# recursing on the multiplicand keeps the inner additions short
MULTIPLICATION = PrimRec(Zero(1), Composition(ADDITION, (Projection(3, 3), Projection(2, 3))))
CONSTANT_ONE = Composition(Successor(), (Zero(1),))


# ---------------------------------------------------------------------------
# the structure


def recfun_map(term: Term, budget: int = 1_000_000, name: str | None = None) -> StructuralMap:
    """A recursive function as a structural map; budget exhaustion reads as undefined."""

    def fn(*args):
        v = eval_recfun(term, args, budget)
        return UNDEFINED if v is OUT_OF_BUDGET else (v,)

    return StructuralMap(name or format_term(term), term.arity, 1, fn)


@dataclass(frozen=True, eq=False)
class RecursiveFunctions(AbstractDataStructure):
    budget: int = 1_000_000

    def wrap(self, term: Term, name: str | None = None) -> StructuralMap:
        return recfun_map(term, self.budget, name)


def recursive_functions(budget: int = 1_000_000) -> RecursiveFunctions:
    """Naturals with the recursive functions as structural maps.

    Only addition and multiplication are registered by name; any other term
    becomes a map through :meth:`RecursiveFunctions.wrap`.
    """
    from .structures import NAT

    maps = {
        "add": recfun_map(ADDITION, budget, "add"),
        "mult": recfun_map(MULTIPLICATION, budget, "mult"),
    }
    return RecursiveFunctions(NAT, maps, "recfun", (), budget)
