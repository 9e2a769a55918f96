"""Universal, quantifier-free first-order sentences and sampled model checking.

Sentences are written as s-expressions::

    (forall (a b) (=> (rel nonzero b) (= a (add (mult (div a b) b) (mod a b)))))

Inside a sentence, ``(f t1 ... tn)`` applies a function symbol, ``(rel r t1
... tn)`` is a relation atom, a bare symbol that is not a bound variable is a
constant, and ``=``, ``not``, ``and``, ``or``, ``=>`` have their usual
meaning. ``(axiom name sentence)`` attaches a name.

Checking is done on seeded random assignments. Function symbols are bound
to structural maps with one output, relations to partial identities. An
atom whose terms are undefined somewhere is false.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .data import AbstractDataStructure, StructuralMap
from .errors import ArityMismatch, ParseError, UnboundSymbol
from .model import UNDEFINED
from .sexp import dump, parse_all, parse_one


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = ()


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class Rel:
    symbol: str
    args: tuple


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    premise: object
    conclusion: object


@dataclass(frozen=True)
class Sentence:
    variables: tuple[str, ...]
    body: object
    name: str = ""
    text: str = ""


@dataclass(frozen=True)
class Theory:
    name: str
    sentences: tuple[Sentence, ...]


@dataclass(frozen=True)
class LogicalSignature:
    functions: Mapping[str, int]
    relations: Mapping[str, int]


def _term(expr, bound):
    if isinstance(expr, str):
        return Var(expr) if expr in bound else App(expr, ())
    if not expr:
        raise ParseError("empty term")
    head, *args = expr
    if not isinstance(head, str):
        raise ParseError(f"bad function position in {dump(expr)}")
    return App(head, tuple(_term(a, bound) for a in args))


def _formula(expr, bound):
    if isinstance(expr, str) or not expr:
        raise ParseError(f"not a formula: {dump(expr)}")
    head, *args = expr
    if head == "=":
        if len(args) != 2:
            raise ParseError("= takes two terms")
        return Eq(_term(args[0], bound), _term(args[1], bound))
    if head == "rel":
        return Rel(args[0], tuple(_term(a, bound) for a in args[1:]))
    if head == "not":
        return Not(_formula(args[0], bound))
    if head == "and":
        return And(tuple(_formula(a, bound) for a in args))
    if head == "or":
        return Or(tuple(_formula(a, bound) for a in args))
    if head == "=>":
        return Implies(_formula(args[0], bound), _formula(args[1], bound))
    if head in ("forall", "exists"):
        raise ParseError("quantifiers are only allowed as the outer universal block")
    raise ParseError(f"unknown connective {head!r}")


def sentence_from_sexp(expr, name: str = "") -> Sentence:
    text = dump(expr)
    if isinstance(expr, list) and expr and expr[0] == "axiom":
        return sentence_from_sexp(expr[2], name=expr[1])
    if isinstance(expr, list) and expr and expr[0] == "forall":
        if len(expr) != 3 or not isinstance(expr[1], list):
            raise ParseError(f"malformed forall: {text}")
        variables = tuple(expr[1])
        return Sentence(variables, _formula(expr[2], set(variables)), name or text, text)
    return Sentence((), _formula(expr, set()), name or text, text)


def parse_sentence(text: str) -> Sentence:
    return sentence_from_sexp(parse_one(text))


def parse_theory(text: str, name: str = "theory") -> Theory:
    return Theory(name, tuple(sentence_from_sexp(e) for e in parse_all(text)))


def format_theory(theory: Theory) -> str:
    out = []
    for s in theory.sentences:
        if s.name and s.name != s.text:
            out.append(f"(axiom {s.name} {s.text})")
        else:
            out.append(s.text)
    return "\n".join(out) + "\n"


def signature(theory: Theory) -> LogicalSignature:
    """Symbols and arities used by the theory; raises on inconsistent use."""
    funs: dict[str, int] = {}
    rels: dict[str, int] = {}

    def note(table, sym, k):
        if table.setdefault(sym, k) != k:
            raise ArityMismatch(f"symbol {sym!r} used with arities {table[sym]} and {k}")

    def walk_term(t):
        if isinstance(t, App):
            note(funs, t.symbol, len(t.args))
            for a in t.args:
                walk_term(a)

    def walk(f):
        if isinstance(f, Eq):
            walk_term(f.left)
            walk_term(f.right)
        elif isinstance(f, Rel):
            note(rels, f.symbol, len(f.args))
            for a in f.args:
                walk_term(a)
        elif isinstance(f, Not):
            walk(f.body)
        elif isinstance(f, (And, Or)):
            for p in f.parts:
                walk(p)
        elif isinstance(f, Implies):
            walk(f.premise)
            walk(f.conclusion)

    for s in theory.sentences:
        walk(s.body)
    clash = set(funs) & set(rels)
    if clash:
        raise ArityMismatch(f"symbols used both as function and relation: {sorted(clash)}")
    return LogicalSignature(funs, rels)


def _eval_term(t, env, binding):
    if isinstance(t, Var):
        return env[t.name]
    args = []
    for a in t.args:
        v = _eval_term(a, env, binding)
        if v is UNDEFINED:
            return UNDEFINED
        args.append(v)
    out = binding[t.symbol](*args)
    return UNDEFINED if out is UNDEFINED else out[0]


def holds(f, env, binding, equal=lambda a, b: a == b) -> bool:
    if isinstance(f, Eq):
        a = _eval_term(f.left, env, binding)
        b = _eval_term(f.right, env, binding)
        return a is not UNDEFINED and b is not UNDEFINED and equal(a, b)
    if isinstance(f, Rel):
        args = [_eval_term(a, env, binding) for a in f.args]
        if any(a is UNDEFINED for a in args):
            return False
        return binding[f.symbol](*args) is not UNDEFINED
    if isinstance(f, Not):
        return not holds(f.body, env, binding, equal)
    if isinstance(f, And):
        return all(holds(p, env, binding, equal) for p in f.parts)
    if isinstance(f, Or):
        return any(holds(p, env, binding, equal) for p in f.parts)
    if isinstance(f, Implies):
        return not holds(f.premise, env, binding, equal) or holds(f.conclusion, env, binding, equal)
    raise TypeError(f"not a formula: {f!r}")


def resolve_binding(
    structure: AbstractDataStructure, theory: Theory, binding: Mapping[str, StructuralMap | str]
) -> dict[str, StructuralMap]:
    """Resolve names to maps and check every symbol is bound with the right shape."""
    sig = signature(theory)
    resolved = {}
    for sym, m in binding.items():
        resolved[sym] = structure[m] if isinstance(m, str) else m
    for sym, k in sig.functions.items():
        if sym not in resolved:
            raise UnboundSymbol(sym)
        m = resolved[sym]
        if m.dom != k or m.im != 1:
            raise ArityMismatch(f"function symbol {sym}/{k} bound to {m.name} ({m.dom}->{m.im})")
    for sym, k in sig.relations.items():
        if sym not in resolved:
            raise UnboundSymbol(sym)
        m = resolved[sym]
        if m.dom != k or m.im != k:
            raise ArityMismatch(f"relation symbol {sym}/{k} bound to {m.name} ({m.dom}->{m.im})")
    return resolved


@dataclass
class ModelCheckReport:
    samples: int
    counterexamples: dict[str, list[dict]] = field(default_factory=dict)
    checked: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        if self.ok:
            return f"{len(self.checked)} sentences, no counterexample in {self.samples} samples each"
        name, cases = next(iter(self.counterexamples.items()))
        return f"{len(self.counterexamples)} sentence(s) refuted; first: {name} at {cases[0]}"

    def __str__(self):
        lines = []
        for name in self.checked:
            cases = self.counterexamples.get(name)
            lines.append(f"{'FAIL' if cases else 'ok  '}  {name}" + (f"  e.g. {cases[0]}" if cases else ""))
        return "\n".join(lines)


def check_model(
    structure: AbstractDataStructure,
    theory: Theory,
    binding: Mapping[str, StructuralMap | str],
    sample_size: int = 200,
    seed: int = 0,
    size: int | None = None,
    max_witnesses: int = 3,
) -> ModelCheckReport:
    """Look for counterexamples to each sentence on seeded random assignments.

    Each sentence gets its own random stream, so the first ``n`` assignments
    tried are the same whatever ``sample_size`` is.
    """
    maps = resolve_binding(structure, theory, binding)
    domain = structure.domain
    report = ModelCheckReport(sample_size)
    for idx, s in enumerate(theory.sentences):
        rng = random.Random(f"{seed}:{idx}")
        rounds = sample_size if s.variables else 1
        report.checked.append(s.name)
        for _ in range(rounds):
            env = {v: domain.draw(rng, size) for v in s.variables}
            if not holds(s.body, env, maps, domain.equal):
                cases = report.counterexamples.setdefault(s.name, [])
                if len(cases) < max_witnesses:
                    cases.append({v: domain.render(x) for v, x in env.items()})
    return report
