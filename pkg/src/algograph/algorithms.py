"""Algorithms: labelled control graphs, optionally with a meaning for each label.

A :class:`SyntacticAlgorithm` is a control graph whose edge labels are
uninterpreted names. A :class:`SemanticAlgorithm` attaches to each label an
anchored operation of one data structure. A :class:`LogicalAlgorithm`
attaches symbols of a first-order theory instead; :func:`instantiate` turns
it into a semantic algorithm once a structure has been checked to model the
theory.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Mapping, Sequence

from .data import (
    AbstractDataStructure,
    AnchoredOperation,
    Environment,
    StructuralMap,
    compose_maps,
    identity_map,
    induced_model,
    swap_map,
)
from .errors import ArityMismatch, FrameMismatch, MissingLabel, ModelCheckFailed, UnboundSymbol
from .graph import ControlGraph, Edge
from .logic import Theory, check_model, resolve_binding, signature
from .model import ModelOfComputation
from .program import Program, Trace, run


@dataclass(frozen=True)
class SyntacticAlgorithm(ControlGraph):
    # the label set; may contain labels no edge uses
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        used = self.used_labels()
        labels = tuple(dict.fromkeys(tuple(self.labels) + used))
        object.__setattr__(self, "labels", labels)

    def relabelled(self, mapping) -> "SyntacticAlgorithm":
        f = mapping if callable(mapping) else (lambda lab: mapping.get(lab, lab))
        return replace(
            self,
            edges=tuple(Edge(e.source, e.target, f(e.label)) for e in self.edges),
            labels=tuple(dict.fromkeys(f(lab) for lab in self.labels)),
        )


def make_algorithm(edges, initial="i", terminal="t", states=None, labels=()) -> SyntacticAlgorithm:
    edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
    if states is None:
        seen = dict.fromkeys([initial])
        for e in edges:
            seen.setdefault(e.source)
            seen.setdefault(e.target)
        seen.setdefault(terminal)
        states = tuple(seen)
    return SyntacticAlgorithm(tuple(states), edges, initial, terminal, tuple(labels))


def as_syntactic(g) -> SyntacticAlgorithm:
    """View any control graph (or specified algorithm) as a syntactic algorithm."""
    g = getattr(g, "syntax", g)
    if isinstance(g, SyntacticAlgorithm):
        return g
    return SyntacticAlgorithm(g.states, g.edges, g.initial, g.terminal)


def single_edge(label: str, initial: str = "i", terminal: str = "t") -> SyntacticAlgorithm:
    return make_algorithm([(initial, terminal, label)], initial, terminal)


def _frame_of(ops) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for op in ops:
        for v in op.inputs + op.outputs:
            seen.setdefault(v)
    return tuple(seen)


@dataclass(frozen=True, eq=False)
class SemanticAlgorithm:
    syntax: SyntacticAlgorithm
    structure: AbstractDataStructure
    meaning: Mapping[str, AnchoredOperation]
    frame: tuple[str, ...] = ()
    # the anchored map the whole algorithm is meant to compute, if declared
    computes: AnchoredOperation | None = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "syntax", as_syntactic(self.syntax))
        meaning = dict(self.meaning)
        object.__setattr__(self, "meaning", meaning)
        missing = [lab for lab in self.syntax.labels if lab not in meaning]
        if missing:
            raise MissingLabel(f"no meaning for labels {missing}")
        frame = tuple(self.frame) or _frame_of(meaning[lab] for lab in self.syntax.labels)
        object.__setattr__(self, "frame", frame)
        for lab in self.syntax.labels:
            stray = meaning[lab].variables - set(frame)
            if stray:
                raise FrameMismatch(f"label {lab!r} uses {sorted(stray)} outside the frame {list(frame)}")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.syntax.labels

    @cached_property
    def _view(self) -> tuple[Program, ModelOfComputation]:
        names: dict[str, str] = {}
        owner: dict[str, AnchoredOperation] = {}
        ops = []
        for lab in self.syntax.labels:
            op = self.meaning[lab]
            name = op.name
            if name in owner and owner[name] is not op and owner[name].map is not op.map:
                # two different maps share a printed name; keep them apart
                name = f"{name}#{lab}"
                op = _Renamed(op, name)
            owner.setdefault(name, op)
            names[lab] = name
            ops.append(op)
        g = self.syntax
        prog = Program(
            g.states,
            tuple(Edge(e.source, e.target, names[e.label]) for e in g.edges),
            g.initial,
            g.terminal,
            model=f"{self.structure.name}[{','.join(self.frame)}]",
        )
        return prog, induced_model(self.structure, self.frame, ops, prog.model)

    def program_view(self) -> Program:
        """The syntax with each label replaced by its anchored instruction name."""
        return self._view[0]

    def induced(self) -> ModelOfComputation:
        return self._view[1]

    def initial_environment(self, env: Environment | Mapping | None = None) -> Environment:
        """Complete ``env`` over the frame, filling unset variables with the domain default."""
        if env is None:
            env = Environment()
        elif not isinstance(env, Environment):
            env = Environment.of(env)
        missing = {v: self.structure.domain.default for v in self.frame if v not in env}
        return env.updated(missing) if missing else env


class _Renamed(AnchoredOperation):
    """An anchored operation reported under a different instruction name."""

    def __init__(self, op: AnchoredOperation, name: str):
        super().__init__(op.map, op.inputs, op.outputs)
        object.__setattr__(self, "_name", name)

    @property
    def name(self) -> str:
        return self._name


def abstract_run(alg: SemanticAlgorithm, env, budget: int = 10_000) -> Trace:
    """Run the algorithm's program view in the model induced by its anchors."""
    return run(alg.induced(), alg.program_view(), alg.initial_environment(env), budget)


# ---------------------------------------------------------------------------
# logically specified algorithms

PLUMBING = {"id": identity_map(1), "swap": swap_map()}


@dataclass(frozen=True)
class SymbolStep:
    symbol: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))


@dataclass(frozen=True, eq=False)
class LogicalAlgorithm:
    syntax: SyntacticAlgorithm
    theory: Theory
    # each label is a sequence of symbol applications, run left to right
    meaning: Mapping[str, tuple[SymbolStep, ...]]
    frame: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "syntax", as_syntactic(self.syntax))
        meaning = {lab: tuple(steps) if not isinstance(steps, SymbolStep) else (steps,) for lab, steps in self.meaning.items()}
        object.__setattr__(self, "meaning", meaning)
        missing = [lab for lab in self.syntax.labels if lab not in meaning]
        if missing:
            raise MissingLabel(f"no symbol for labels {missing}")
        sig = signature(self.theory)
        for lab in self.syntax.labels:
            for st in meaning[lab]:
                if st.symbol in sig.functions:
                    k, out = sig.functions[st.symbol], 1
                elif st.symbol in sig.relations:
                    k = out = sig.relations[st.symbol]
                    if st.outputs != st.inputs:
                        raise ArityMismatch(f"relation {st.symbol} must be anchored in place")
                elif st.symbol in PLUMBING:
                    k = out = PLUMBING[st.symbol].dom
                else:
                    raise UnboundSymbol(f"{st.symbol} (label {lab!r}) is not in the signature of {self.theory.name}")
                if len(st.inputs) != k or len(st.outputs) != out:
                    raise ArityMismatch(f"{st.symbol} is {k}->{out}, anchored {len(st.inputs)}->{len(st.outputs)}")
        if not self.frame:
            seen: dict[str, None] = {}
            for lab in self.syntax.labels:
                for st in meaning[lab]:
                    for v in st.inputs + st.outputs:
                        seen.setdefault(v)
            object.__setattr__(self, "frame", tuple(seen))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.syntax.labels


def label_operation(label: str, steps: Sequence, maps: Mapping[str, StructuralMap]) -> AnchoredOperation:
    """One anchored operation for a label: the step itself, or the composite of several."""
    ops = [AnchoredOperation(maps.get(st.symbol) or PLUMBING[st.symbol], st.inputs, st.outputs) for st in steps]
    if len(ops) == 1:
        return ops[0]
    frame = _frame_of(ops)
    return AnchoredOperation(compose_maps(label, frame, frame, ops), frame, frame)


def instantiate(
    logical: LogicalAlgorithm,
    structure: AbstractDataStructure,
    binding: Mapping[str, StructuralMap | str],
    sample_size: int = 200,
    seed: int = 0,
    size: int | None = None,
) -> SemanticAlgorithm:
    """Bind the theory's symbols to maps of ``structure`` after checking it is a model."""
    report = check_model(structure, logical.theory, binding, sample_size, seed, size)
    if not report.ok:
        raise ModelCheckFailed(report)
    maps = resolve_binding(structure, logical.theory, binding)
    meaning = {lab: label_operation(lab, logical.meaning[lab], maps) for lab in logical.labels}
    return SemanticAlgorithm(logical.syntax, structure, meaning, logical.frame, name=logical.name)
