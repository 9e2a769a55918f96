"""Programs over a model of computation, executed as partial dynamical systems.

A program's edges carry instruction names. An edge ``e`` moves the machine
state ``(x, s(e))`` to ``(rho(label)(x), t(e))`` whenever the instruction is
defined at ``x``. Several edges may be enabled at once; :func:`run` explores
all of them breadth-first and returns the shortest terminating branch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, NamedTuple

from .errors import UnknownInstruction
from .graph import ControlGraph, Edge
from .model import UNDEFINED, ModelOfComputation


@dataclass(frozen=True)
class Program(ControlGraph):
    model: str = "tm"


def make_program(edges, initial="i", terminal="t", states=None, model="tm") -> Program:
    """Convenience constructor from ``(source, target, label)`` triples.

    States are collected in first-appearance order unless given explicitly.
    """
    edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
    if states is None:
        seen = dict.fromkeys([initial])
        for e in edges:
            seen.setdefault(e.source)
            seen.setdefault(e.target)
        seen.setdefault(terminal)
        states = tuple(seen)
    return Program(tuple(states), edges, initial, terminal, model)


def check_labels(model: ModelOfComputation, program: Program) -> None:
    for e in program.edges:
        if e.label not in model:
            raise UnknownInstruction(f"edge label {e.label!r} is not an instruction of {model.name!r}")


class MachineState(NamedTuple):
    configuration: Any
    control: str


@dataclass(frozen=True)
class Terminated:
    configuration: Any
    steps: int


@dataclass(frozen=True)
class Stuck:
    state: MachineState


@dataclass(frozen=True)
class OutOfBudget:
    budget: int


@dataclass(frozen=True)
class Trace:
    """A finite orbit: ``states[k+1]`` follows from ``states[k]`` along ``edges[k]``."""

    states: tuple[MachineState, ...]
    edges: tuple[int, ...]
    outcome: Terminated | Stuck | OutOfBudget

    @property
    def terminated(self) -> bool:
        return isinstance(self.outcome, Terminated)

    @property
    def final(self) -> MachineState:
        return self.states[-1]

    def __len__(self):
        return len(self.edges)


def step(model: ModelOfComputation, program: Program, state: MachineState) -> list[tuple[int, MachineState]]:
    """All enabled ``(edge index, successor)`` pairs, in edge order."""
    x = state.configuration
    out = []
    for i in program.out_edges(state.control):
        e = program.edges[i]
        y = model.semantics[e.label](x)
        if y is not UNDEFINED:
            out.append((i, MachineState(y, e.target)))
    return out


def _walk_back(start: MachineState, parents: list[dict]) -> tuple[tuple[MachineState, ...], tuple[int, ...]]:
    states = [start]
    edges = []
    node = start
    for level in range(len(parents) - 1, 0, -1):
        prev, ei = parents[level][node]
        states.append(prev)
        edges.append(ei)
        node = prev
    states.reverse()
    edges.reverse()
    return tuple(states), tuple(edges)


def run(model: ModelOfComputation, program: Program, x0, budget: int = 10_000) -> Trace:
    """Execute ``program`` from ``(x0, initial)`` for at most ``budget`` steps.

    Exploration is breadth-first; machine states reached at the same depth
    are merged, keeping the first discovery (so ties go to lower edge
    indices along the earliest branch). Outcomes:

    * ``Terminated`` with the shortest branch reaching the terminal state;
    * ``Stuck`` when every branch dies before the terminal state, reporting
      the last state of the branch that always takes the first enabled edge;
    * ``OutOfBudget`` when branches are still alive after ``budget`` steps.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    for e in program.edges:
        if e.label not in model:
            raise UnknownInstruction(f"edge label {e.label!r} is not an instruction of {model.name!r}")
    start = MachineState(x0, program.initial)
    if program.initial == program.terminal:
        return Trace((start,), (), Terminated(x0, 0))
    parents: list[dict] = [{start: None}]
    frontier = [start]
    depth = 0
    while True:
        level: dict = {}
        for node in frontier:
            for ei, succ in step(model, program, node):
                if succ not in level:
                    level[succ] = (node, ei)
        if not level:
            break
        if depth == budget:
            states, edges = _walk_back(frontier[0], parents)
            return Trace(states, edges, OutOfBudget(budget))
        depth += 1
        parents.append(level)
        for succ in level:
            if succ.control == program.terminal:
                states, edges = _walk_back(succ, parents)
                return Trace(states, edges, Terminated(succ.configuration, depth))
        frontier = list(level)
    return _first_branch(model, program, start)


def _first_branch(model, program, start) -> Trace:
    states = [start]
    edges = []
    node = start
    while True:
        succs = step(model, program, node)
        if not succs:
            break
        ei, node = succs[0]
        edges.append(ei)
        states.append(node)
    return Trace(tuple(states), tuple(edges), Stuck(node))


def run_deterministic(model: ModelOfComputation, program: Program, x0, budget: int = 10_000) -> Trace:
    """Follow the first enabled edge at every step (no branching)."""
    node = MachineState(x0, program.initial)
    states = [node]
    edges = []
    while node.control != program.terminal:
        if len(edges) == budget:
            return Trace(tuple(states), tuple(edges), OutOfBudget(budget))
        succs = step(model, program, node)
        if not succs:
            return Trace(tuple(states), tuple(edges), Stuck(node))
        ei, node = succs[0]
        edges.append(ei)
        states.append(node)
    return Trace(tuple(states), tuple(edges), Terminated(node.configuration, len(edges)))


def replay(model: ModelOfComputation, program: Program, trace: Trace) -> bool:
    """Check that every recorded step is a valid edge application."""
    if len(trace.states) != len(trace.edges) + 1:
        return False
    if trace.states[0].control != program.initial:
        return False
    for k, ei in enumerate(trace.edges):
        before, after = trace.states[k], trace.states[k + 1]
        e = program.edges[ei]
        if e.source != before.control or e.target != after.control:
            return False
        if before.control == program.terminal:
            return False
        y = model.semantics[e.label](before.configuration)
        if y is UNDEFINED or y != after.configuration:
            return False
    if isinstance(trace.outcome, Terminated):
        return trace.final.control == program.terminal and trace.outcome.configuration == trace.final.configuration
    return True


@dataclass
class DeterminismReport:
    flagged: dict[str, list[tuple[str, str]]] = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return not self.flagged

    def __str__(self):
        if self.clean:
            return "locally deterministic"
        lines = ["possibly nondeterministic states:"]
        for s, pairs in self.flagged.items():
            lines.append(f"  {s}: " + ", ".join(f"{a} / {b}" for a, b in pairs))
        return "\n".join(lines)


def check_local_determinism(model: ModelOfComputation, program: ControlGraph) -> DeterminismReport:
    """Flag states with two out-edges not known to have disjoint domains."""
    report = DeterminismReport()
    for s in program.states:
        labels = [program.edges[i].label for i in program.out_edges(s)]
        pairs = []
        for a in range(len(labels)):
            for b in range(a + 1, len(labels)):
                if not model.are_disjoint(labels[a], labels[b]):
                    pairs.append((labels[a], labels[b]))
        if pairs:
            report.flagged[s] = pairs
    return report
