"""Finite edge-labelled control graphs with an initial and a terminal state."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable

from .errors import ConventionViolation


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    label: str


@dataclass(frozen=True)
class ControlGraph:
    states: tuple[str, ...]
    edges: tuple[Edge, ...]
    initial: str
    terminal: str

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "edges", tuple(self.edges))
        known = set(self.states)
        if len(known) != len(self.states):
            raise ValueError("duplicate state identifiers")
        if self.initial not in known or self.terminal not in known:
            raise ValueError("initial and terminal must be states of the graph")
        for e in self.edges:
            if e.source not in known or e.target not in known:
                raise ValueError(f"edge {e} has an endpoint outside the state set")
            if e.source == self.terminal:
                raise ConventionViolation(f"edge {e} leaves the terminal state")

    def out_edges(self, state: str) -> list[int]:
        return self._out().get(state, [])

    def in_edges(self, state: str) -> list[int]:
        return self._in().get(state, [])

    def _out(self):
        try:
            return self.__dict__["_out_cache"]
        except KeyError:
            out: dict[str, list[int]] = {}
            for i, e in enumerate(self.edges):
                out.setdefault(e.source, []).append(i)
            object.__setattr__(self, "_out_cache", out)
            return out

    def _in(self):
        try:
            return self.__dict__["_in_cache"]
        except KeyError:
            inn: dict[str, list[int]] = {}
            for i, e in enumerate(self.edges):
                inn.setdefault(e.target, []).append(i)
            object.__setattr__(self, "_in_cache", inn)
            return inn

    def label_multiset(self) -> Counter:
        return Counter(e.label for e in self.edges)

    def used_labels(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(e.label for e in self.edges))

    def renamed(self, mapping) -> "ControlGraph":
        """Rename states through ``mapping`` (a dict or a callable)."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return replace(
            self,
            states=tuple(f(s) for s in self.states),
            edges=tuple(Edge(f(e.source), f(e.target), e.label) for e in self.edges),
            initial=f(self.initial),
            terminal=f(self.terminal),
        )

    def relabelled(self, mapping) -> "ControlGraph":
        f = mapping if callable(mapping) else (lambda lab: mapping.get(lab, lab))
        return replace(self, edges=tuple(Edge(e.source, e.target, f(e.label)) for e in self.edges))


def as_graph(obj) -> ControlGraph:
    """Unwrap specified algorithms to their underlying labelled graph."""
    return getattr(obj, "syntax", obj)


def size(g) -> int:
    """|states| + |edges|."""
    g = as_graph(g)
    return len(g.states) + len(g.edges)


def _dot_id(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g, name: str = "G") -> str:
    """DOT text: the initial state gets an inbound arrow, the terminal a double circle."""
    g = as_graph(g)
    lines = [f"digraph {_dot_id(name)} {{", "  rankdir=TB;", '  __start [shape=point, label=""];']
    for s in g.states:
        shape = "doublecircle" if s == g.terminal else "circle"
        lines.append(f"  {_dot_id(s)} [shape={shape}];")
    lines.append(f"  __start -> {_dot_id(g.initial)};")
    for e in g.edges:
        lines.append(f"  {_dot_id(e.source)} -> {_dot_id(e.target)} [label={_dot_id(e.label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def fresh_names(base: Iterable[str], taken: set) -> list[str]:
    """Make each name in ``base`` unique against ``taken`` by priming it."""
    out = []
    for name in base:
        candidate = name
        while candidate in taken:
            candidate += "'"
        taken.add(candidate)
        out.append(candidate)
    return out
