"""Isomorphism of edge-labelled directed multigraphs with initial and terminal states.

Colour refinement narrows the candidates for each state, then a
backtracking search extends a partial state map while checking the
labelled edge multiplicities between already-mapped states.
"""

from __future__ import annotations

from collections import Counter

from .graph import ControlGraph, as_graph


def _pair_counts(g: ControlGraph) -> dict[tuple[str, str], Counter]:
    out: dict[tuple[str, str], Counter] = {}
    for e in g.edges:
        out.setdefault((e.source, e.target), Counter())[e.label] += 1
    return out


def _refine(graphs: list[ControlGraph]) -> list[dict[str, int]]:
    """Joint colour refinement, so colour ids are comparable across graphs."""
    colours = []
    for g in graphs:
        colours.append({s: (s == g.initial, s == g.terminal) for s in g.states})
    table: dict = {}
    ncolours = -1
    while True:
        table = {}
        new = []
        for g, col in zip(graphs, colours):
            sig = {}
            for s in g.states:
                outs = sorted((g.edges[i].label, col[g.edges[i].target]) for i in g.out_edges(s))
                ins = sorted((g.edges[i].label, col[g.edges[i].source]) for i in g.in_edges(s))
                key = (col[s], tuple(map(repr, outs)), tuple(map(repr, ins)))
                sig[s] = table.setdefault(key, len(table))
            new.append(sig)
        colours = new
        if len(table) == ncolours:
            return colours
        ncolours = len(table)


def graph_isomorphic(g1, g2) -> dict[str, str] | None:
    """A state bijection carrying ``g1`` onto ``g2`` (labels, initial, terminal kept), or ``None``."""
    g1, g2 = as_graph(g1), as_graph(g2)
    if len(g1.states) != len(g2.states) or len(g1.edges) != len(g2.edges):
        return None
    if g1.label_multiset() != g2.label_multiset():
        return None
    c1, c2 = _refine([g1, g2])
    if Counter(c1.values()) != Counter(c2.values()):
        return None
    p1, p2 = _pair_counts(g1), _pair_counts(g2)
    by_colour: dict[int, list[str]] = {}
    for s in g2.states:
        by_colour.setdefault(c2[s], []).append(s)

    # visit states in breadth-first order from the initial state, so that
    # each new state is usually adjacent to one already mapped
    order, seen = [], set()
    for root in [g1.initial] + list(g1.states):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            s = queue.pop(0)
            order.append(s)
            nbrs = [g1.edges[i].target for i in g1.out_edges(s)] + [g1.edges[i].source for i in g1.in_edges(s)]
            for t in nbrs:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)

    mapping: dict[str, str] = {}
    used: set[str] = set()
    empty = Counter()

    def consistent(s, t) -> bool:
        if p1.get((s, s), empty) != p2.get((t, t), empty):
            return False
        for a, b in mapping.items():
            if p1.get((s, a), empty) != p2.get((t, b), empty):
                return False
            if p1.get((a, s), empty) != p2.get((b, t), empty):
                return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        s = order[k]
        for t in by_colour.get(c1[s], ()):
            if t in used or not consistent(s, t):
                continue
            mapping[s] = t
            used.add(t)
            if extend(k + 1):
                return True
            del mapping[s]
            used.discard(t)
        return False

    if extend(0):
        return {s: mapping[s] for s in g1.states}
    return None


def is_isomorphic(g1, g2) -> bool:
    return graph_isomorphic(g1, g2) is not None


def canonical_form(g) -> tuple:
    """A key equal for two graphs exactly when they are isomorphic.

    Brute force over orderings of the non-distinguished states, so only for
    small graphs (used by the census enumerator).
    """
    from itertools import permutations

    g = as_graph(g)
    others = [s for s in g.states if s not in (g.initial, g.terminal)]
    best = None
    for perm in permutations(range(len(others))):
        index = {g.initial: 0, g.terminal: 1}
        for s, k in zip(others, perm):
            index[s] = k + 2
        key = tuple(sorted((index[e.source], index[e.target], e.label) for e in g.edges))
        if best is None or key < best:
            best = key
    return (len(g.states), best)
