"""Glueing programs and algorithms along an algorithm, and what can be built on it.

``glue(A, phi)`` takes one fresh copy of ``phi(label(e))`` per edge ``e`` of
``A`` and identifies, at every vertex ``v`` of ``A``, the initial states of
the copies on edges leaving ``v`` and the terminal states of the copies on
edges entering ``v``. The merged state keeps the vertex name; the other
states of the copy on edge number ``k`` are named ``e{k}.{state}``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algorithms import (
    LogicalAlgorithm,
    SemanticAlgorithm,
    SyntacticAlgorithm,
    as_syntactic,
    make_algorithm,
)
from .data import BOTTOM, AbstractDataStructure, AnchoredOperation, StructuralMap
from .errors import ArityMismatch, ConventionViolation, MissingLabel, SpecificationMismatch
from .graph import ControlGraph, Edge, as_graph, fresh_names
from .isomorphism import graph_isomorphic
from .program import Program, make_program
from .representation import ImplementationMap, Interpretation, MapVerdict, verify_implementation

BOTTOM_LABEL = "⊥"


class _NotFound:
    def __repr__(self):
        return "NotFound"

    def __bool__(self):
        return False


NOT_FOUND = _NotFound()


def _components(A: ControlGraph, phi: Mapping) -> list[ControlGraph]:
    comps = []
    for e in A.edges:
        if e.label not in phi:
            raise MissingLabel(f"labelling has no component for label {e.label!r}")
        c = as_graph(phi[e.label])
        if c.initial == c.terminal:
            raise ConventionViolation(f"component for {e.label!r} has equal initial and terminal states")
        comps.append(c)
    return comps


@dataclass(frozen=True)
class PreGlue:
    """The disjoint union of per-edge copies, before any identification."""

    states: tuple[tuple[int, str], ...]
    edges: tuple[tuple[tuple[int, str], tuple[int, str], str], ...]
    boundaries: tuple[tuple[tuple[int, str], tuple[int, str]], ...]  # (initial, terminal) per copy


def preglue(A, phi: Mapping) -> PreGlue:
    A = as_graph(A)
    comps = _components(A, phi)
    states, edges, bounds = [], [], []
    for k, c in enumerate(comps):
        states += [(k, q) for q in c.states]
        edges += [((k, f.source), (k, f.target), f.label) for f in c.edges]
        bounds.append(((k, c.initial), (k, c.terminal)))
    return PreGlue(tuple(states), tuple(edges), tuple(bounds))


@dataclass(frozen=True)
class GlueTrace:
    # glued state -> ("vertex", v) or ("copy", edge index, component state)
    states: Mapping[str, tuple]
    # glued edge index -> (edge index of A, edge index in the component)
    edges: Mapping[int, tuple[int, int]]


def _glue_graph(A: ControlGraph, phi: Mapping):
    comps = _components(A, phi)
    taken = set(A.states)
    state_of: dict[tuple[int, str], str] = {}
    provenance: dict[str, tuple] = {v: ("vertex", v) for v in A.states}
    states = list(A.states)
    for k, (e, c) in enumerate(zip(A.edges, comps)):
        state_of[(k, c.initial)] = e.source
        state_of[(k, c.terminal)] = e.target
        inner = [q for q in c.states if q not in (c.initial, c.terminal)]
        for q, name in zip(inner, fresh_names([f"e{k}.{q}" for q in inner], taken)):
            state_of[(k, q)] = name
            provenance[name] = ("copy", k, q)
            states.append(name)
    edges, eprov = [], {}
    for k, c in enumerate(comps):
        for j, f in enumerate(c.edges):
            eprov[len(edges)] = (k, j)
            edges.append(Edge(state_of[(k, f.source)], state_of[(k, f.target)], f.label))
    for f in edges:
        if f.source == A.terminal:
            raise ConventionViolation(f"glued edge {f} leaves the terminal state")
    return tuple(states), tuple(edges), comps, GlueTrace(provenance, eprov)


def _common_model(comps, default: str) -> str:
    models = {c.model for c in comps if isinstance(c, Program)}
    if len(models) > 1:
        raise SpecificationMismatch(f"components over different models: {sorted(models)}")
    return models.pop() if models else default


def glue_traced(A, phi: Mapping, model: str | None = None) -> tuple[Program, GlueTrace]:
    A = as_graph(A)
    states, edges, comps, trace = _glue_graph(A, phi)
    return Program(states, edges, A.initial, A.terminal, _common_model(comps, model or "tm")), trace


def glue(A, phi: Mapping, model: str | None = None) -> Program:
    """The program obtained by glueing the programs ``phi`` along ``A``."""
    return glue_traced(A, phi, model)[0]


def glued_counts(A, phi: Mapping) -> tuple[int, int]:
    """State and edge counts of ``glue(A, phi)``, by formula."""
    A = as_graph(A)
    comps = _components(A, phi)
    return (
        len(A.states) + sum(len(c.states) - 2 for c in comps),
        sum(len(c.edges) for c in comps),
    )


def glue_alg(A, phi: Mapping):
    """Glue algorithms along ``A``.

    The result is semantic (resp. logical) when every component is semantic
    over the same structure (resp. logical over the same theory); the
    meaning of each label is then inherited from the components.
    """
    A = as_graph(A)
    states, edges, comps, _ = _glue_graph(A, phi)
    used = [phi[e.label] for e in A.edges]
    labels = []
    for c in used:
        labels += list(as_syntactic(c).labels)
    syntax = SyntacticAlgorithm(states, edges, A.initial, A.terminal, tuple(dict.fromkeys(labels)))
    if used and all(isinstance(c, SemanticAlgorithm) for c in used):
        structure = used[0].structure
        for c in used:
            if c.structure is not structure and c.structure.name != structure.name:
                raise SpecificationMismatch(f"components over {structure.name} and {c.structure.name}")
        meaning, frame = _merge_meanings(used, lambda x, y: x is y or (x.map is y.map and x.name == y.name))
        return SemanticAlgorithm(syntax, structure, meaning, frame)
    if used and all(isinstance(c, LogicalAlgorithm) for c in used):
        theory = used[0].theory
        for c in used:
            if c.theory is not theory and c.theory.name != theory.name:
                raise SpecificationMismatch(f"components over theories {theory.name} and {c.theory.name}")
        meaning, frame = _merge_meanings(used, lambda x, y: x == y)
        return LogicalAlgorithm(syntax, theory, meaning, frame)
    return syntax


def _merge_meanings(comps, same):
    meaning, frame = {}, {}
    for c in comps:
        for lab in c.labels:
            m = c.meaning[lab]
            if lab in meaning and not same(meaning[lab], m):
                raise SpecificationMismatch(f"label {lab!r} has different meanings in two components")
            meaning[lab] = m
        for v in c.frame:
            frame.setdefault(v)
    return meaning, tuple(frame)


# ---------------------------------------------------------------------------
# implementation checks


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: dict | None = None
    reason: str = ""

    def __bool__(self):
        return self.holds


def check_implements(P, A, phi: Mapping) -> Verdict:
    """Whether ``P`` is, up to isomorphism, the glueing of ``phi`` along ``A``."""
    try:
        G = glue(A, phi)
    except (MissingLabel, ConventionViolation, SpecificationMismatch) as exc:
        return Verdict(False, None, str(exc))
    witness = graph_isomorphic(G, P)
    if witness is None:
        return Verdict(False, None, "the glueing is not isomorphic to the program")
    return Verdict(True, witness)


def search_implementation(P, A, library: Mapping[str, ControlGraph], bound: int = 100_000):
    """First labelling from ``library`` (in library order) that makes ``P`` a glueing along ``A``."""
    P, A = as_graph(P), as_graph(A)
    labels = list(as_syntactic(A).used_labels())
    names = list(library)
    if labels and not names:
        return NOT_FOUND
    count = {lab: 0 for lab in labels}
    for e in A.edges:
        count[e.label] += 1
    for n, choice in enumerate(itertools.product(names, repeat=len(labels))):
        if n >= bound:
            break
        phi = {lab: library[name] for lab, name in zip(labels, choice)}
        comps = [as_graph(c) for c in phi.values()]
        if any(c.initial == c.terminal for c in comps):
            continue
        n_edges = sum(count[lab] * len(as_graph(phi[lab]).edges) for lab in labels)
        n_states = len(A.states) + sum(count[lab] * (len(as_graph(phi[lab]).states) - 2) for lab in labels)
        if n_edges != len(P.edges) or n_states != len(P.states):
            continue
        if check_implements(P, A, phi):
            return phi
    return NOT_FOUND


@dataclass
class CoherenceReport:
    verdicts: dict[str, MapVerdict] = field(default_factory=dict)

    @property
    def coherent(self) -> bool:
        return all(v.passed for v in self.verdicts.values())

    def __bool__(self):
        return self.coherent

    def __str__(self):
        if not self.verdicts:
            return "coherent (no labels)"
        lines = []
        for lab, v in self.verdicts.items():
            line = f"{lab:<16} {'pass' if v.passed else 'FAIL'}  ({v.checked} inputs)"
            if v.failures:
                line += f"  witness {v.failures[0][0]}"
            lines.append(line)
        return "\n".join(lines)


def check_coherent(
    phi: Mapping[str, Program],
    alg: SemanticAlgorithm,
    model,
    interpretation: Interpretation,
    samples: int = 50,
    budget: int = 100_000,
    seed: int = 0,
) -> CoherenceReport:
    """Check that each ``phi[label]`` implements the label's map under ``interpretation``."""
    report = CoherenceReport()
    for lab in alg.labels:
        if lab not in phi:
            raise MissingLabel(f"labelling has no program for {lab!r}")
        m = alg.meaning[lab].map
        single = AbstractDataStructure(alg.structure.domain, {m.name: m}, alg.structure.name)
        impl = ImplementationMap(interpretation, {m.name: phi[lab]})
        res = verify_implementation(model, single, impl, samples, budget, seed, maps=[m.name])
        v = res.verdicts[m.name]
        v.name = lab
        report.verdicts[lab] = v
    return report


def compose_labellings(A, phi_alg: Mapping, psi: Mapping, model: str | None = None) -> dict[str, Program]:
    """theta(o) = glue(phi_alg(o), psi), so that glue(A, theta) is glue(glue_alg(A, phi_alg), psi)."""
    A = as_graph(A)
    theta = {}
    for lab in as_syntactic(A).used_labels():
        if lab not in phi_alg:
            raise MissingLabel(f"algorithm labelling has no component for {lab!r}")
        theta[lab] = glue(phi_alg[lab], psi, model)
    return theta


# ---------------------------------------------------------------------------
# unfolding


def unfold(alg, label: str, depth: int, order: str = "forward"):
    """Substitute ``alg`` for its recursive label ``depth`` times.

    For a syntactic algorithm, ``label`` is an edge label. For a semantic
    algorithm, ``label`` names the recursive map (as in ``sort``): every
    label whose meaning is that map, or a pipeline of calls to it, recurses.
    Calls are wired in through fresh copies of the frame; ``order`` decides
    in which order the calls of a multi-call label run. Edges still
    recursive after ``depth`` rounds are relabelled ``⊥``, which is defined
    nowhere.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if isinstance(alg, SemanticAlgorithm):
        return _unfold_semantic(alg, label, depth, order)
    A = as_syntactic(alg)
    if label not in A.used_labels():
        raise MissingLabel(f"no edge labelled {label!r}")
    cur = A
    for _ in range(depth):
        phi = {lab: _single(lab) for lab in cur.used_labels()}
        phi[label] = A
        cur = glue_alg(cur, phi)
    return cur.relabelled({label: BOTTOM_LABEL})


def _single(label: str) -> SyntacticAlgorithm:
    return make_algorithm([("i", "t", label)])


def _single_sem(label, op, alg) -> SemanticAlgorithm:
    return SemanticAlgorithm(_single(label), alg.structure, {label: op}, _frame(op))


def _frame(op):
    return tuple(dict.fromkeys(op.inputs + op.outputs))


def _calls(op: AnchoredOperation, target: str):
    """The (inputs, outputs) of each call to ``target`` made by ``op``, or None."""
    if op.map.name == target:
        return [(op.inputs, op.outputs)]
    stages = op.map.pipeline
    if not stages or any(s.map.name != target for s in stages):
        return None
    # stage variables live in the composite's frame; map them to the anchor's
    rename = dict(zip(op.map.frame_in, op.inputs))
    rename.update(zip(op.map.frame_out, op.outputs))
    return [(tuple(rename[v] for v in s.inputs), tuple(rename[v] for v in s.outputs)) for s in stages]


def _unfold_semantic(alg: SemanticAlgorithm, target: str, depth: int, order: str):
    if order not in ("forward", "reverse"):
        raise ValueError("order must be 'forward' or 'reverse'")
    rec = {lab: _calls(alg.meaning[lab], target) for lab in alg.labels}
    rec = {lab: calls for lab, calls in rec.items() if calls}
    if not rec:
        raise MissingLabel(f"no label of {alg.name or 'the algorithm'} calls {target!r}")
    spec = alg.computes or _guess_computes(alg, target, rec)
    domain = alg.structure.domain

    copies: dict[int, SemanticAlgorithm] = {0: alg}
    cache: dict[str, AnchoredOperation] = {}

    def copy(k: int) -> SemanticAlgorithm:
        if k not in copies:
            rv = lambda v: f"{v}_{k}"  # noqa: E731
            rl = lambda lab: f"{lab}#{k}"  # noqa: E731
            meaning = {rl(lab): alg.meaning[lab].renamed(rv) for lab in alg.labels}
            copies[k] = SemanticAlgorithm(
                alg.syntax.relabelled(rl), alg.structure, meaning, tuple(map(rv, alg.frame))
            )
        return copies[k]

    def level_label(lab, k):
        return lab if k == 0 else f"{lab}#{k}"

    cur = alg
    for k in range(1, depth + 1):
        body = copy(k)
        rv = lambda v, k=k: f"{v}_{k}"  # noqa: E731
        phi = {}
        for lab in cur.labels:
            phi[lab] = _single_sem(lab, cur.meaning[lab], cur)
        for lab in rec:
            name = level_label(lab, k - 1)
            if name not in cur.meaning:
                continue
            calls = _calls(cur.meaning[name], target)
            seq = calls if order == "forward" else calls[::-1]
            phi[name] = _call_chain(body, spec, seq, rv, domain, k, cache)
        cur = glue_alg(cur.syntax, phi)
    bottom = AnchoredOperation(BOTTOM, (), ())
    last = {level_label(lab, depth) for lab in rec}
    syntax = cur.syntax.relabelled(lambda lab: BOTTOM_LABEL if lab in last else lab)
    meaning = {lab: m for lab, m in cur.meaning.items() if lab not in last}
    meaning[BOTTOM_LABEL] = bottom
    out = SemanticAlgorithm(syntax, alg.structure, meaning, cur.frame, alg.computes, f"{alg.name}^{depth}")
    return out


def _guess_computes(alg, target, rec):
    # without a declared spec, assume the algorithm computes target on the
    # variables of the first call made by its recursive labels
    ins, outs = next(iter(rec.values()))[0]
    return AnchoredOperation(alg.structure[target], ins, outs)


def _call_chain(body: SemanticAlgorithm, spec: AnchoredOperation, calls, rv, domain, k, cache) -> SemanticAlgorithm:
    """Load arguments into the copy's frame, run it, copy the results back; once per call."""
    edges = []
    node = "i"
    params = tuple(map(rv, spec.inputs))
    results = tuple(map(rv, spec.outputs))
    others = tuple(v for v in body.frame if v not in params)
    for j, (ins, outs) in enumerate(calls):
        if len(ins) != len(params) or len(outs) != len(results):
            raise ArityMismatch(
                f"call {','.join(outs)} = {spec.map.name}({','.join(ins)}) does not match "
                f"{','.join(results)} = {spec.map.name}({','.join(params)})"
            )
        a, b = f"c{j}.in", f"c{j}.out"
        c = "t" if j == len(calls) - 1 else f"c{j + 1}"
        lab_in = f"{','.join(params)} = {','.join(ins)}"
        lab_out = f"{','.join(outs)} = {','.join(results)}"
        if lab_in not in cache:
            load = StructuralMap(
                "load", len(ins), len(params) + len(others), lambda *xs, n=len(others): xs + (domain.default,) * n
            )
            cache[lab_in] = AnchoredOperation(load, ins, params + others)
        if lab_out not in cache:
            store = StructuralMap("store", len(results), len(outs), lambda *xs: xs)
            cache[lab_out] = AnchoredOperation(store, results, outs)
        edges += [(node, a, lab_in), (a, b, f"call#{k}"), (b, c, lab_out)]
        node = c
    chain = make_algorithm(edges)
    phi = {
        lab: SemanticAlgorithm(_single(lab), body.structure, {lab: cache[lab]}, _frame(cache[lab]))
        for lab in chain.labels
        if lab != f"call#{k}"
    }
    phi[f"call#{k}"] = body
    return glue_alg(chain, phi)


# ---------------------------------------------------------------------------
# random instances


def random_graph(
    rng: random.Random,
    labels: Sequence[str],
    max_states: int = 5,
    max_edges: int = 6,
    min_states: int = 2,
    prefix: str = "q",
) -> tuple[tuple[str, ...], list[tuple[str, str, str]]]:
    """States (initial first, terminal second) and edges; nothing leaves the terminal."""
    n = rng.randint(min_states, max_states)
    states = ("i", "t") + tuple(f"{prefix}{j}" for j in range(n - 2))
    sources = [s for s in states if s != "t"]
    edges = [(rng.choice(sources), rng.choice(states), rng.choice(list(labels))) for _ in range(rng.randint(0, max_edges))]
    return states, edges


def random_program(rng, instructions, max_states=5, max_edges=6, model="tm") -> Program:
    states, edges = random_graph(rng, instructions, max_states, max_edges)
    return make_program(edges, states=states, model=model)


def random_algorithm(rng, labels, max_states=5, max_edges=6) -> SyntacticAlgorithm:
    states, edges = random_graph(rng, labels, max_states, max_edges, prefix="v")
    return make_algorithm(edges, states=states, labels=labels)


def random_instance(rng: random.Random, n_labels: int = 4, max_edges: int = 6, max_states: int = 5, instructions=None):
    """A random algorithm over at most ``n_labels`` labels and a program labelling for it."""
    instructions = instructions or ["right", "left", "write_0", "write_1", "read_0", "read_1"]
    labels = [f"o{j}" for j in range(rng.randint(1, n_labels))]
    A = random_algorithm(rng, labels, max_states, max_edges)
    phi = {lab: random_program(rng, instructions, max_states, max_edges) for lab in labels}
    return A, phi
