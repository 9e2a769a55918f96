"""Program size, f-succinct algorithms, decomposition search, and a small census.

``size`` counts states plus edges. A program admits an f-succinct algorithm
when it is the glueing of some library programs along an algorithm ``A``
with ``size(A) <= f(size(P))``.
"""

from __future__ import annotations

import ast
import csv
import io
import itertools
import math
import operator
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .algorithms import SyntacticAlgorithm
from .errors import BudgetExceeded, ParseError
from .glueing import NOT_FOUND, check_implements
from .graph import ControlGraph, Edge, as_graph, size
from .isomorphism import canonical_form
from .program import Program, make_program


@dataclass(frozen=True)
class SizeFunction:
    name: str
    fn: Callable[[int], float]
    # f(n) < n is only promised for n above this
    threshold: int = 1

    def __call__(self, n: int) -> float:
        return self.fn(n)

    def spot_check(self, points: Sequence[int]) -> list[str]:
        """Violations of monotonicity or of f(n) < n at the given points."""
        problems = []
        pts = sorted(points)
        for a, b in zip(pts, pts[1:]):
            if self(a) > self(b):
                problems.append(f"{self.name} decreases between {a} and {b}")
        for n in pts:
            if n > self.threshold and not self(n) < n:
                problems.append(f"{self.name}({n}) = {self(n)} is not below {n}")
        return problems


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.FloorDiv: operator.floordiv,
    ast.Pow: operator.pow,
}
_FUNCS = {"sqrt": math.sqrt, "log": math.log, "log2": math.log2, "floor": math.floor, "ceil": math.ceil,
          "min": min, "max": max}


def parse_size_function(text: str, threshold: int = 1) -> SizeFunction:
    """Arithmetic in ``n``, e.g. ``n/2``, ``sqrt(n)``, ``n - 1``, ``2*log2(n)``."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError:
        raise ParseError(f"bad size function {text!r}") from None

    def ev(node, n):
        if isinstance(node, ast.Expression):
            return ev(node.body, n)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return node.value
        if isinstance(node, ast.Name) and node.id == "n":
            return n
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left, n), ev(node.right, n))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand, n)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            return _FUNCS[node.func.id](*(ev(a, n) for a in node.args))
        raise ParseError(f"unsupported syntax in size function {text!r}")

    ev(tree, 4)  # reject bad syntax early
    return SizeFunction(text, lambda n: ev(tree, n), threshold)


@dataclass(frozen=True)
class SuccinctVerdict:
    implements: bool
    size_algorithm: int
    size_program: int
    bound: float

    @property
    def succinct(self) -> bool:
        return self.implements and self.size_algorithm <= self.bound

    def __bool__(self):
        return self.succinct


def is_f_succinct(P, A, phi: Mapping, f: Callable[[int], float]) -> SuccinctVerdict:
    n = size(P)
    return SuccinctVerdict(bool(check_implements(P, A, phi)), size(A), n, f(n))


def trivial_decomposition(P) -> tuple[SyntacticAlgorithm, dict[str, Program]]:
    """P as its own algorithm: one label per instruction, each a single-edge program."""
    P = as_graph(P)
    A = SyntacticAlgorithm(P.states, P.edges, P.initial, P.terminal)
    model = getattr(P, "model", "tm")
    return A, {lab: make_program([("i", "t", lab)], model=model) for lab in A.labels}


# ---------------------------------------------------------------------------
# decomposition search


@dataclass(frozen=True)
class Segment:
    """An embedding of a library program into P."""

    name: str
    edges: frozenset[int]  # edge indices of P
    source: str  # image of the component's initial state
    target: str  # image of the component's terminal state
    inner: frozenset[str]  # images of the other states


def embeddings(P: ControlGraph, C: ControlGraph, name: str, limit: int = 10_000) -> list[Segment]:
    """Label-preserving embeddings of ``C`` into ``P``, as segments.

    Inner states of ``C`` map injectively to states of ``P`` whose edges all
    come from the embedding; the initial and terminal images may coincide
    (a self-loop in the algorithm).
    """
    if not C.edges:
        return []
    inner_c = [q for q in C.states if q not in (C.initial, C.terminal)]
    if any(not C.in_edges(q) and not C.out_edges(q) for q in C.states):
        return []  # isolated states cannot be pinned down by edges
    degree = {s: len(P.in_edges(s)) + len(P.out_edges(s)) for s in P.states}
    out: list[Segment] = []
    seen = set()
    c_edges = list(range(len(C.edges)))
    # order component edges so each one touches an already-placed state when possible
    order, placed = [], {C.initial}
    rest = set(c_edges)
    while rest:
        nxt = min(rest, key=lambda i: (not ({C.edges[i].source, C.edges[i].target} & placed), i))
        order.append(nxt)
        rest.discard(nxt)
        placed |= {C.edges[nxt].source, C.edges[nxt].target}

    smap: dict[str, str] = {}
    emap: dict[int, int] = {}

    def can_map(q, s) -> bool:
        if q in smap:
            return smap[q] == s
        if q in (C.initial, C.terminal):
            other = C.terminal if q == C.initial else C.initial
            # boundary images may coincide with each other, never with inner images
            return all(v != s or k == other for k, v in smap.items())
        if s in (P.initial, P.terminal):
            return False
        if s in smap.values():
            return False
        return degree[s] == len(C.in_edges(q)) + len(C.out_edges(q))

    def extend(k):
        if len(out) >= limit:
            return
        if k == len(order):
            key = frozenset(emap.values())
            seg = Segment(
                name,
                key,
                smap[C.initial],
                smap[C.terminal],
                frozenset(smap[q] for q in inner_c),
            )
            if seg not in seen:
                seen.add(seg)
                out.append(seg)
            return
        ce = C.edges[order[k]]
        used = set(emap.values())
        for pi, pe in enumerate(P.edges):
            if pi in used or pe.label != ce.label:
                continue
            new = []
            ok = True
            for q, s in ((ce.source, pe.source), (ce.target, pe.target)):
                if q in smap:
                    ok = smap[q] == s
                elif can_map(q, s):
                    smap[q] = s
                    new.append(q)
                else:
                    ok = False
                if not ok:
                    break
            if ok:
                emap[order[k]] = pi
                extend(k + 1)
                del emap[order[k]]
            for q in new:
                del smap[q]

    extend(0)
    return out


@dataclass(frozen=True)
class Decomposition:
    algorithm: SyntacticAlgorithm
    labelling: dict[str, Program]
    verdict: SuccinctVerdict


def _segments_to_algorithm(P: ControlGraph, segs: list[Segment]) -> SyntacticAlgorithm:
    inner = set().union(*(s.inner for s in segs)) if segs else set()
    states = tuple(s for s in P.states if s not in inner)
    edges = tuple(Edge(s.source, s.target, s.name) for s in sorted(segs, key=lambda s: min(s.edges)))
    return SyntacticAlgorithm(states, edges, P.initial, P.terminal)


def find_succinct(P, library: Mapping[str, ControlGraph], f: Callable[[int], float], budget: int = 100_000):
    """Search edge partitions of ``P`` into copies of library programs.

    Returns the first :class:`Decomposition` (segments tried largest first,
    covering the lowest uncovered edge) whose skeleton meets the size bound
    and passes :func:`check_implements`; ``NOT_FOUND`` otherwise.
    """
    P = as_graph(P)
    n = size(P)
    bound = f(n)
    segs_by_edge: dict[int, list[Segment]] = {i: [] for i in range(len(P.edges))}
    for name, C in library.items():
        C = as_graph(C)
        if C.initial == C.terminal:
            continue
        for seg in embeddings(P, C, name):
            segs_by_edge[min(seg.edges)].append(seg)
    for lst in segs_by_edge.values():
        lst.sort(key=lambda s: (-len(s.edges), list(library).index(s.name), sorted(s.edges)))

    covered: set[int] = set()
    inner: set[str] = set()
    boundary: dict[str, int] = {}
    chosen: list[Segment] = []
    nodes = 0
    if not P.edges:
        A = SyntacticAlgorithm(P.states, (), P.initial, P.terminal)
        v = is_f_succinct(P, A, {}, f)
        return Decomposition(A, {}, v) if v else NOT_FOUND

    def search():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("decomposition search budget exhausted")
        free = [i for i in range(len(P.edges)) if i not in covered]
        if not free:
            A = _segments_to_algorithm(P, chosen)
            if size(A) > bound:
                return None
            phi = {s.name: library[s.name] for s in chosen}
            v = is_f_succinct(P, A, phi, f)
            return Decomposition(A, phi, v) if v else None
        lowest = free[0]
        for seg in segs_by_edge[lowest]:
            if seg.edges & covered:
                continue
            if seg.inner & inner or seg.inner & boundary.keys():
                continue
            if {seg.source, seg.target} & inner:
                continue
            chosen.append(seg)
            covered.update(seg.edges)
            inner.update(seg.inner)
            for b in (seg.source, seg.target):
                boundary[b] = boundary.get(b, 0) + 1
            found = search()
            chosen.pop()
            covered.difference_update(seg.edges)
            inner.difference_update(seg.inner)
            for b in (seg.source, seg.target):
                boundary[b] -= 1
                if not boundary[b]:
                    del boundary[b]
            if found:
                return found
        return None

    try:
        found = search()
    except BudgetExceeded:
        return NOT_FOUND
    return found or NOT_FOUND


# ---------------------------------------------------------------------------
# census


def enumerate_programs(n: int, instructions: Sequence[str], model: str = "tm") -> list[Program]:
    """All programs of size exactly ``n`` with distinct initial and terminal states, up to isomorphism."""
    out, keys = [], set()
    for k in range(2, n + 1):
        m = n - k
        states = ("i", "t") + tuple(f"s{j}" for j in range(k - 2))
        triples = [(a, b, lab) for a in states if a != "t" for b in states for lab in instructions]
        for combo in itertools.combinations_with_replacement(triples, m):
            p = make_program(combo, states=states, model=model)
            key = canonical_form(p)
            if key not in keys:
                keys.add(key)
                out.append(p)
    return out


def default_library(instructions: Sequence[str], model: str = "tm") -> dict[str, Program]:
    """Single instructions and two-step chains."""
    lib = {f"[{a}]": make_program([("i", "t", a)], model=model) for a in instructions}
    for a, b in itertools.product(instructions, repeat=2):
        lib[f"[{a};{b}]"] = make_program([("i", "m", a), ("m", "t", b)], model=model)
    return lib


@dataclass(frozen=True)
class CensusRow:
    n: int
    programs_enumerated: int
    succinct_count: int

    @property
    def fraction(self) -> float:
        return self.succinct_count / self.programs_enumerated if self.programs_enumerated else 0.0


def census(
    n: int,
    f: Callable[[int], float],
    instructions: Sequence[str] = ("right", "write_1"),
    budget: int = 1_000_000,
    library: Mapping[str, ControlGraph] | None = None,
    model: str = "tm",
    search_budget: int = 10_000,
) -> list[CensusRow]:
    """Succinct fraction among programs of each size 2..n.

    ``budget`` caps the total number of programs enumerated; past it
    :class:`BudgetExceeded` is raised with the rows finished so far.
    """
    library = default_library(instructions, model) if library is None else library
    rows: list[CensusRow] = []
    total = 0
    for size_n in range(2, n + 1):
        progs = enumerate_programs(size_n, instructions, model)
        total += len(progs)
        if total > budget:
            raise BudgetExceeded(f"census enumeration passed {budget} programs at size {size_n}", rows)
        hits = sum(1 for p in progs if find_succinct(p, library, f, search_budget))
        rows.append(CensusRow(size_n, len(progs), hits))
    return rows


def census_csv(rows: Sequence[CensusRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "programs_enumerated", "succinct_count", "fraction"])
    for r in rows:
        w.writerow([r.n, r.programs_enumerated, r.succinct_count, f"{r.fraction:.6f}"])
    return buf.getvalue()
