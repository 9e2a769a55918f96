"""Abstract data domains and structures.

A structure is a carrier plus named partial maps ``D^k -> D^k'``. Maps take
and return tuples; a partial map returns ``UNDEFINED`` outside its domain.
Tests (relations) are partial identities.

Inside an algorithm, maps act on environments (variable stores) through
:class:`AnchoredOperation`, which names the variables a map reads and the
ones it writes. :func:`induced_model` turns a set of anchored operations into
a model of computation over environments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import FrameMismatch, ParseError, UnknownVariable
from .model import UNDEFINED, ConfigurationSpace, ModelOfComputation


@dataclass(frozen=True, eq=False)
class DataDomain:
    name: str
    sample: Callable[[random.Random, int], Any]
    render: Callable[[Any], str] = str
    parse: Callable[[str], Any] | None = None
    elements: tuple | None = None  # the whole carrier, when finite and small
    default: Any = None
    sample_size: int = 20  # default size bound handed to ``sample``
    equal: Callable[[Any, Any], bool] = lambda a, b: a == b

    def draw(self, rng: random.Random, size: int | None = None):
        return self.sample(rng, self.sample_size if size is None else size)

    def tuples(self, arity: int, rng: random.Random, count: int, size: int | None = None) -> list[tuple]:
        """``count`` tuples of the given arity; exhaustive when the carrier is finite and small."""
        if self.elements is not None and len(self.elements) ** arity <= count:
            import itertools

            return list(itertools.product(self.elements, repeat=arity))
        seen = dict()
        for _ in range(count):
            seen.setdefault(tuple(self.draw(rng, size) for _ in range(arity)))
        return list(seen)


@dataclass(frozen=True, eq=False)
class StructuralMap:
    name: str
    dom: int
    im: int
    fn: Callable[..., Any]
    # composite maps remember how they were built
    pipeline: tuple = ()
    frame_in: tuple[str, ...] = ()
    frame_out: tuple[str, ...] = ()

    def __call__(self, *args):
        if len(args) != self.dom:
            from .errors import ArityMismatch

            raise ArityMismatch(f"{self.name} expects {self.dom} arguments, got {len(args)}")
        out = self.fn(*args)
        if out is UNDEFINED:
            return UNDEFINED
        out = tuple(out)
        if len(out) != self.im:
            raise ValueError(f"{self.name} returned {len(out)} values, declared {self.im}")
        return out

    def __repr__(self):
        return f"StructuralMap({self.name}: {self.dom} -> {self.im})"


def total(name: str, dom: int, im: int, fn) -> StructuralMap:
    """Wrap a plain function; a scalar result is promoted to a 1-tuple."""
    if im == 1:
        return StructuralMap(name, dom, 1, lambda *a: (fn(*a),))
    return StructuralMap(name, dom, im, fn)


def partial(name: str, dom: int, im: int, fn, defined) -> StructuralMap:
    base = total(name, dom, im, fn).fn
    return StructuralMap(name, dom, im, lambda *a: base(*a) if defined(*a) else UNDEFINED)


def guard(name: str, dom: int, pred) -> StructuralMap:
    """The partial identity on the tuples satisfying ``pred``."""
    return StructuralMap(name, dom, dom, lambda *a: a if pred(*a) else UNDEFINED)


def identity_map(k: int = 1, name: str | None = None) -> StructuralMap:
    return StructuralMap(name or ("id" if k == 1 else f"id{k}"), k, k, lambda *a: a)


def swap_map() -> StructuralMap:
    return StructuralMap("swap", 2, 2, lambda a, b: (b, a))


BOTTOM = StructuralMap("bottom", 0, 0, lambda: UNDEFINED)


@dataclass(frozen=True, eq=False)
class AbstractDataStructure:
    domain: DataDomain
    maps: Mapping[str, StructuralMap]
    name: str = ""
    # groups of guard names pairwise disjoint when read on the same variables
    disjoint: tuple[frozenset, ...] = ()

    def __post_init__(self):
        maps = dict(self.maps)
        for key, m in maps.items():
            if key != m.name:
                raise ValueError(f"map registered as {key!r} is named {m.name!r}")
        object.__setattr__(self, "maps", maps)
        if not self.name:
            object.__setattr__(self, "name", self.domain.name)

    def __getitem__(self, name: str) -> StructuralMap:
        return self.maps[name]

    def __contains__(self, name) -> bool:
        return name in self.maps

    def extended(self, *new_maps: StructuralMap, name: str | None = None, disjoint=()) -> "AbstractDataStructure":
        maps = dict(self.maps)
        for m in new_maps:
            maps[m.name] = m
        return AbstractDataStructure(self.domain, maps, name or self.name, self.disjoint + tuple(disjoint))


def maximal_arity(structure: AbstractDataStructure) -> int:
    return max((max(m.dom, m.im) for m in structure.maps.values()), default=0)


# ---------------------------------------------------------------------------
# Environments and anchoring


@dataclass(frozen=True)
class Environment:
    items: tuple[tuple[str, Any], ...] = ()

    def __post_init__(self):
        items = tuple((str(k), v) for k, v in self.items)
        names = [k for k, _ in items]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable in environment")
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "_index", {k: i for i, (k, _) in enumerate(items)})

    @classmethod
    def of(cls, mapping: Mapping[str, Any] | None = None, **kw) -> "Environment":
        data = dict(mapping or {})
        data.update(kw)
        return cls(tuple(data.items()))

    def __getitem__(self, name):
        try:
            return self.items[self._index[name]][1]
        except KeyError:
            raise UnknownVariable(name) from None

    def __contains__(self, name):
        return name in self._index

    def get(self, name, default=None):
        i = self._index.get(name)
        return default if i is None else self.items[i][1]

    @property
    def vars(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.items)

    def as_dict(self) -> dict:
        return dict(self.items)

    def updated(self, updates: Mapping[str, Any]) -> "Environment":
        items = list(self.items)
        extra = []
        for k, v in updates.items():
            i = self._index.get(k)
            if i is None:
                extra.append((k, v))
            else:
                items[i] = (k, v)
        if extra:
            return Environment(tuple(items) + tuple(extra))
        # same variables: reuse the index and skip validation
        env = object.__new__(Environment)
        object.__setattr__(env, "items", tuple(items))
        object.__setattr__(env, "_index", self._index)
        return env

    def render(self, render_value=str) -> str:
        return "{" + ", ".join(f"{k}: {render_value(v)}" for k, v in self.items) + "}"

    def __str__(self):
        return self.render()


def split_top_level(text: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_environment(text: str, domain: DataDomain | None = None) -> Environment:
    """Parse ``{x: 12, y: 8}``; values go through ``domain.parse`` when given."""
    body = text.strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise ParseError(f"environment literal must be braced: {text!r}")
    items = []
    for part in split_top_level(body[1:-1]):
        if ":" not in part:
            raise ParseError(f"bad binding {part!r}")
        k, v = part.split(":", 1)
        v = v.strip()
        if domain is not None and domain.parse is not None:
            val = domain.parse(v)
        else:
            import ast

            val = ast.literal_eval(v)
        items.append((k.strip(), val))
    return Environment(tuple(items))


@dataclass(frozen=True, eq=False)
class AnchoredOperation:
    """A structural map reading ``inputs`` and writing ``outputs`` of an environment."""

    map: StructuralMap
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if len(self.inputs) != self.map.dom or len(self.outputs) != self.map.im:
            from .errors import ArityMismatch

            raise ArityMismatch(
                f"{self.map.name} is {self.map.dom}->{self.map.im}, anchored at "
                f"{len(self.inputs)}->{len(self.outputs)}"
            )
        if len(set(self.outputs)) != len(self.outputs):
            raise ValueError(f"{self.name}: an output variable is written twice")

    @property
    def name(self) -> str:
        return f"{self.map.name}@({','.join(self.inputs)})->({','.join(self.outputs)})"

    @property
    def variables(self) -> set[str]:
        return set(self.inputs) | set(self.outputs)

    def apply(self, env: Environment):
        try:
            args = tuple(env[v] for v in self.inputs)
        except UnknownVariable:
            return UNDEFINED
        out = self.map(*args)
        if out is UNDEFINED:
            return UNDEFINED
        return env.updated(dict(zip(self.outputs, out)))

    def renamed(self, f) -> "AnchoredOperation":
        return AnchoredOperation(self.map, tuple(map(f, self.inputs)), tuple(map(f, self.outputs)))

    def __repr__(self):
        return f"AnchoredOperation({self.name})"


def anchor(m: StructuralMap, inputs: Sequence[str], outputs: Sequence[str] | None = None) -> AnchoredOperation:
    """Anchor ``m``; ``outputs`` defaults to ``inputs`` (in-place update)."""
    return AnchoredOperation(m, tuple(inputs), tuple(inputs if outputs is None else outputs))


def compose_maps(
    name: str,
    inputs: Sequence[str],
    outputs: Sequence[str],
    pipeline: Sequence[AnchoredOperation],
    scratch: Sequence[str] = (),
) -> StructuralMap:
    """Sequential composition of anchored stages over a declared variable frame.

    The derived map reads ``inputs`` (in order), runs the stages, and returns
    the values of ``outputs``. Stages may also use ``scratch`` variables,
    which must be written before they are read.
    """
    inputs, outputs, pipeline = tuple(inputs), tuple(outputs), tuple(pipeline)
    frame = set(inputs) | set(outputs) | set(scratch)
    known = set(inputs)
    for stage in pipeline:
        stray = stage.variables - frame
        if stray:
            raise FrameMismatch(f"{name}: stage {stage.name} uses {sorted(stray)} outside the frame")
        unset = set(stage.inputs) - known
        if unset:
            raise FrameMismatch(f"{name}: stage {stage.name} reads unset {sorted(unset)}")
        known |= set(stage.outputs)
    unset = set(outputs) - known
    if unset:
        raise FrameMismatch(f"{name}: outputs {sorted(unset)} are never set")

    def fn(*args):
        env = Environment(tuple(zip(inputs, args)))
        for stage in pipeline:
            env = stage.apply(env)
            if env is UNDEFINED:
                return UNDEFINED
        return tuple(env[v] for v in outputs)

    return StructuralMap(name, len(inputs), len(outputs), fn, pipeline, inputs, outputs)


def environment_space(domain: DataDomain) -> ConfigurationSpace:
    return ConfigurationSpace(
        f"env[{domain.name}]",
        render=lambda env: env.render(domain.render),
        parse=lambda text: parse_environment(text, domain),
    )


def induced_model(
    structure: AbstractDataStructure,
    vars: Sequence[str],
    anchors: Iterable[AnchoredOperation],
    name: str | None = None,
) -> ModelOfComputation:
    """The model whose configurations are environments over ``vars``.

    Instructions are the anchored operations, named ``map@(in)->(out)``.
    """
    frame = set(vars)
    semantics = {}
    by_inputs: dict[tuple, dict[str, str]] = {}
    for a in anchors:
        stray = a.variables - frame
        if stray:
            raise UnknownVariable(f"{a.name} uses {sorted(stray)} outside {list(vars)}")
        if a.name in semantics:
            continue
        semantics[a.name] = a.apply
        if a.inputs == a.outputs:
            by_inputs.setdefault(a.inputs, {})[a.map.name] = a.name
    disjoint = []
    for group in structure.disjoint:
        for names in by_inputs.values():
            members = frozenset(ins for m, ins in names.items() if m in group)
            if len(members) > 1:
                disjoint.append(members)
    return ModelOfComputation(
        name=name or f"{structure.name}[{','.join(vars)}]",
        instructions=tuple(semantics),
        semantics=semantics,
        space=environment_space(structure.domain),
        disjoint=tuple(disjoint),
    )


# ---------------------------------------------------------------------------
# Products


def _pair_domain(d1: DataDomain, d2: DataDomain) -> DataDomain:
    def parse(text):
        from .errors import ParseError

        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise ParseError(f"pair literal expected, got {text!r}")
        a, b = split_top_level(t[1:-1])
        return (d1.parse(a), d2.parse(b))

    elements = None
    if d1.elements is not None and d2.elements is not None:
        elements = tuple((a, b) for a in d1.elements for b in d2.elements)
    return DataDomain(
        name=f"{d1.name}x{d2.name}",
        sample=lambda rng, n: (d1.sample(rng, n), d2.sample(rng, n)),
        render=lambda p: f"({d1.render(p[0])}, {d2.render(p[1])})",
        parse=parse if d1.parse and d2.parse else None,
        elements=elements,
        default=(d1.default, d2.default),
        sample_size=max(d1.sample_size, d2.sample_size),
    )


def _lift(m: StructuralMap, side: int, other_default) -> StructuralMap:
    # The untouched component of output j is copied from input min(j, dom-1);
    # nullary maps use the other factor's default element.
    def fn(*pairs):
        mine = tuple(p[side] for p in pairs)
        theirs = tuple(p[1 - side] for p in pairs)
        out = m(*mine)
        if out is UNDEFINED:
            return UNDEFINED
        res = []
        for j, v in enumerate(out):
            w = theirs[min(j, len(theirs) - 1)] if theirs else other_default
            res.append((v, w) if side == 0 else (w, v))
        return tuple(res)

    prefix = "left." if side == 0 else "right."
    return StructuralMap(prefix + m.name, m.dom, m.im, fn)


def product(d1: AbstractDataStructure, d2: AbstractDataStructure) -> AbstractDataStructure:
    """Pairs, with each factor's maps acting on its own component."""
    maps = [_lift(m, 0, d2.domain.default) for m in d1.maps.values()]
    maps += [_lift(m, 1, d1.domain.default) for m in d2.maps.values()]
    disjoint = tuple(frozenset("left." + n for n in g) for g in d1.disjoint)
    disjoint += tuple(frozenset("right." + n for n in g) for g in d2.disjoint)
    return AbstractDataStructure(
        _pair_domain(d1.domain, d2.domain),
        {m.name: m for m in maps},
        name=f"{d1.name}x{d2.name}",
        disjoint=disjoint,
    )
