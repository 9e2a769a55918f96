"""Interpretations of data into tape configurations, and checking implementations.

An interpretation encodes tuples of data (up to an arity bound) as
configurations. A program implements a structural map ``f`` when, run from
the encoding of ``d``, it reaches its terminal state holding the encoding of
``f(d)``. :func:`verify_implementation` checks that on a sample of inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Sequence

from .data import AbstractDataStructure, DataDomain
from .errors import MissingProgram
from .model import BLANK, UNDEFINED, ModelOfComputation, Tape
from .program import Program, Terminated, Trace, make_program, run
from .structures import BOOL, NAT


@dataclass(frozen=True, eq=False)
class Interpretation:
    name: str
    domain: DataDomain
    arity_bound: int
    encode_block: Callable[[Any], str]
    decode_block: Callable[[str], Any] | None = None
    target_model: str = "tm"

    def encode(self, data: Sequence) -> Tape:
        """Blocks separated by single blanks, first block starting at cell 0."""
        data = tuple(data)
        if len(data) > self.arity_bound:
            raise ValueError(f"{self.name} encodes tuples of length <= {self.arity_bound}")
        return Tape.make(BLANK.join(self.encode_block(d) for d in data), 0)

    def __call__(self, *data) -> Tape:
        return self.encode(data)

    def decode(self, tape: Tape, arity: int):
        """Inverse of :meth:`encode` at a fixed arity, or ``None``."""
        if self.decode_block is None:
            raise NotImplementedError(f"{self.name} has no decoder")
        if arity == 0:
            return () if tape == Tape() else None
        pos, blocks = 0, []
        for k in range(arity):
            cells = []
            while tape[pos] != BLANK:
                cells.append(tape[pos])
                pos += 1
            try:
                blocks.append(self.decode_block("".join(cells)))
            except ValueError:
                return None
            pos += 1
        out = tuple(blocks)
        return out if self.encode(out) == tape else None


def _bool_block(a) -> str:
    if a not in (0, 1):
        raise ValueError(f"not a boolean: {a!r}")
    return str(a)


def _bool_decode(s: str):
    if s not in ("0", "1"):
        raise ValueError(s)
    return int(s)


def _unary_decode(s: str) -> int:
    if set(s) - {"1"}:
        raise ValueError(s)
    return len(s)


def _binary_decode(s: str) -> int:
    if not s or set(s) - {"0", "1"} or (len(s) > 1 and s[0] == "0"):
        raise ValueError(s)
    return int(s, 2)


def delta_bool() -> Interpretation:
    return Interpretation("bool", BOOL, 2, _bool_block, _bool_decode)


def delta_nat_unary(arity_bound: int = 2) -> Interpretation:
    return Interpretation("nat_unary", NAT, arity_bound, lambda n: "1" * n, _unary_decode)


def delta_nat_binary(arity_bound: int = 2) -> Interpretation:
    """Most significant bit first; 0 is the single digit ``0``."""
    return Interpretation("nat_binary", NAT, arity_bound, lambda n: format(n, "b"), _binary_decode)


BUILTIN_INTERPRETATIONS = {
    "bool": delta_bool,
    "nat_unary": delta_nat_unary,
    "nat_binary": delta_nat_binary,
}


def check_injective(interp: Interpretation, tuples: Iterable[Sequence]) -> list[tuple]:
    """Pairs of distinct same-arity tuples with equal encodings."""
    seen: dict[tuple[int, Tape], tuple] = {}
    clashes = []
    for d in tuples:
        d = tuple(d)
        key = (len(d), interp.encode(d))
        other = seen.setdefault(key, d)
        if other != d:
            clashes.append((other, d))
    return clashes


@dataclass(frozen=True, eq=False)
class ImplementationMap:
    interpretation: Interpretation
    programs: Mapping[str, Program]


@dataclass
class MapVerdict:
    name: str
    checked: int = 0
    failures: list[tuple[tuple, Any]] = field(default_factory=list)
    # terminations observed on inputs outside the map's domain (not failures)
    outside_domain: list[tuple[tuple, Any]] = field(default_factory=list)
    traces: list[tuple[tuple, Trace]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class VerificationReport:
    verdicts: dict[str, MapVerdict] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts.values())

    def __str__(self):
        lines = []
        for v in self.verdicts.values():
            status = "pass" if v.passed else "FAIL"
            line = f"{v.name:<12} {status}  ({v.checked} inputs)"
            if v.failures:
                d, got = v.failures[0]
                line += f"  witness {d}: {got}"
            lines.append(line)
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines)


def verify_implementation(
    model: ModelOfComputation,
    structure: AbstractDataStructure,
    impl: ImplementationMap,
    sample_size: int = 50,
    budget: int = 100_000,
    seed: int = 0,
    inputs: Mapping[str, Iterable[Sequence]] | None = None,
    maps: Sequence[str] | None = None,
) -> VerificationReport:
    """Check that each covered map's program carries encoded inputs to encoded outputs.

    ``maps`` lists the covered map names (default: every key of
    ``impl.programs``); ``inputs`` overrides sampling per map.
    """
    covered = list(impl.programs) if maps is None else list(maps)
    missing = [m for m in covered if m not in impl.programs]
    if missing:
        raise MissingProgram(f"no program for {missing}")
    interp = impl.interpretation
    report = VerificationReport()
    for name in covered:
        f = structure[name]
        program = impl.programs[name]
        rng = random.Random(f"{seed}:{name}")
        if inputs is not None and name in inputs:
            samples = list(dict.fromkeys(tuple(d) for d in inputs[name]))
        else:
            samples = structure.domain.tuples(f.dom, rng, sample_size)
        clashes = check_injective(interp, samples)
        if clashes:
            report.warnings.append(f"{interp.name} is not injective on {clashes[0]}")
        verdict = MapVerdict(name)
        for d in samples:
            fd = f(*d)
            trace = run(model, program, interp.encode(d), budget)
            verdict.checked += 1
            if fd is UNDEFINED:
                if trace.terminated:
                    verdict.outside_domain.append((d, model.render(trace.outcome.configuration)))
                continue
            expected = interp.encode(fd)
            if trace.terminated and trace.outcome.configuration == expected:
                verdict.traces.append((d, trace))
            else:
                got = trace.outcome
                if isinstance(got, Terminated):
                    got = f"terminated at {model.render(got.configuration)}, expected {model.render(expected)}"
                verdict.failures.append((d, got))
        report.verdicts[name] = verdict
    return report


# ---------------------------------------------------------------------------
# shipped Turing machine programs


def tm_read(symbol: str) -> Program:
    """Single guard edge: implements read0/read1 for the boolean encoding."""
    return make_program([("i", "t", f"read_{symbol}")])


def tm_not() -> Program:
    """``not`` for the boolean encoding: read the cell at 0, write its complement."""
    return make_program(
        [
            ("i", "z", "read_0"),
            ("z", "t", "write_1"),
            ("i", "o", "read_1"),
            ("o", "t", "write_0"),
        ]
    )


def tm_identity() -> Program:
    """Shift right then back: the identity on every tape."""
    return make_program([("i", "m", "right"), ("m", "t", "left")])


def tm_succ_unary() -> Program:
    """``succ`` for the unary encoding: scan past the block of 1s, add one, come back.

    ``left`` brings cell 1 under the head, so scanning towards higher
    positions uses ``left`` and returning uses ``right``.
    """
    return make_program(
        [
            ("scan", "step", "read_1"),
            ("step", "scan", "left"),
            ("scan", "end", "read_*"),
            ("end", "back", "write_1"),
            ("back", "look", "right"),
            ("look", "back", "read_1"),
            ("look", "home", "read_*"),
            ("home", "t", "left"),
        ],
        initial="scan",
    )


def tm_and() -> Program:
    """``and`` for the boolean encoding ``a*b``.

    Reads and erases ``a``, moves to cell 2, reads and erases ``b``, moves
    back and writes ``a and b`` at cell 0. The control state remembers the bits.
    """
    edges = []
    for a in "01":
        edges += [
            ("i", f"a{a}", f"read_{a}"),
            (f"a{a}", f"w{a}", "write_*"),
            (f"w{a}", f"m{a}", "left"),
            (f"m{a}", f"b{a}", "left"),
        ]
        for b in "01":
            r = str(int(a) & int(b))
            edges.append((f"b{a}", f"r{r}", f"read_{b}"))
    for r in "01":
        edges += [
            (f"r{r}", f"e{r}", "write_*"),
            (f"e{r}", f"h{r}", "right"),
            (f"h{r}", f"g{r}", "right"),
            (f"g{r}", "t", f"write_{r}"),
        ]
    return make_program(edges)


def builtin_tm_programs() -> dict[str, Program]:
    return {
        "tm_read0": tm_read("0"),
        "tm_read1": tm_read("1"),
        "tm_not": tm_not(),
        "tm_and": tm_and(),
        "tm_succ_unary": tm_succ_unary(),
        "tm_identity": tm_identity(),
    }


# program name -> (structure, map, interpretation) it is meant to implement
TM_PROGRAM_INTENT = {
    "tm_read0": ("booleans", "read0", "bool"),
    "tm_read1": ("booleans", "read1", "bool"),
    "tm_not": ("booleans", "not", "bool"),
    "tm_and": ("booleans", "and", "bool"),
    "tm_succ_unary": ("naturals", "succ", "nat_unary"),
    "tm_identity": (None, None, None),
}


def boolean_implementation() -> ImplementationMap:
    progs = builtin_tm_programs()
    return ImplementationMap(
        delta_bool(),
        {"read0": progs["tm_read0"], "read1": progs["tm_read1"], "not": progs["tm_not"], "and": progs["tm_and"]},
    )
