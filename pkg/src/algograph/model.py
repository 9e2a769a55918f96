"""Models of computation: instruction symbols acting partially on a configuration space.

A model is a finite set of instruction names, each interpreted as a partial
endomorphism of a configuration space. Words over the instructions act by
left-to-right composition. Words are kept as concrete representatives; no
quotient by the relations the interpretation induces is attempted.

The one-tape Turing machine model lives here too, with tapes stored as a
trimmed window plus the index of cell 0 inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Sequence

from .errors import ParseError, UnknownInstruction


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()


def is_undefined(x) -> bool:
    return x is UNDEFINED


@dataclass(frozen=True)
class ConfigurationSpace:
    """Equality plus a canonical textual form; nothing more."""

    name: str
    render: Callable[[Any], str] = repr
    parse: Callable[[str], Any] | None = None


@dataclass(frozen=True, eq=False)
class ModelOfComputation:
    name: str
    instructions: tuple[str, ...]
    semantics: Mapping[str, Callable[[Any], Any]]
    space: ConfigurationSpace
    # groups of instructions whose domains of definition are pairwise disjoint
    disjoint: tuple[frozenset, ...] = ()

    def __post_init__(self):
        if len(set(self.instructions)) != len(self.instructions):
            raise ValueError(f"duplicate instruction in model {self.name!r}")
        if set(self.instructions) != set(self.semantics):
            raise ValueError(
                f"model {self.name!r}: every instruction needs exactly one semantics entry"
            )

    def __contains__(self, ins) -> bool:
        return ins in self.semantics

    def are_disjoint(self, a: str, b: str) -> bool:
        if a == b:
            return False
        return any(a in group and b in group for group in self.disjoint)

    def render(self, x) -> str:
        return self.space.render(x)

    def parse(self, text: str):
        if self.space.parse is None:
            raise ParseError(f"space {self.space.name!r} has no textual parser")
        return self.space.parse(text)


@dataclass(frozen=True)
class InstructionWord:
    symbols: tuple[str, ...] = ()

    def __add__(self, other: "InstructionWord") -> "InstructionWord":
        return InstructionWord(self.symbols + tuple(other.symbols))

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)


def apply_instruction(model: ModelOfComputation, ins: str, x):
    try:
        fn = model.semantics[ins]
    except KeyError:
        raise UnknownInstruction(f"{ins!r} is not an instruction of {model.name!r}") from None
    return fn(x)


def apply_word(model: ModelOfComputation, word: InstructionWord | Sequence[str], x):
    symbols = tuple(word)
    for ins in symbols:
        if ins not in model.semantics:
            raise UnknownInstruction(f"{ins!r} is not an instruction of {model.name!r}")
    for ins in symbols:
        x = model.semantics[ins](x)
        if x is UNDEFINED:
            return UNDEFINED
    return x


# ---------------------------------------------------------------------------
# Turing machine tapes

BLANK = "*"
TAPE_SYMBOLS = ("0", "1", BLANK)


@dataclass(frozen=True)
class Tape:
    """A bi-infinite tape over {0, 1, *}, almost everywhere blank.

    ``cells`` is trimmed of blanks at both ends; ``origin`` is the index of
    tape position 0 inside ``cells`` and may fall outside it. Cell ``p`` of
    the tape is ``cells[origin + p]`` when that index is in range, else blank.
    Construct through :meth:`make` to get the normal form.
    """

    cells: tuple[str, ...] = ()
    origin: int = 0

    def __post_init__(self):
        cells = tuple(self.cells)
        for c in cells:
            if c not in TAPE_SYMBOLS:
                raise ValueError(f"bad tape symbol {c!r}")
        lo = 0
        while lo < len(cells) and cells[lo] == BLANK:
            lo += 1
        hi = len(cells)
        while hi > lo and cells[hi - 1] == BLANK:
            hi -= 1
        trimmed = cells[lo:hi]
        object.__setattr__(self, "cells", trimmed)
        object.__setattr__(self, "origin", self.origin - lo if trimmed else 0)

    @classmethod
    def make(cls, cells: Iterable[str] = (), origin: int = 0) -> "Tape":
        return cls(tuple(cells), origin)

    @classmethod
    def from_support(cls, support: Mapping[int, str]) -> "Tape":
        """Build from a position -> symbol map (blank entries are allowed)."""
        marks = {p: s for p, s in support.items() if s != BLANK}
        if not marks:
            return cls()
        lo, hi = min(marks), max(marks)
        return cls(tuple(marks.get(p, BLANK) for p in range(lo, hi + 1)), -lo)

    def __getitem__(self, position: int) -> str:
        i = self.origin + position
        if 0 <= i < len(self.cells):
            return self.cells[i]
        return BLANK

    def support(self) -> dict[int, str]:
        return {i - self.origin: c for i, c in enumerate(self.cells) if c != BLANK}

    def head(self) -> str:
        return self[0]

    def write(self, symbol: str) -> "Tape":
        support = self.support()
        support[0] = symbol
        return Tape.from_support(support)

    def shifted(self, delta: int) -> "Tape":
        """The tape ``t`` with ``t[i] == self[i - delta]``."""
        if not self.cells:
            return self
        return Tape(self.cells, self.origin - delta)

    def __str__(self):
        return format_tape(self)


def parse_tape(text: str) -> Tape:
    """Parse a tape literal such as ``"1^01"`` (origin at the marked cell).

    Without a caret the origin is the leftmost symbol. ``⋆`` is accepted as
    an alias for ``*``.
    """
    text = text.strip().replace("⋆", BLANK)
    if text.count("^") > 1:
        raise ParseError(f"tape literal {text!r} has more than one origin mark")
    origin = 0
    cells = []
    for ch in text:
        if ch == "^":
            origin = len(cells)
            continue
        if ch not in TAPE_SYMBOLS:
            raise ParseError(f"bad symbol {ch!r} in tape literal {text!r}")
        cells.append(ch)
    if text.endswith("^"):
        raise ParseError(f"origin mark must precede a cell in {text!r}")
    return Tape(tuple(cells), origin)


def format_tape(tape: Tape) -> str:
    if not tape.cells:
        return BLANK
    cells = list(tape.cells)
    origin = tape.origin
    if origin < 0:
        cells = [BLANK] * (-origin) + cells
        origin = 0
    elif origin >= len(cells):
        cells += [BLANK] * (origin - len(cells) + 1)
    if origin == 0:
        return "".join(cells)
    return "".join(cells[:origin]) + "^" + "".join(cells[origin:])


TAPE_SPACE = ConfigurationSpace("tape", render=format_tape, parse=parse_tape)


def _read(symbol):
    def guard(t: Tape):
        return t if t.head() == symbol else UNDEFINED

    return guard


def _write(symbol):
    return lambda t: t.write(symbol)


def tm_model() -> ModelOfComputation:
    """The ten-instruction one-tape Turing machine model.

    ``right`` maps (s_i) to (s_{i-1}) and ``left`` maps (s_i) to (s_{i+1}):
    after ``left`` the head (always at cell 0) reads what was in cell 1.
    """
    semantics = {
        "right": lambda t: t.shifted(1),
        "left": lambda t: t.shifted(-1),
    }
    for c in TAPE_SYMBOLS:
        semantics[f"write_{c}"] = _write(c)
    for c in TAPE_SYMBOLS:
        semantics[f"read_{c}"] = _read(c)
    reads = frozenset(f"read_{c}" for c in TAPE_SYMBOLS)
    return ModelOfComputation(
        name="tm",
        instructions=tuple(semantics),
        semantics=semantics,
        space=TAPE_SPACE,
        disjoint=(reads,),
    )
