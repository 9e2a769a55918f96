"""Built-in data structures: booleans, naturals, lists of naturals, GF(2)[x]."""

from __future__ import annotations

import ast
import re

from .data import (
    AbstractDataStructure,
    DataDomain,
    guard,
    identity_map,
    partial,
    swap_map,
    total,
)
from .errors import ParseError


def _parse_int(text: str) -> int:
    try:
        v = int(text.strip())
    except ValueError:
        raise ParseError(f"not a natural number: {text!r}") from None
    if v < 0:
        raise ParseError(f"not a natural number: {text!r}")
    return v


BOOL = DataDomain(
    name="bool",
    sample=lambda rng, n: rng.randrange(2),
    parse=lambda t: {"0": 0, "1": 1}[t.strip()],
    elements=(0, 1),
    default=0,
)

NAT = DataDomain(
    name="nat",
    sample=lambda rng, n: rng.randint(0, n),
    parse=_parse_int,
    default=0,
    sample_size=100,
)


def booleans() -> AbstractDataStructure:
    maps = [
        guard("read0", 1, lambda n: n == 0),
        guard("read1", 1, lambda n: n == 1),
        total("and", 2, 1, lambda m, n: m * n),
        total("or", 2, 1, lambda m, n: m + n - m * n),
        total("not", 1, 1, lambda n: 1 - n),
    ]
    return AbstractDataStructure(BOOL, {m.name: m for m in maps}, "booleans", (frozenset({"read0", "read1"}),))


def naturals(extended: bool = True) -> AbstractDataStructure:
    """Naturals with read0/readS/succ; ``extended`` adds the arithmetic used by the gcd corpus."""
    maps = [
        guard("read0", 1, lambda n: n == 0),
        guard("readS", 1, lambda n: n != 0),
        total("succ", 1, 1, lambda n: n + 1),
    ]
    disjoint = [frozenset({"read0", "readS"})]
    if extended:
        maps += [
            partial("pred", 1, 1, lambda n: n - 1, lambda n: n != 0),
            total("add", 2, 1, lambda n, m: n + m),
            total("mult", 2, 1, lambda n, m: n * m),
            partial("sub", 2, 1, lambda n, m: n - m, lambda n, m: n >= m),
            partial("mod", 2, 1, lambda n, m: n % m, lambda n, m: m != 0),
            partial("div", 2, 1, lambda n, m: n // m, lambda n, m: m != 0),
            guard("geq", 2, lambda n, m: n >= m),
            guard("lt", 2, lambda n, m: n < m),
            swap_map(),
            total("const_0", 0, 1, lambda: 0),
            total("const_1", 0, 1, lambda: 1),
            identity_map(1),
            total("proj1", 2, 1, lambda n, m: n),
            total("proj2", 2, 1, lambda n, m: m),
        ]
        disjoint.append(frozenset({"geq", "lt"}))
    return AbstractDataStructure(NAT, {m.name: m for m in maps}, "naturals", tuple(disjoint))


# ---------------------------------------------------------------------------
# lists


def _parse_list(text: str) -> tuple:
    try:
        v = ast.literal_eval(text.strip())
    except (ValueError, SyntaxError):
        raise ParseError(f"not a list literal: {text!r}") from None
    if not isinstance(v, (list, tuple)) or not all(isinstance(a, int) and a >= 0 for a in v):
        raise ParseError(f"not a list of naturals: {text!r}")
    return tuple(v)


def _render_list(xs) -> str:
    return "[" + ", ".join(map(str, xs)) + "]"


LIST = DataDomain(
    name="list",
    sample=lambda rng, n: tuple(rng.randint(0, 99) for _ in range(rng.randint(0, n))),
    render=_render_list,
    parse=_parse_list,
    default=(),
    sample_size=16,
)


def split_even_odd(xs: tuple) -> tuple[tuple, tuple]:
    return tuple(xs[0::2]), tuple(xs[1::2])


def merge_sorted(a: tuple, b: tuple) -> tuple:
    out, i, j = [], 0, 0
    while i < len(a) and j < len(b):
        if a[i] <= b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    return tuple(out) + tuple(a[i:]) + tuple(b[j:])


def lists_of_naturals() -> AbstractDataStructure:
    maps = [
        guard("isnil", 1, lambda x: len(x) == 0),
        guard("nonnil", 1, lambda x: len(x) != 0),
        guard("short", 1, lambda x: len(x) <= 1),
        guard("long", 1, lambda x: len(x) > 1),
        guard("both_nonnil", 2, lambda a, b: bool(a) and bool(b)),
        guard("some_nil", 2, lambda a, b: not a or not b),
        guard("fst_le", 2, lambda a, b: bool(a) and bool(b) and a[0] <= b[0]),
        guard("fst_gt", 2, lambda a, b: bool(a) and bool(b) and a[0] > b[0]),
        partial("fst", 1, 1, lambda x: (x[0],), lambda x: len(x) != 0),
        partial("queue", 1, 1, lambda x: x[1:], lambda x: len(x) != 0),
        partial("append_head", 2, 1, lambda y, a: y + (a[0],), lambda y, a: len(a) != 0),
        total("concat", 2, 1, lambda a, b: a + b),
        total("split", 1, 2, split_even_odd),
        total("sort", 1, 1, lambda x: tuple(sorted(x))),
        total("merge", 2, 1, merge_sorted),
        total("nil", 0, 1, lambda: ()),
        identity_map(1),
        swap_map(),
    ]
    disjoint = (
        frozenset({"isnil", "nonnil"}),
        frozenset({"short", "long"}),
        frozenset({"fst_le", "fst_gt"}),
        frozenset({"both_nonnil", "some_nil"}),
    )
    return AbstractDataStructure(LIST, {m.name: m for m in maps}, "lists", disjoint)


# ---------------------------------------------------------------------------
# GF(2)[x], polynomials stored as int bitmasks (bit i = coefficient of x^i)


def gf2_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def gf2_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = b.bit_length()
    while a and a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def render_gf2(p: int) -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(p.bit_length() - 1, -1, -1):
        if p >> i & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms)


_TERM = re.compile(r"^(?:1|x|x\^(\d+))$")


def parse_gf2(text: str) -> int:
    t = text.replace(" ", "")
    if t == "0":
        return 0
    if t.startswith("0b"):
        return int(t, 2)
    p = 0
    for term in t.split("+"):
        m = _TERM.match(term)
        if not m:
            raise ParseError(f"bad GF(2) polynomial term {term!r}")
        deg = 0 if term == "1" else 1 if term == "x" else int(m.group(1))
        p ^= 1 << deg
    return p


GF2 = DataDomain(
    name="gf2poly",
    sample=lambda rng, deg: rng.getrandbits(deg + 1),
    render=render_gf2,
    parse=parse_gf2,
    default=0,
    sample_size=5,
)


def gf2_polynomials() -> AbstractDataStructure:
    """GF(2)[x]; the sampler draws polynomials of degree at most ``sample_size``."""
    maps = [
        total("add", 2, 1, lambda a, b: a ^ b),
        total("mult", 2, 1, gf2_mul),
        partial("div", 2, 1, lambda a, b: gf2_divmod(a, b)[0], lambda a, b: b != 0),
        partial("mod", 2, 1, lambda a, b: gf2_divmod(a, b)[1], lambda a, b: b != 0),
        guard("iszero", 1, lambda a: a == 0),
        guard("nonzero", 1, lambda a: a != 0),
        total("const_0", 0, 1, lambda: 0),
        total("const_1", 0, 1, lambda: 1),
        identity_map(1),
        swap_map(),
    ]
    return AbstractDataStructure(GF2, {m.name: m for m in maps}, "gf2poly", (frozenset({"iszero", "nonzero"}),))


BUILTIN_STRUCTURES = {
    "booleans": booleans,
    "naturals": naturals,
    "lists": lists_of_naturals,
    "gf2poly": gf2_polynomials,
}
