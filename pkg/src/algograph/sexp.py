"""A minimal s-expression reader: atoms are strings, lists are Python lists."""

from __future__ import annotations

from .errors import ParseError


def tokenize(text: str) -> list[str]:
    tokens = []
    cur = []
    for ch in text:
        if ch in "()":
            if cur:
                tokens.append("".join(cur))
                cur = []
            tokens.append(ch)
        elif ch.isspace():
            if cur:
                tokens.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if cur:
        tokens.append("".join(cur))
    return tokens


def _read(tokens, pos):
    if pos >= len(tokens):
        raise ParseError("unexpected end of s-expression")
    tok = tokens[pos]
    if tok == ")":
        raise ParseError("unexpected ')'")
    if tok != "(":
        return tok, pos + 1
    out = []
    pos += 1
    while True:
        if pos >= len(tokens):
            raise ParseError("missing ')'")
        if tokens[pos] == ")":
            return out, pos + 1
        item, pos = _read(tokens, pos)
        out.append(item)


def parse_all(text: str) -> list:
    """Read every top-level expression; ``;`` starts a line comment."""
    lines = [line.split(";", 1)[0] for line in text.splitlines()]
    tokens = tokenize("\n".join(lines))
    out, pos = [], 0
    while pos < len(tokens):
        item, pos = _read(tokens, pos)
        out.append(item)
    return out


def parse_one(text: str):
    items = parse_all(text)
    if len(items) != 1:
        raise ParseError(f"expected one s-expression, found {len(items)}")
    return items[0]


def dump(expr) -> str:
    if isinstance(expr, list):
        return "(" + " ".join(dump(e) for e in expr) + ")"
    return str(expr)
