"""Minimal s-expression reader used for term and inequation syntax."""

from __future__ import annotations


class ParseError(ValueError):
    pass


def tokenize(s: str) -> list[str]:
    out, tok = [], []
    for ch in s:
        if ch in "()":
            if tok:
                out.append("".join(tok))
                tok = []
            out.append(ch)
        elif ch.isspace():
            if tok:
                out.append("".join(tok))
                tok = []
        else:
            tok.append(ch)
    if tok:
        out.append("".join(tok))
    return out


def read(s: str):
    """Parse one s-expression into nested lists of atom strings."""
    toks = tokenize(s)
    if not toks:
        raise ParseError("empty input")
    val, pos = _read(toks, 0)
    if pos != len(toks):
        raise ParseError(f"trailing input after position {pos}: {' '.join(toks[pos:])}")
    return val


def read_all(s: str) -> list:
    """Parse a whitespace-separated sequence of s-expressions."""
    toks = tokenize(s)
    out, pos = [], 0
    while pos < len(toks):
        val, pos = _read(toks, pos)
        out.append(val)
    return out


def _read(toks, pos):
    if pos >= len(toks):
        raise ParseError("unexpected end of input")
    t = toks[pos]
    if t == ")":
        raise ParseError("unexpected ')'")
    if t != "(":
        return t, pos + 1
    items = []
    pos += 1
    while True:
        if pos >= len(toks):
            raise ParseError("list not closed")
        if toks[pos] == ")":
            return items, pos + 1
        val, pos = _read(toks, pos)
        items.append(val)
