"""Finite process terms (prefix, choice, parallel) and their PES semantics.

Concrete syntax: ``0``, ``a.P``, ``P + Q``, ``P | Q`` and parentheses; a bare
label ``a`` abbreviates ``a.0``.  Prefix binds tightest, then ``+``, then ``|``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .pes import PrimeEventStructure, validate_pes


class ProcessTerm:
    __slots__ = ()

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True)
class Nil(ProcessTerm):
    pass


@dataclass(frozen=True)
class Prefix(ProcessTerm):
    label: str
    body: ProcessTerm


@dataclass(frozen=True)
class Choice(ProcessTerm):
    left: ProcessTerm
    right: ProcessTerm


@dataclass(frozen=True)
class Par(ProcessTerm):
    left: ProcessTerm
    right: ProcessTerm


_TOK = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<nil>0)|(?P<sym>[.+|()]))")


def _tokens(text):
    pos = 0
    out = []
    while True:
        m = _TOK.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].lstrip()
            if rest:
                col = len(text) - len(rest) + 1
                raise ParseError(f"unexpected character {rest[0]!r}", 1, col)
            out.append(("eof", "", len(text) + 1))
            return out
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()


def parse_term(text: str) -> ProcessTerm:
    toks = _tokens(text)
    i = 0

    def peek():
        return toks[i]

    def take(sym=None):
        nonlocal i
        kind, val, col = toks[i]
        if sym is not None and val != sym:
            raise ParseError(f"expected {sym!r}, found {val or 'end of input'!r}", 1, col)
        i += 1
        return kind, val, col

    def par():
        t = choice()
        while peek()[1] == "|":
            take()
            t = Par(t, choice())
        return t

    def choice():
        t = prefixed()
        while peek()[1] == "+":
            take()
            t = Choice(t, prefixed())
        return t

    def prefixed():
        kind, val, col = peek()
        if kind == "nil":
            take()
            return Nil()
        if kind == "ident":
            take()
            if peek()[1] == ".":
                take()
                return Prefix(val, prefixed())
            return Prefix(val, Nil())
        if val == "(":
            take()
            t = par()
            take(")")
            return t
        raise ParseError(f"unexpected {val or 'end of input'!r}", 1, col)

    t = par()
    if peek()[0] != "eof":
        raise ParseError(f"unexpected {peek()[1]!r}", 1, peek()[2])
    return t


def format_term(t: ProcessTerm) -> str:
    if isinstance(t, Nil):
        return "0"
    if isinstance(t, Prefix):
        body = t.body
        if isinstance(body, Nil):
            return t.label
        inner = format_term(body)
        if isinstance(body, (Choice, Par)):
            inner = f"({inner})"
        return f"{t.label}.{inner}"
    if isinstance(t, Choice):
        left = f"({format_term(t.left)})" if isinstance(t.left, Par) else format_term(t.left)
        right = format_term(t.right)
        if isinstance(t.right, (Par, Choice)):
            right = f"({right})"
        return f"{left} + {right}"
    if isinstance(t, Par):
        right = format_term(t.right)
        if isinstance(t.right, Par):
            right = f"({right})"
        return f"{format_term(t.left)} | {right}"
    raise TypeError(f"not a process term: {t!r}")


def _build(t, labels, causes, conflicts):
    """Append ``t``'s events; return (event ids, minimal event ids)."""
    if isinstance(t, Nil):
        return [], []
    if isinstance(t, Prefix):
        me = len(labels)
        labels.append(t.label)
        evs, _ = _build(t.body, labels, causes, conflicts)
        causes.extend((me, e) for e in evs)
        return [me] + evs, [me]
    left, lmin = _build(t.left, labels, causes, conflicts)
    right, rmin = _build(t.right, labels, causes, conflicts)
    if isinstance(t, Choice):
        conflicts.extend((d, e) for d in lmin for e in rmin)
    return left + right, lmin + rmin


def compile_term(t, name: str = "") -> PrimeEventStructure:
    """Standard PES of a finite term; accepts a term or its text."""
    if isinstance(t, str):
        t = parse_term(t)
    labels, causes, conflicts = [], [], []
    _build(t, labels, causes, conflicts)
    return validate_pes(labels, causes, conflicts, name=name)
