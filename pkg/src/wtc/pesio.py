"""Line-oriented PES file format.

::

    # comment
    pes fig1_left
    event e1 a
    event e2 tau
    event e3 b
    cause e1 e2
    cause e2 e3
    conflict e1 e4

``cause`` and ``conflict`` lines are generating pairs: the order is closed
transitively and conflict is saturated hereditarily.
"""
from __future__ import annotations

import re
from pathlib import Path

from .errors import DanglingEvent, InvalidPES, ParseError
from .pes import PrimeEventStructure, validate_pes


def _located(exc_type, msg, line, col=None):
    where = f"line {line}" + (f", column {col}" if col else "")
    exc = exc_type(f"{msg} ({where})")
    exc.line, exc.column = line, col
    return exc


def parse_pes(text: str) -> PrimeEventStructure:
    name = ""
    names, labels = [], []
    causes, conflicts = [], []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        words = line.split()
        if not words:
            continue
        col = len(line) - len(line.lstrip()) + 1
        kw, args = words[0], words[1:]

        starts = [m.start() + 1 for m in re.finditer(r"\S+", line)]

        def column(k):
            return starts[min(k, len(starts) - 1)]

        if kw == "pes":
            if seen_header:
                raise ParseError("duplicate 'pes' header", lineno, col)
            if len(args) > 1:
                raise ParseError("'pes' takes at most one name", lineno, column(2))
            seen_header = True
            name = args[0] if args else ""
        elif kw == "event":
            if len(args) != 2:
                raise ParseError("expected 'event <id> <label>'", lineno, col)
            if args[0] in names:
                raise _located(InvalidPES, f"event {args[0]!r} declared twice", lineno, column(1))
            names.append(args[0])
            labels.append(args[1])
        elif kw in ("cause", "conflict"):
            if len(args) != 2:
                raise ParseError(f"expected '{kw} <id> <id>'", lineno, col)
            for k, ref in enumerate(args, start=1):
                if ref not in names:
                    raise _located(DanglingEvent, f"undeclared event {ref!r}", lineno, column(k))
            (causes if kw == "cause" else conflicts).append(tuple(args))
        else:
            raise ParseError(f"unknown directive {kw!r}", lineno, col)
    return validate_pes(labels, causes, conflicts, names=names or None, name=name)


def load_pes(path) -> PrimeEventStructure:
    with open(path, encoding="utf-8") as fh:
        pes = parse_pes(fh.read())
    if not pes.name:
        object.__setattr__(pes, "name", Path(path).stem)
    return pes


def format_pes(pes: PrimeEventStructure) -> str:
    """Print with covering causes and generating conflicts only."""
    out = [f"pes {pes.name}" if pes.name else "pes"]
    for n, lab in zip(pes.names, pes.labels):
        out.append(f"event {n} {lab}")
    for d, e in sorted(pes.causality):
        out.append(f"cause {pes.names[d]} {pes.names[e]}")
    for d, e in sorted(pes.generating_conflicts):
        out.append(f"conflict {pes.names[d]} {pes.names[e]}")
    return "\n".join(out) + "\n"
