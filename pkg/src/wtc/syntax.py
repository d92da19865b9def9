"""ASCII concrete syntax for formulas: tokenizer, recursive-descent parser, printer.

::

    phi := T | phi & phi | phi | phi | !phi
         | ({x..} {y..}~ << a z) phi        causal bind
         | {{x..} {y..}~ << a z} phi        dual bind
         | <<z>> phi | [[z]] phi            execute / dual execute
         | <<|{x..} {y..}~ << a z|>> phi    bind and execute (<<|a z|>> when lists are empty)
         | (<<|..|>> (x) <<|..|>> ...) phi  step product
         | X(x, ..) | mu X(x, ..). phi | nu X(x, ..). phi

The comma between the two variable lists is optional.  ``&`` binds tighter
than ``|``; prefix operators bind tightest.
"""
from __future__ import annotations

import re

from .errors import FormulaError, ParseError
from .formula import (And, Bind, Box, Diamond, DualBind, Exec, Formula, Mu, Not, Nu, Or,
                      PropApply, Step, T, Top)

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<sym><<\||\|>>|<<|>>|\[\[|\]\]|\(x\)|⊗|[{}(),~&|!.])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)

KEYWORDS = {"T", "mu", "nu"}


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"{self.text!r}@{self.line}:{self.col}"


def tokenize(text: str) -> list:
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            sym = m.group()
            if sym == "⊗":
                sym = "(x)"
            toks.append(_Tok(kind, sym, line, pos - line_start + 1))
        else:
            for i, ch in enumerate(m.group()):
                if ch == "\n":
                    line, line_start = line + 1, pos + i + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Backtrack(Exception):
    pass


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def accept(self, text):
        if self.tok.kind == "sym" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def ident(self, what="identifier"):
        tok = self.tok
        if tok.kind != "ident" or tok.text in KEYWORDS:
            raise self.error(f"expected {what}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok.text

    # grammar -------------------------------------------------------------------
    def parse(self):
        phi = self.alternation()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return phi

    def alternation(self):
        phi = self.conjunction()
        while self.accept("|"):
            phi = Or(phi, self.conjunction())
        return phi

    def conjunction(self):
        phi = self.unary()
        while self.accept("&"):
            phi = And(phi, self.unary())
        return phi

    def vlist(self):
        self.expect("{")
        out = []
        if not self.accept("}"):
            out.append(self.ident("variable"))
            while self.accept(","):
                out.append(self.ident("variable"))
            self.expect("}")
        return tuple(out)

    def header(self, close):
        """``vlist [,] vlist ~ << label var`` (or ``label var`` inside a diamond)."""
        start = self.tok
        if close == "|>>" and self.tok.kind == "ident":
            label = self.ident("label")
            var = self.ident("variable")
            self.expect(close)
            return (), (), self._label(label, start), var
        xs = self.vlist()
        self.accept(",")
        ys = self.vlist()
        self.expect("~")
        self.expect("<<")
        label = self.ident("label")
        var = self.ident("variable")
        self.expect(close)
        return xs, ys, self._label(label, start), var

    def _label(self, label, tok):
        if label == "tau":
            raise self.error("binders range over visible labels; 'tau' is not allowed", tok)
        return label

    def unary(self):
        tok = self.tok
        if tok.kind == "ident":
            if tok.text == "T":
                self.i += 1
                return T
            if tok.text in ("mu", "nu"):
                self.i += 1
                name = self.ident("proposition name")
                params = self.prop_args()
                self.expect(".")
                body = self.alternation()
                return (Mu if tok.text == "mu" else Nu)(name, params, body)
            name = self.ident()
            if self.tok.text not in ("(", "(x)"):
                raise self.error(f"expected '(' after proposition {name}")
            return PropApply(name, self.prop_args())
        if self.accept("!"):
            return Not(self.unary())
        if self.accept("<<|"):
            xs, ys, a, z = self.header("|>>")
            return Diamond(xs, ys, a, z, self.unary())
        if self.accept("<<"):
            z = self.ident("variable")
            self.expect(">>")
            return Exec(z, self.unary())
        if self.accept("[["):
            z = self.ident("variable")
            self.expect("]]")
            return Box(z, self.unary())
        if self.accept("{"):
            xs, ys, a, z = self._dual_header()
            return DualBind(xs, ys, a, z, self.unary())
        if self.tok.text == "(" and self.tok.kind == "sym":
            return self.paren()
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def _dual_header(self):
        xs = self.vlist()
        self.accept(",")
        ys = self.vlist()
        self.expect("~")
        self.expect("<<")
        start = self.tok
        label = self._label(self.ident("label"), start)
        var = self.ident("variable")
        self.expect("}")
        return xs, ys, label, var

    def prop_args(self):
        if self.accept("(x)"):  # tokenised as the product symbol
            return ("x",)
        self.expect("(")
        if self.tok.text == "{":
            args = self.vlist()
            self.expect(")")
            return args
        out = []
        if not self.accept(")"):
            out.append(self.ident("variable"))
            while self.accept(","):
                out.append(self.ident("variable"))
            self.expect(")")
        return tuple(out)

    def _attempt(self, fn):
        save = self.i
        try:
            return fn()
        except (ParseError, _Backtrack):
            self.i = save
            return None

    def paren(self):
        nxt = self.peek()
        if nxt.text == "{":
            def bind():
                self.expect("(")
                xs, ys, a, z = self.header(")")
                return Bind(xs, ys, a, z, self.unary())
            got = self._attempt(bind)
            if got is not None:
                return got
        if nxt.text == "<<|":
            def step():
                self.expect("(")
                parts = []
                while True:
                    self.expect("<<|")
                    parts.append(self.header("|>>"))
                    if self.accept("(x)"):
                        continue
                    if self.tok.text == ")" and parts:
                        break
                    raise _Backtrack()
                self.expect(")")
                return Step(tuple(parts), self.unary())
            got = self._attempt(step)
            if got is not None:
                return got
        self.expect("(")
        phi = self.alternation()
        self.expect(")")
        return phi


def parse_formula(text: str) -> Formula:
    try:
        return _Parser(text).parse()
    except FormulaError as exc:
        raise ParseError(str(exc)) from exc


# -- printing -------------------------------------------------------------------

def _vl(vs):
    return "{" + ", ".join(vs) + "}"


def _head(xs, ys, a, z):
    return f"{_vl(xs)} {_vl(ys)}~ << {a} {z}"


def _diamond_head(xs, ys, a, z):
    if not xs and not ys:
        return f"<<|{a} {z}|>>"
    return f"<<|{_head(xs, ys, a, z)}|>>"


def format_formula(phi: Formula) -> str:
    if isinstance(phi, Top):
        return "T"
    if isinstance(phi, And):
        return f"({format_formula(phi.left)} & {format_formula(phi.right)})"
    if isinstance(phi, Or):
        return f"({format_formula(phi.left)} | {format_formula(phi.right)})"
    if isinstance(phi, Not):
        return "!" + format_formula(phi.body)
    if isinstance(phi, Bind):
        return f"({_head(phi.xs, phi.ys, phi.label, phi.var)}) {format_formula(phi.body)}"
    if isinstance(phi, DualBind):
        return f"{{{_head(phi.xs, phi.ys, phi.label, phi.var)}}} {format_formula(phi.body)}"
    if isinstance(phi, Exec):
        return f"<<{phi.var}>> {format_formula(phi.body)}"
    if isinstance(phi, Box):
        return f"[[{phi.var}]] {format_formula(phi.body)}"
    if isinstance(phi, Diamond):
        return f"{_diamond_head(phi.xs, phi.ys, phi.label, phi.var)} {format_formula(phi.body)}"
    if isinstance(phi, Step):
        inner = " (x) ".join(_diamond_head(*p) for p in phi.parts)
        return f"({inner}) {format_formula(phi.body)}"
    if isinstance(phi, PropApply):
        return f"{phi.name}({', '.join(phi.vars)})"
    if isinstance(phi, (Mu, Nu)):
        kw = "mu" if isinstance(phi, Mu) else "nu"
        return f"({kw} {phi.name}({', '.join(phi.params)}). {format_formula(phi.body)})"
    raise TypeError(f"not a formula: {phi!r}")
