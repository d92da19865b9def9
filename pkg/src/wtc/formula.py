"""Formulas of the weak true-concurrency logic and its fixpoint extension.

Core constructors are :class:`Top`, :class:`And`, :class:`Not`,
:class:`Bind`, :class:`Exec`, :class:`PropApply` and :class:`Mu`.  The rest
(:class:`Or`, :class:`DualBind`, :class:`Box`, :class:`Diamond`,
:class:`Step`, :class:`Nu`) are abbreviations removed by :func:`desugar`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ArityMismatch, FormulaError
from .pes import TAU


class Formula:
    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __invert__(self):
        return Not(self)

    def __str__(self):
        from .syntax import format_formula
        return format_formula(self)


def _vars(vs):
    vs = tuple(vs)
    for v in vs:
        if not isinstance(v, str) or not v:
            raise FormulaError(f"bad variable {v!r}")
    return vs


def _label(a):
    if a == TAU:
        raise FormulaError("binders range over visible labels only")
    if not isinstance(a, str) or not a:
        raise FormulaError(f"bad label {a!r}")
    return a


@dataclass(frozen=True)
class Top(Formula):
    pass


T = Top()


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class Bind(Formula):
    """``(xs, ys~ << label var) body``: bind ``var`` to a fresh ``label`` event
    caused by ``xs`` and concurrent with ``ys``."""

    xs: tuple
    ys: tuple
    label: str
    var: str
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "xs", _vars(self.xs))
        object.__setattr__(self, "ys", _vars(self.ys))
        _label(self.label)


@dataclass(frozen=True)
class Exec(Formula):
    """``<<var>> body``: weakly execute the event bound to ``var``."""

    var: str
    body: Formula


@dataclass(frozen=True)
class DualBind(Formula):
    xs: tuple
    ys: tuple
    label: str
    var: str
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "xs", _vars(self.xs))
        object.__setattr__(self, "ys", _vars(self.ys))
        _label(self.label)


@dataclass(frozen=True)
class Box(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Diamond(Formula):
    """Bind-and-execute ``<<|xs, ys~ << label var|>> body``."""

    xs: tuple
    ys: tuple
    label: str
    var: str
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "xs", _vars(self.xs))
        object.__setattr__(self, "ys", _vars(self.ys))
        _label(self.label)


@dataclass(frozen=True)
class Step(Formula):
    """Product of diamonds: ``(d1 (x) d2 (x) ...) body``.

    ``parts`` holds ``(xs, ys, label, var)`` headers.
    """

    parts: tuple
    body: Formula

    def __post_init__(self):
        parts = tuple((_vars(xs), _vars(ys), _label(a), v) for xs, ys, a, v in self.parts)
        if not parts:
            raise FormulaError("empty step product")
        object.__setattr__(self, "parts", parts)


@dataclass(frozen=True)
class PropApply(Formula):
    name: str
    vars: tuple

    def __post_init__(self):
        object.__setattr__(self, "vars", _vars(self.vars))


@dataclass(frozen=True)
class Mu(Formula):
    name: str
    params: tuple
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "params", _vars(self.params))


@dataclass(frozen=True)
class Nu(Formula):
    name: str
    params: tuple
    body: Formula

    def __post_init__(self):
        object.__setattr__(self, "params", _vars(self.params))


# -- constructors used by certificate builders ---------------------------------

def conj(formulas) -> Formula:
    """Right-nested conjunction with duplicates dropped; ``T`` when empty."""
    seen = []
    for f in formulas:
        if f not in seen and f != T:
            seen.append(f)
    if not seen:
        return T
    out = seen[-1]
    for f in reversed(seen[:-1]):
        out = And(f, out)
    return out


def neg(f: Formula) -> Formula:
    return f.body if isinstance(f, Not) else Not(f)


def diamond(label, var, body=T, xs=(), ys=()) -> Diamond:
    return Diamond(tuple(xs), tuple(ys), label, var, body)


# -- free variables and propositions -------------------------------------------

@lru_cache(maxsize=None)
def free_vars(phi: Formula) -> frozenset:
    if isinstance(phi, Top):
        return frozenset()
    if isinstance(phi, (And, Or)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (Bind, DualBind, Diamond)):
        return frozenset(phi.xs) | frozenset(phi.ys) | (free_vars(phi.body) - {phi.var})
    if isinstance(phi, (Exec, Box)):
        return free_vars(phi.body) | {phi.var}
    if isinstance(phi, Step):
        return free_vars(desugar(phi))
    if isinstance(phi, PropApply):
        return frozenset(phi.vars)
    if isinstance(phi, (Mu, Nu)):
        return frozenset(phi.params)
    raise TypeError(f"not a formula: {phi!r}")


def is_closed(phi: Formula) -> bool:
    return not free_vars(phi)


@lru_cache(maxsize=None)
def free_props(phi: Formula) -> frozenset:
    if isinstance(phi, Top):
        return frozenset()
    if isinstance(phi, (And, Or)):
        return free_props(phi.left) | free_props(phi.right)
    if isinstance(phi, (Mu, Nu)):
        return free_props(phi.body) - {phi.name}
    if isinstance(phi, PropApply):
        return frozenset([phi.name])
    return free_props(phi.body)


# -- desugaring -----------------------------------------------------------------

def _negate_prop(phi: Formula, name: str) -> Formula:
    """Replace every free occurrence of proposition ``name`` by its negation."""
    if isinstance(phi, PropApply):
        return Not(phi) if phi.name == name else phi
    if isinstance(phi, Top):
        return phi
    if isinstance(phi, (And, Or)):
        return type(phi)(_negate_prop(phi.left, name), _negate_prop(phi.right, name))
    if isinstance(phi, Not):
        return Not(_negate_prop(phi.body, name))
    if isinstance(phi, (Mu, Nu)):
        if phi.name == name:
            return phi
        return type(phi)(phi.name, phi.params, _negate_prop(phi.body, name))
    if isinstance(phi, (Bind, DualBind, Diamond)):
        return type(phi)(phi.xs, phi.ys, phi.label, phi.var, _negate_prop(phi.body, name))
    if isinstance(phi, (Exec, Box)):
        return type(phi)(phi.var, _negate_prop(phi.body, name))
    if isinstance(phi, Step):
        return Step(phi.parts, _negate_prop(phi.body, name))
    raise TypeError(f"not a formula: {phi!r}")


def gfp_desugar(phi: Nu) -> Formula:
    """``nu X(x). phi`` as ``!(mu X(x). !phi~)`` where ``phi~`` negates each ``X``."""
    return Not(Mu(phi.name, phi.params, Not(_negate_prop(phi.body, phi.name))))


@lru_cache(maxsize=None)
def desugar(phi: Formula) -> Formula:
    """Rewrite abbreviations into core constructors.  Idempotent."""
    if isinstance(phi, (Top, PropApply)):
        return phi
    if isinstance(phi, And):
        return And(desugar(phi.left), desugar(phi.right))
    if isinstance(phi, Or):
        return Not(And(Not(desugar(phi.left)), Not(desugar(phi.right))))
    if isinstance(phi, Not):
        return Not(desugar(phi.body))
    if isinstance(phi, Bind):
        return Bind(phi.xs, phi.ys, phi.label, phi.var, desugar(phi.body))
    if isinstance(phi, Exec):
        return Exec(phi.var, desugar(phi.body))
    if isinstance(phi, DualBind):
        return Not(Bind(phi.xs, phi.ys, phi.label, phi.var, Not(desugar(phi.body))))
    if isinstance(phi, Box):
        return Not(Exec(phi.var, Not(desugar(phi.body))))
    if isinstance(phi, Diamond):
        return Bind(phi.xs, phi.ys, phi.label, phi.var, Exec(phi.var, desugar(phi.body)))
    if isinstance(phi, Step):
        inner = desugar(phi.body)
        for _, _, _, v in reversed(phi.parts):
            inner = Exec(v, inner)
        bound = [v for _, _, _, v in phi.parts]
        for i in range(len(phi.parts) - 1, -1, -1):
            xs, ys, a, v = phi.parts[i]
            extra = tuple(w for w in bound[:i] if w not in ys)
            inner = Bind(xs, tuple(ys) + extra, a, v, inner)
        return inner
    if isinstance(phi, Mu):
        return Mu(phi.name, phi.params, desugar(phi.body))
    if isinstance(phi, Nu):
        return desugar(gfp_desugar(Nu(phi.name, phi.params, phi.body)))
    raise TypeError(f"not a formula: {phi!r}")


# -- fragments ------------------------------------------------------------------

HM, STEP, POMSET, HP, FULL = "HM", "step", "pomset", "hp", "full"
FRAGMENTS = (HM, STEP, POMSET, HP, FULL)


def _bool_or(phi, pred, closed_operands=False):
    """Shared clauses T / & / ! of the fragment grammars; None when not boolean."""
    if isinstance(phi, Top):
        return True
    if isinstance(phi, And):
        if closed_operands and not (is_closed(phi.left) and is_closed(phi.right)):
            return False
        return pred(phi.left) and pred(phi.right)
    if isinstance(phi, Not):
        if closed_operands and not is_closed(phi.body):
            return False
        return pred(phi.body)
    return None


def _is_hm(phi):
    b = _bool_or(phi, _is_hm)
    if b is not None:
        return b
    if isinstance(phi, Bind) and not phi.xs and not phi.ys and isinstance(phi.body, Exec) \
            and phi.body.var == phi.var:
        return _is_hm(phi.body.body)
    return False


def _step_block(phi):
    """Decompose a step-product block; return its continuation or None."""
    bound = []
    cur = phi
    while isinstance(cur, Bind):
        if cur.xs or set(cur.ys) != set(bound) or cur.var in bound:
            return None
        bound.append(cur.var)
        cur = cur.body
    if not bound:
        return None
    executed = []
    while isinstance(cur, Exec) and len(executed) < len(bound):
        executed.append(cur.var)
        cur = cur.body
    if sorted(executed) != sorted(bound):
        return None
    return cur


def _is_step(phi):
    b = _bool_or(phi, _is_step)
    if b is not None:
        return b
    rest = _step_block(phi)
    return rest is not None and _is_step(rest)


def _is_diamond_core(phi):
    return isinstance(phi, Bind) and isinstance(phi.body, Exec) and phi.body.var == phi.var


def _is_pomset(phi):
    b = _bool_or(phi, _is_pomset, closed_operands=True)
    if b is not None:
        return b
    return _is_diamond_core(phi) and _is_pomset(phi.body.body)


def _is_hp(phi):
    b = _bool_or(phi, _is_hp)
    if b is not None:
        return b
    return _is_diamond_core(phi) and _is_hp(phi.body.body)


def _has_fixpoints(phi):
    if isinstance(phi, (PropApply, Mu, Nu)):
        return True
    if isinstance(phi, Top):
        return False
    if isinstance(phi, (And, Or)):
        return _has_fixpoints(phi.left) or _has_fixpoints(phi.right)
    return _has_fixpoints(phi.body)


def fragment_of(phi: Formula) -> frozenset:
    """Fragments whose grammar contains ``phi`` (after desugaring)."""
    if _has_fixpoints(phi):
        return frozenset([FULL])
    core = desugar(phi)
    tags = {FULL}
    if _is_hm(core):
        tags.add(HM)
    if _is_step(core):
        tags.add(STEP)
    if _is_pomset(core):
        tags.add(POMSET)
    if _is_hp(core):
        tags.add(HP)
    return frozenset(tags)


def in_fragment(phi: Formula, fragment: str) -> bool:
    return fragment in fragment_of(phi)


# -- pomset formulas --------------------------------------------------------------

def pomset_formula(p, body: Formula = T, prefix: str = "z") -> Formula:
    """Nested bind-and-execute formula characterising the pomset ``p``.

    The carrier is named ``z1..zn`` in carrier order.  At each unfolding the
    maximal element with the highest index goes innermost.
    """
    names = {e: f"{prefix}{i + 1}" for i, e in enumerate(p.carrier)}
    remaining = list(p.carrier)
    out = body
    while remaining:
        maximal = [e for e in remaining if not any((e, d) in p.order for d in remaining)]
        z = max(maximal, key=remaining.index)
        remaining.remove(z)
        xs = tuple(names[d] for d in remaining if (d, z) in p.order)
        ys = tuple(names[d] for d in remaining if (d, z) not in p.order)
        out = Diamond(xs, ys, p.labels[p.carrier.index(z)], names[z], out)
    return out


def pomset_class_member(p, spec) -> bool:
    """Whether ``p`` (carrier position i named by the i-th binder) fits the prefix ``spec``.

    ``spec`` is a sequence of ``(xs, ys, label, var)``.
    """
    spec = list(spec)
    if len(spec) != len(p.carrier):
        raise ArityMismatch(f"{len(spec)} binders for a pomset of size {len(p.carrier)}")
    pos = {v: p.carrier[i] for i, (_, _, _, v) in enumerate(spec)}
    for i, (xs, ys, a, v) in enumerate(spec):
        e = p.carrier[i]
        if p.labels[i] != a:
            return False
        for x in xs:
            if x not in pos or not (pos[x] == e or (pos[x], e) in p.order):
                return False
        for y in ys:
            if y not in pos or pos[y] == e or (pos[y], e) in p.order:
                return False
    return True


def binder_prefix(phi: Formula):
    """Split a chain of bind-and-execute prefixes: ``(headers, continuation)``."""
    core = desugar(phi)
    headers = []
    while _is_diamond_core(core):
        headers.append((core.xs, core.ys, core.label, core.var))
        core = core.body.body
    return headers, core


def rename_free(phi: Formula, old: str, new: str) -> Formula:
    """Substitute variable ``new`` for free occurrences of ``old``.

    Callers guarantee ``new`` is not captured by binders inside ``phi``.
    """
    if old == new:
        return phi
    r = lambda vs: tuple(new if v == old else v for v in vs)
    if isinstance(phi, Top):
        return phi
    if isinstance(phi, (And, Or)):
        return type(phi)(rename_free(phi.left, old, new), rename_free(phi.right, old, new))
    if isinstance(phi, Not):
        return Not(rename_free(phi.body, old, new))
    if isinstance(phi, (Bind, DualBind, Diamond)):
        body = phi.body if phi.var == old else rename_free(phi.body, old, new)
        return type(phi)(r(phi.xs), r(phi.ys), phi.label, phi.var, body)
    if isinstance(phi, (Exec, Box)):
        return type(phi)(new if phi.var == old else phi.var, rename_free(phi.body, old, new))
    if isinstance(phi, Step):
        return rename_free(desugar(phi), old, new)
    if isinstance(phi, PropApply):
        return PropApply(phi.name, r(phi.vars))
    if isinstance(phi, (Mu, Nu)):
        return type(phi)(phi.name, r(phi.params), phi.body if old in phi.params
                         else rename_free(phi.body, old, new))
    raise TypeError(f"not a formula: {phi!r}")


def size(phi: Formula) -> int:
    if isinstance(phi, (Top, PropApply)):
        return 1
    if isinstance(phi, (And, Or)):
        return 1 + size(phi.left) + size(phi.right)
    return 1 + size(phi.body)
