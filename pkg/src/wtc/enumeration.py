"""Bounded search for formulas that separate two event structures.

Closed fragments (HM, step, pomset) are explored exactly up to modal depth
by partition refinement: existential modalities distribute over
disjunction, so applying each modality to the blocks of the previous
partition generates every formula of the next depth up to Boolean
combination.  A modality over ``n`` events costs ``n`` depth units.

Open fragments (hp, full) are explored syntactically by operator count with
semantic deduplication on ``(free variables, denotation left, denotation right)``.

Fixpoint formulas ``mu X(). body`` and ``nu X(). body`` are explored over
bodies of bounded operator count.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .formula import (FULL, HM, HP, POMSET, STEP, And, Bind, Diamond, Exec, Mu, Not, Nu, Or,
                      PropApply, Step, T, conj, free_vars, neg, pomset_formula)
from .pes import EMPTY
from .pomset import Pomset
from .semantics import ModelChecker

DEFAULT_MAX_DEPTH = 4


@dataclass
class SearchResult:
    fragment: str
    depth: int
    separator: object = None
    satisfied_by: str = None
    explored: int = 0

    @property
    def equivalent(self) -> bool:
        """No separator found up to ``depth``."""
        return self.separator is None


def _alphabet(pes1, pes2):
    return sorted({l for p in (pes1, pes2) for e, l in enumerate(p.labels)
                   if e in p.visible_events})


def _pomsets(labels, size):
    """All pomsets with ``size`` events over ``labels``, one per isomorphism class."""
    from .equivalence import pomset_key
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
    seen = {}
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if not all((i, k) in rel for i, j in rel for j2, k in rel if j == j2):
            continue
        for labs in product(labels, repeat=size):
            p = Pomset(tuple(range(size)), frozenset(rel), labs)
            seen.setdefault(pomset_key(p), p)
    return [seen[k] for k in sorted(seen)]


def modalities(fragment, labels, max_size):
    """``(cost, builder)`` pairs; ``builder(body)`` wraps a closed body."""
    out = []
    for a in labels:
        out.append((1, lambda body, a=a: Diamond((), (), a, "x", body)))
    if fragment == HM:
        return out
    for n in range(2, max_size + 1):
        if fragment == STEP:
            for labs in sorted({tuple(sorted(c)) for c in product(labels, repeat=n)}):
                parts = tuple(((), (), a, f"x{i + 1}") for i, a in enumerate(labs))
                out.append((n, lambda body, parts=parts: Step(parts, body)))
        elif fragment == POMSET:
            for p in _pomsets(labels, n):
                out.append((n, lambda body, p=p: pomset_formula(p, body, prefix="x")))
    return out


class _Evaluator:
    def __init__(self, pes1, pes2, strict=False):
        self.mc = (ModelChecker(pes1, strict), ModelChecker(pes2, strict))
        self.points = [(0, c) for c in self.mc[0].configs] + [(1, c) for c in self.mc[1].configs]
        self.count = 0

    def extension(self, phi) -> frozenset:
        """Configurations (tagged by side) satisfying a closed formula."""
        self.count += 1
        return frozenset((i, c) for i in (0, 1) for c, _ in self.mc[i].denote(phi))

    def sig(self, phi):
        self.count += 1
        return (free_vars(phi), self.mc[0].denote(phi), self.mc[1].denote(phi))

    def separates(self, phi):
        d1 = (EMPTY, ()) in self.mc[0].denote(phi)
        d2 = (EMPTY, ()) in self.mc[1].denote(phi)
        if d1 == d2:
            return None
        return "left" if d1 else "right"


def _block_formula(block, generators, points):
    """Short conjunction of generator literals whose extension is exactly ``block``."""
    sample = next(iter(block))
    lits = []
    for phi, ext in generators:
        lits.append((phi, ext) if sample in ext else (neg(phi), frozenset(points) - ext))
    chosen = []
    current = frozenset(points)
    while current != block:
        phi, ext = min(lits, key=lambda l: len(current & l[1]))
        chosen.append(phi)
        current &= ext
        lits.remove((phi, ext))
    return conj(chosen)


def _closed_search(pes1, pes2, fragment, depth, ev):
    labels = _alphabet(pes1, pes2)
    max_size = max(len(pes1.visible_events), len(pes2.visible_events), 1)
    mods = modalities(fragment, labels, min(max_size, depth))
    start = ((0, EMPTY), (1, EMPTY))
    blocks = {0: [(T, frozenset(ev.points))]}
    generators = []
    for d in range(1, depth + 1):
        for cost, build in mods:
            if cost > d:
                continue
            for body, _ in blocks[d - cost]:
                phi = build(body)
                ext = ev.extension(phi)
                if all(ext != g for _, g in generators):
                    generators.append((phi, ext))
                    if (start[0] in ext) != (start[1] in ext):
                        return phi if start[0] in ext else Not(phi), d
        # partition of the points by the generators found so far
        cells = {}
        for pt in ev.points:
            cells.setdefault(tuple(pt in ext for _, ext in generators), set()).add(pt)
        blocks[d] = [(_block_formula(frozenset(b), generators, ev.points), frozenset(b))
                     for b in cells.values()]
    return None, depth


def _open_search(pes1, pes2, fragment, depth, ev, max_vars=None):
    labels = _alphabet(pes1, pes2)
    k = max_vars or max(len(pes1.visible_events), len(pes2.visible_events), 1)
    pool = [f"z{i + 1}" for i in range(k)]
    known = {}
    layers = []

    def add(phi, layer):
        s = ev.sig(phi)
        if s in known:
            return None
        known[s] = phi
        layer.append(phi)
        if not s[0]:
            side = ev.separates(phi)
            if side:
                return phi if side == "left" else Not(phi)
        return None

    layer0 = []
    add(T, layer0)
    layers.append(layer0)
    for d in range(1, depth + 1):
        fresh = []
        prev = [phi for layer in layers for phi in layer]
        last = layers[-1]
        for phi in last:
            found = add(neg(phi), fresh)
            if found is not None:
                return found, d
        for phi in last:
            for psi in prev:
                if phi is psi:
                    continue
                found = add(And(phi, psi), fresh)
                if found is not None:
                    return found, d
        for phi in last:
            for z in pool:
                if fragment == FULL:
                    found = add(Exec(z, phi), fresh)
                    if found is not None:
                        return found, d
                rest = [v for v in pool if v != z]
                for a in labels:
                    for assign in product((0, 1, 2), repeat=len(rest)):
                        xs = tuple(v for v, c in zip(rest, assign) if c == 1)
                        ys = tuple(v for v, c in zip(rest, assign) if c == 2)
                        if fragment == HP:
                            node = Diamond(xs, ys, a, z, phi)
                        else:
                            node = Bind(xs, ys, a, z, phi)
                        found = add(node, fresh)
                        if found is not None:
                            return found, d
        layers.append(fresh)
    return None, depth


def bounded_logical_equiv(pes1, pes2, fragment: str = HM, depth: int = 3,
                          max_depth: int = DEFAULT_MAX_DEPTH, strict_independence=False):
    """Search for a closed formula of ``fragment`` holding on exactly one side."""
    if depth > max_depth:
        from .errors import BoundsExceeded
        raise BoundsExceeded(f"depth {depth} exceeds the configured maximum {max_depth}")
    ev = _Evaluator(pes1, pes2, strict_independence)
    if fragment in (HM, STEP, POMSET):
        phi, d = _closed_search(pes1, pes2, fragment, depth, ev)
    elif fragment in (HP, FULL):
        phi, d = _open_search(pes1, pes2, fragment, depth, ev)
    else:
        raise ValueError(f"unknown fragment {fragment!r}")
    res = SearchResult(fragment, d, explored=ev.count)
    if phi is not None:
        res.separator, res.satisfied_by = (phi.body, "right") if isinstance(phi, Not) \
            else (phi, "left")
    return res


# -- fixpoint formulas --------------------------------------------------------------

def fixpoint_bodies(labels, size, name="X"):
    """Positive bodies over ``X()`` with at most ``size`` operators."""
    x = PropApply(name, ())
    by_size = {0: [x, T]}
    for s in range(1, size + 1):
        out = []
        for b in by_size[s - 1]:
            for a in labels:
                out.append(Diamond((), (), a, "x", b))
                out.append(Not(Diamond((), (), a, "x", Not(b))))
            if name not in _props(b):
                out.append(Not(b))
        for s1 in range(0, s):
            s2 = s - 1 - s1
            if s2 < s1:
                continue
            for b1 in by_size[s1]:
                for b2 in by_size[s2]:
                    if s1 == s2 and repr(b2) < repr(b1):
                        continue
                    out.append(Or(b1, b2))
                    out.append(And(b1, b2))
        by_size[s] = out
    return [b for s in range(size + 1) for b in by_size[s]]


def _props(phi):
    from .formula import free_props
    return free_props(phi)


def bounded_mu_equiv(pes1, pes2, size: int = 3, name="X"):
    """Search ``mu X(). b`` and ``nu X(). b`` for bodies with at most ``size`` operators."""
    ev = _Evaluator(pes1, pes2)
    labels = _alphabet(pes1, pes2)
    seen = set()
    for body in fixpoint_bodies(labels, size, name):
        for fix in (Mu(name, (), body), Nu(name, (), body)):
            ext = ev.extension(fix)
            if ext in seen:
                continue
            seen.add(ext)
            side = ev.separates(fix)
            if side:
                return SearchResult(FULL, size, fix, side, ev.count)
    return SearchResult(FULL, size, None, None, ev.count)
