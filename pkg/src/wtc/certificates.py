"""Distinguishing formulas read off refutation ranks.

An element removed in round ``r`` was removed because one side had a move
whose every answer leads to an element removed in an earlier round.  The
formula for the element is the modality of that move applied to the
conjunction of the formulas of the answers, negated when the attacking move
came from the right-hand structure.
"""
from __future__ import annotations

import itertools

from .equivalence import (HHP, HP, INTERLEAVING, POMSET, STEP, EquivalenceKind, Verdict,
                          _flat_moves, _initial, _single_moves, check_hp_bisim)
from .errors import NotApplicable
from .formula import Diamond, Formula, Not, Step, conj, neg, pomset_formula, rename_free
from .pomset import _pomset


def _orient(phi):
    """Strip a top-level negation: ``(formula, side that satisfies it)``."""
    if isinstance(phi, Not):
        return phi.body, "right"
    return phi, "left"


class _FlatBuilder:
    def __init__(self, verdict, pes1, pes2):
        self.v, self.pes1, self.pes2 = verdict, pes1, pes2
        self.memo = {}

    def modality(self, pes, x, body):
        kind = self.v.kind.kind
        events = sorted(x, key=lambda e: (pes.labels[e], e))
        if kind == POMSET:
            return pomset_formula(_pomset(pes, x), body, prefix="x")
        if len(events) == 1:
            return Diamond((), (), pes.labels[events[0]], "x", body)
        if kind == STEP:
            return Step(tuple(((), (), pes.labels[e], f"x{i + 1}") for i, e in enumerate(events)),
                        body)
        raise AssertionError(f"multi-event move for {kind}")

    def dist(self, pair) -> Formula:
        """Closed formula true at ``pair[0]`` and false at ``pair[1]``."""
        if pair in self.memo:
            return self.memo[pair]
        side, (k, x, d) = self.v.reasons[pair]
        c1, c2 = pair
        if side == "left":
            answers = [d2 for k2, _, d2 in _flat_moves(self.pes2, c2, self.v.kind) if k2 == k]
            body = conj(self.dist((d, d2)) for d2 in answers)
            phi = self.modality(self.pes1, x, body)
        else:
            answers = [d1 for k1, _, d1 in _flat_moves(self.pes1, c1, self.v.kind) if k1 == k]
            body = conj(neg(self.dist((d1, d))) for d1 in answers)
            phi = neg(self.modality(self.pes2, x, body))
        self.memo[pair] = phi
        return phi


class _HpBuilder:
    """Open formulas over variables naming the left events of the bijection."""

    def __init__(self, verdict, pes1, pes2):
        self.v, self.pes1, self.pes2 = verdict, pes1, pes2
        self.memo = {}
        self.fresh = itertools.count(1)

    def var(self, e):
        return f"v{e + 1}"

    def dist(self, t) -> Formula:
        if t in self.memo:
            return self.memo[t]
        side, move = self.v.reasons[t]
        if side == "prefix":
            raise NotApplicable("downward-closure refutations have no hp formula")
        c1, f, c2 = t
        weak = self.v.kind.weak
        if side == "left":
            e1, d1 = move
            bodies = []
            for e2, d2 in _single_moves(self.pes2, c2, weak):
                nxt = (d1, tuple(sorted(f + ((e1, e2),))), d2)
                if self.pes2.labels[e2] == self.pes1.labels[e1] and nxt in self.v.ranks:
                    bodies.append(self.dist(nxt))
            xs = tuple(self.var(a) for a, _ in f if self.pes1.less(a, e1))
            ys = tuple(self.var(a) for a, _ in f if not self.pes1.less(a, e1))
            phi = Diamond(xs, ys, self.pes1.labels[e1], self.var(e1), conj(bodies))
        else:
            e2, d2 = move
            w = f"w{next(self.fresh)}"
            bodies = []
            for e1, d1 in _single_moves(self.pes1, c1, weak):
                nxt = (d1, tuple(sorted(f + ((e1, e2),))), d2)
                if self.pes1.labels[e1] == self.pes2.labels[e2] and nxt in self.v.ranks:
                    bodies.append(neg(rename_free(self.dist(nxt), self.var(e1), w)))
            xs = tuple(self.var(a) for a, b in f if self.pes2.less(b, e2))
            ys = tuple(self.var(a) for a, b in f if not self.pes2.less(b, e2))
            phi = neg(Diamond(xs, ys, self.pes2.labels[e2], w, conj(bodies)))
        self.memo[t] = phi
        return phi


def distinguishing_formula(kind, pes1, pes2, failed: Verdict, depth: int = 8):
    """Closed formula satisfied by exactly one side, as ``(formula, side)``.

    Returns ``(None, None)`` when only the game trace is available: strong
    kinds (the logic observes weak behaviour only) and hhp refutations with
    no separator up to ``depth``.
    """
    ek = EquivalenceKind.parse(kind) if isinstance(kind, str) else kind
    if failed.equivalent:
        raise NotApplicable("the structures are equivalent; nothing to distinguish")
    if not ek.weak:
        return None, None
    if ek.kind in (INTERLEAVING, STEP, POMSET):
        return _orient(_FlatBuilder(failed, pes1, pes2).dist(_initial(failed)))
    if ek.kind == HP:
        return _orient(_HpBuilder(failed, pes1, pes2).dist(_initial(failed)))
    assert ek.kind == HHP
    hp = check_hp_bisim("weak", pes1, pes2, certificate=False)
    if not hp.equivalent:
        return _orient(_HpBuilder(hp, pes1, pes2).dist(_initial(hp)))
    from .enumeration import bounded_logical_equiv
    found = bounded_logical_equiv(pes1, pes2, "full", min(depth, 4))
    if found.separator is None:
        return None, None
    return found.separator, found.satisfied_by


def attach_certificate(verdict: Verdict, pes1, pes2) -> None:
    phi, side = distinguishing_formula(verdict.kind, pes1, pes2, verdict)
    verdict.certificate, verdict.satisfied_by = phi, side
