"""Event structure built from a weak hhp-bisimulation.

Its events are triples ``(e1, f, e2)`` of visible events whose histories
are related by ``f``; causality is inclusion of the bijections and two
triples conflict when no related triple contains both histories.
"""
from __future__ import annotations

from dataclasses import dataclass

from .equivalence import (EquivalenceKind, HHP, WEAK, _hp_violation, _refine, hhp_prefix_function,
                          is_bisimulation)
from .errors import NotABisimulation
from .pes import EMPTY, PrimeEventStructure, enumerate_configurations, is_consistent, validate_pes
from .pomset import PosetalTriple


@dataclass(frozen=True)
class QuotientPes:
    structure: PrimeEventStructure
    triples: tuple  # quotient event id -> (e1, f, e2)
    projections: tuple  # (tuple of e1 per event, tuple of e2 per event)

    def project(self, side: int, events) -> frozenset:
        return frozenset(self.projections[side][e] for e in events)


def _contains(big, small):
    c, g, d = big
    c2, g2, d2 = small
    return c2 <= c and d2 <= d and set(g2) <= set(g)


def build_quotient_pes(pes1, pes2, relation) -> QuotientPes:
    rel = frozenset(PosetalTriple(*t) for t in relation)
    if not is_bisimulation(EquivalenceKind(HHP, WEAK), pes1, pes2, rel):
        raise NotABisimulation("relation is not a weak hhp-bisimulation containing (∅, ∅, ∅)")
    hist = {}
    for c1, f, c2 in rel:
        for e1, e2 in f:
            h = (pes1.below(e1), f, pes2.below(e2))
            if h[0] == c1 and h[2] == c2:
                hist[(e1, f, e2)] = h
    triples = sorted(hist, key=lambda t: (len(t[1]), t[1], t[0], t[2]))
    n = len(triples)
    order, conflict = [], []
    for i, (a1, f, a2) in enumerate(triples):
        for j, (b1, g, b2) in enumerate(triples):
            if i == j:
                continue
            if set(f) <= set(g):
                order.append((i, j))
            elif i < j and not set(g) <= set(f):
                hi, hj = hist[triples[i]], hist[triples[j]]
                if not any(_contains(t, hi) and _contains(t, hj) for t in rel):
                    conflict.append((i, j))
    labels = [pes1.labels[t[0]] for t in triples]
    names = [f"q{k + 1}" for k in range(n)]
    structure = validate_pes(labels, order, conflict, names=names, name="quotient")
    proj = (tuple(t[0] for t in triples), tuple(t[2] for t in triples))
    return QuotientPes(structure, tuple(triples), proj)


def projection_candidates(q: QuotientPes, side: int, target: PrimeEventStructure) -> set:
    """``(C, pi|C, D)`` for every configuration ``C`` of the quotient and every ``D`` of
    ``target`` whose visible part is the projection of ``C``."""
    by_visible = {}
    for d in enumerate_configurations(target):
        by_visible.setdefault(d & target.visible_events, []).append(d)
    out = set()
    for c in enumerate_configurations(q.structure):
        image = q.project(side, c)
        f = tuple(sorted((e, q.projections[side][e]) for e in c))
        for d in by_visible.get(image, ()):
            out.add(PosetalTriple(c, f, d))
    return out


def projection_relation(q: QuotientPes, side: int, target: PrimeEventStructure) -> frozenset:
    """Largest weak hhp-bisimulation inside :func:`projection_candidates`."""
    cands = projection_candidates(q, side, target)
    pre = hhp_prefix_function(q.structure, target, weak=True)
    rel, _, _ = _refine(cands, _hp_violation(q.structure, target, True, pre))
    return rel


def check_projection(q: QuotientPes, side: int, target: PrimeEventStructure) -> bool:
    """The projection relation is a weak hhp-bisimulation covering every configuration."""
    rel = projection_relation(q, side, target)
    if (EMPTY, (), EMPTY) not in rel:
        return False
    covered = {c for c, _, _ in rel}
    if covered != set(enumerate_configurations(q.structure)):
        return False
    return is_bisimulation(EquivalenceKind(HHP, WEAK), q.structure, target, rel)


def projection_properties(q: QuotientPes, side: int, target: PrimeEventStructure) -> dict:
    """Label, causality and concurrency preservation plus injectivity on consistent sets."""
    s = q.structure
    pi = q.projections[side]
    events = list(s.events)
    labels = all(s.labels[e] == target.labels[pi[e]] for e in events)
    causal = all(target.less(pi[a], pi[b]) for a, b in s.order)
    concurrent = all(not target.leq(pi[a], pi[b]) and not target.leq(pi[b], pi[a])
                     and not target.in_conflict(pi[a], pi[b])
                     for a in events for b in events
                     if a < b and not s.leq(a, b) and not s.leq(b, a) and not s.in_conflict(a, b))
    injective = all(pi[a] != pi[b] for a in events for b in events
                    if a < b and is_consistent(s, (a, b)))
    return {"labels": labels, "causality": causal, "concurrency": concurrent,
            "injective": injective}
