"""Induced pomsets, pomset isomorphism and posetal triples.

Bijections between event sets are represented as sorted tuples of
``(left, right)`` pairs so they can live inside hashable triples.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple

from .errors import (DomainClash, InconsistentSet, RangeClash, TauArgument,
                     TauInCarrier)
from .pes import (PrimeEventStructure, enumerate_configurations, is_configuration,
                  is_consistent, is_tau)


@dataclass(frozen=True)
class Pomset:
    """Labelled partial order over ``carrier`` (event ids in ascending order)."""

    carrier: tuple
    order: frozenset  # strict pairs (d, e), d < e in the pomset
    labels: tuple  # aligned with carrier

    def __len__(self):
        return len(self.carrier)

    def label_of(self, e):
        return self.labels[self.carrier.index(e)]

    def less(self, d, e):
        return (d, e) in self.order

    @property
    def is_antichain(self):
        return not self.order

    def __repr__(self):
        evs = ",".join(f"{e}:{l}" for e, l in zip(self.carrier, self.labels))
        rel = ",".join(f"{d}<{e}" for d, e in sorted(self.order))
        return f"Pomset({evs}" + (f" | {rel})" if rel else ")")


def _pomset(pes: PrimeEventStructure, xs) -> Pomset:
    carrier = tuple(sorted(xs))
    order = frozenset((d, e) for d in carrier for e in carrier if d != e and pes.less(d, e))
    return Pomset(carrier, order, tuple(pes.labels[e] for e in carrier))


def induced_pomset(pes: PrimeEventStructure, xs) -> Pomset:
    """The causal order and labelling of ``pes`` restricted to ``xs``."""
    xs = frozenset(xs)
    if not is_consistent(pes, xs):
        raise InconsistentSet(f"{sorted(xs)} is not consistent")
    if any(is_tau(pes.labels[e]) for e in xs):
        raise TauInCarrier("silent events cannot belong to a pomset carrier")
    return _pomset(pes, xs)


def strong_pomset(pes: PrimeEventStructure, xs) -> Pomset:
    """Like :func:`induced_pomset` but silent events are kept as ordinary labels."""
    return _pomset(pes, xs)


def _invariant(p: Pomset, e):
    return (p.label_of(e),
            sum(1 for d in p.carrier if (d, e) in p.order),
            sum(1 for d in p.carrier if (e, d) in p.order))


def _isomorphisms(p: Pomset, q: Pomset) -> Iterator[dict]:
    if len(p) != len(q) or sorted(p.labels) != sorted(q.labels) or len(p.order) != len(q.order):
        return
    inv_q = {g: _invariant(q, g) for g in q.carrier}
    cands = [[g for g in q.carrier if inv_q[g] == _invariant(p, e)] for e in p.carrier]
    if any(not c for c in cands):
        return
    mapping = {}
    used = set()
    src = p.carrier

    def extend(i):
        if i == len(src):
            yield dict(mapping)
            return
        e = src[i]
        for g in cands[i]:
            if g in used:
                continue
            ok = True
            for d, h in mapping.items():
                if ((d, e) in p.order) != ((h, g) in q.order) or ((e, d) in p.order) != ((g, h) in q.order):
                    ok = False
                    break
            if not ok:
                continue
            mapping[e] = g
            used.add(g)
            yield from extend(i + 1)
            del mapping[e]
            used.discard(g)

    yield from extend(0)


def pomset_isomorphic(p: Pomset, q: Pomset):
    """Return the lexicographically least isomorphism ``p -> q`` as a dict, or None."""
    return next(_isomorphisms(p, q), None)


def all_isomorphisms(p: Pomset, q: Pomset) -> Iterator[dict]:
    """Every isomorphism ``p -> q``, lexicographically ordered."""
    return _isomorphisms(p, q)


def as_pairs(f) -> tuple:
    items = f.items() if isinstance(f, dict) else f
    return tuple(sorted(items))


def extend_iso(f, e1, e2, pes1: PrimeEventStructure | None = None,
               pes2: PrimeEventStructure | None = None) -> tuple:
    """``f[e1 -> e2]``: add one pair to a bijection.

    Silent arguments are rejected when the owning structures are supplied.
    """
    pairs = as_pairs(f)
    if pes1 is not None and is_tau(pes1.labels[e1]):
        raise TauArgument(f"{pes1.names[e1]} is silent")
    if pes2 is not None and is_tau(pes2.labels[e2]):
        raise TauArgument(f"{pes2.names[e2]} is silent")
    if any(a == e1 for a, _ in pairs):
        raise DomainClash(f"{e1} already mapped")
    if any(b == e2 for _, b in pairs):
        raise RangeClash(f"{e2} already in the range")
    return tuple(sorted(pairs + ((e1, e2),)))


class PosetalTriple(NamedTuple):
    left: frozenset
    iso: tuple
    right: frozenset


def _observed(pes, config, strong):
    return frozenset(config) if strong else frozenset(config) & pes.visible_events


def is_iso_between(pes1, pes2, xs1, f, xs2) -> bool:
    """Whether ``f`` is a label and order preserving bijection ``xs1 -> xs2``."""
    pairs = as_pairs(f)
    dom = {a for a, _ in pairs}
    rng = {b for _, b in pairs}
    if dom != set(xs1) or rng != set(xs2) or len(rng) != len(pairs):
        return False
    for a, b in pairs:
        if pes1.labels[a] != pes2.labels[b]:
            return False
    for a, b in pairs:
        for c, d in pairs:
            if a != c and pes1.less(a, c) != pes2.less(b, d):
                return False
    return True


def is_posetal_triple(pes1, pes2, c1, f, c2, strong: bool = False) -> bool:
    if not is_configuration(pes1, c1) or not is_configuration(pes2, c2):
        return False
    return is_iso_between(pes1, pes2, _observed(pes1, c1, strong), f, _observed(pes2, c2, strong))


def pointwise_prefixes(pes1, pes2, t: PosetalTriple, configs1=None, configs2=None,
                       strong: bool = False) -> set:
    """Every triple below ``t`` pointwise: sub-configurations with the restricted bijection."""
    c1, f, c2 = t
    fmap = dict(f)
    configs1 = configs1 if configs1 is not None else enumerate_configurations(pes1)
    configs2 = configs2 if configs2 is not None else enumerate_configurations(pes2)
    subs2 = [d for d in configs2 if d <= c2]
    out = set()
    for d1 in configs1:
        if not d1 <= c1:
            continue
        vis = _observed(pes1, d1, strong)
        g = tuple(sorted((a, fmap[a]) for a in vis))
        image = frozenset(fmap[a] for a in vis)
        for d2 in subs2:
            if _observed(pes2, d2, strong) == image:
                out.add(PosetalTriple(d1, g, d2))
    return out


def history_prefixes(pes1, pes2, t: PosetalTriple, strong: bool = False) -> set:
    """Prefixes of ``t`` obtained by keeping a causally closed part of its history.

    For every sub-configuration ``D`` of the observed part, the prefix is
    ``(down(D), f|D, down(f(D)))``: each side keeps exactly the causes of
    the retained observable events.  In the strong case ``down(D) = D``.
    """
    c1, f, c2 = t
    fmap = dict(f)
    observed = sorted(fmap)
    out = set()
    for k in range(len(observed) + 1):
        for sub in combinations(observed, k):
            sub = frozenset(sub)
            d1 = frozenset().union(*(pes1.below(e) for e in sub)) if sub else frozenset()
            if strong:
                if d1 != sub:
                    continue
            elif d1 & pes1.visible_events != sub:
                continue
            image = frozenset(fmap[e] for e in sub)
            d2 = frozenset().union(*(pes2.below(e) for e in image)) if image else frozenset()
            g = tuple(sorted((a, fmap[a]) for a in sub))
            out.add(PosetalTriple(d1, g, d2))
    return out
