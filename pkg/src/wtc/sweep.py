"""Exhaustive enumeration of small event structures up to isomorphism."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Callable, Iterator

from .errors import BoundsExceeded
from .pes import TAU, PrimeEventStructure, validate_pes

MAX_EVENTS = 5
MAX_TAU = 2


@dataclass(frozen=True)
class SweepSpec:
    max_events: int
    alphabet: tuple = ("a",)
    max_tau: int = 0
    min_events: int = 0
    keep: Callable = field(default=None, compare=False)  # optional structural filter

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        if not 0 <= self.max_events <= MAX_EVENTS:
            raise BoundsExceeded(f"max_events must be between 0 and {MAX_EVENTS}")
        if not 0 <= self.max_tau <= MAX_TAU:
            raise BoundsExceeded(f"max_tau must be between 0 and {MAX_TAU}")
        if TAU in self.alphabet:
            raise ValueError("the alphabet lists visible labels only")


def _orders(n):
    """Transitively closed strict orders whose pairs all satisfy i < j."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if all((i, k) in rel for i, j in rel for j2, k in rel if j == j2):
            yield frozenset(rel)


def _conflicts(n, order):
    """Symmetric hereditary conflict relations over incomparable pairs."""
    free = [(i, j) for i in range(n) for j in range(i + 1, n)
            if (i, j) not in order and (j, i) not in order]
    above = [{e} | {b for a, b in order if a == e} for e in range(n)]
    seen = set()
    for k in range(len(free) + 1):
        for gens in combinations(free, k):
            closed = set()
            ok = True
            for a, b in gens:
                for d in above[a]:
                    for e in above[b]:
                        if d == e or (min(d, e), max(d, e)) not in free:
                            ok = False
                        closed.add((min(d, e), max(d, e)))
            if ok and frozenset(closed) == frozenset(gens) and closed not in seen:
                seen.add(frozenset(closed))
                yield frozenset(closed)


def canonical_key(labels, order, conflict) -> tuple:
    """Least encoding over relabellings that respect a refinement colouring."""
    n = len(labels)
    sym = {(a, b) for a, b in conflict} | {(b, a) for a, b in conflict}
    colour = [(labels[e],
               sum(1 for a, b in order if b == e),
               sum(1 for a, b in order if a == e),
               sum(1 for a, b in sym if a == e)) for e in range(n)]
    for _ in range(n):
        colour = [(colour[e],
                   tuple(sorted(colour[a] for a, b in order if b == e)),
                   tuple(sorted(colour[b] for a, b in order if a == e)),
                   tuple(sorted(colour[b] for a, b in sym if a == e))) for e in range(n)]
        rank = {c: k for k, c in enumerate(sorted(set(colour)))}
        colour = [rank[c] for c in colour]
    groups = {}
    for e in sorted(range(n), key=lambda e: colour[e]):
        groups.setdefault(colour[e], []).append(e)
    best = None
    for choice in product(*(permutations(g) for g in groups.values())):
        seq = [e for g in choice for e in g]
        pos = {e: k for k, e in enumerate(seq)}
        key = (tuple(labels[e] for e in seq),
               tuple(sorted((pos[a], pos[b]) for a, b in order)),
               tuple(sorted(tuple(sorted((pos[a], pos[b]))) for a, b in conflict)))
        if best is None or key < best:
            best = key
    return best


def pes_key(pes: PrimeEventStructure) -> tuple:
    conflict = {(a, b) for a, b in pes.conflict if a < b}
    return canonical_key(pes.labels, pes.order, conflict)


def _label_tuples(n, alphabet, max_tau):
    for labels in product(tuple(alphabet) + (TAU,), repeat=n):
        if labels.count(TAU) <= max_tau:
            yield labels


def sweep_small_pes(spec: SweepSpec) -> Iterator[PrimeEventStructure]:
    """All non-isomorphic PESs within ``spec`` in a deterministic order."""
    seen = set()
    count = 0
    for n in range(spec.min_events, spec.max_events + 1):
        for order in _orders(n):
            for conflict in _conflicts(n, order):
                for labels in _label_tuples(n, spec.alphabet, spec.max_tau):
                    key = canonical_key(labels, order, conflict)
                    if key in seen:
                        continue
                    seen.add(key)
                    pes = validate_pes(labels, order, conflict, name=f"s{count}")
                    count += 1
                    if spec.keep is None or spec.keep(pes):
                        yield pes


def random_pes(rng: random.Random, n: int, alphabet=("a", "b"), tau_prob: float = 0.3,
               order_prob: float = 0.3, conflict_prob: float = 0.2) -> PrimeEventStructure:
    """Random PES on ``n`` events: generating pairs drawn independently, then validated."""
    labels = [TAU if rng.random() < tau_prob else rng.choice(alphabet) for _ in range(n)]
    causes = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < order_prob]
    closure = validate_pes(labels, causes)
    conflicts = []
    for i in range(n):
        for j in range(i + 1, n):
            if closure.less(i, j) or rng.random() >= conflict_prob:
                continue
            trial = conflicts + [(i, j)]
            try:
                validate_pes(labels, causes, trial)
            except Exception:
                continue
            conflicts = trial
    return validate_pes(labels, causes, conflicts)
