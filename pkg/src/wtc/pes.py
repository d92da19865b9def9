"""Finite prime event structures with silent events.

Events are dense integers ``0..n-1``.  A configuration is a ``frozenset`` of
event ids.  The silent label is the string :data:`TAU`; any number of events
may carry it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (CausalConflictOverlap, CyclicCausality, DanglingEvent,
                     InvalidPES, SelfConflict, UnknownEvent)

TAU = "tau"

Configuration = frozenset
EMPTY = frozenset()


def is_tau(label: str) -> bool:
    return label == TAU


@dataclass(frozen=True)
class PrimeEventStructure:
    """A validated, immutable PES.

    ``order`` holds the strict causal order as pairs ``(d, e)`` meaning
    ``d < e``; it is transitively closed.  ``conflict`` holds both
    orientations of every conflicting pair and is hereditarily saturated.
    Build instances through :func:`validate_pes`.
    """

    labels: tuple
    order: frozenset
    conflict: frozenset
    names: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i + 1}" for i in range(len(self.labels))))

    def __len__(self):
        return len(self.labels)

    @property
    def events(self):
        return range(len(self.labels))

    @cached_property
    def _below(self):
        below = [{e} for e in self.events]
        for d, e in self.order:
            below[e].add(d)
        return tuple(frozenset(s) for s in below)

    @cached_property
    def _above(self):
        above = [{e} for e in self.events]
        for d, e in self.order:
            above[d].add(e)
        return tuple(frozenset(s) for s in above)

    @cached_property
    def _conflicting(self):
        conf = [set() for _ in self.events]
        for d, e in self.conflict:
            conf[d].add(e)
        return tuple(frozenset(s) for s in conf)

    @cached_property
    def visible_events(self) -> frozenset:
        return frozenset(e for e in self.events if not is_tau(self.labels[e]))

    @cached_property
    def tau_events(self) -> frozenset:
        return frozenset(e for e in self.events if is_tau(self.labels[e]))

    @cached_property
    def causality(self) -> frozenset:
        """Covering pairs of the causal order (its transitive reduction)."""
        return frozenset(
            (d, e) for d, e in self.order
            if not any((d, m) in self.order and (m, e) in self.order for m in self.events))

    @cached_property
    def generating_conflicts(self) -> frozenset:
        """Minimal conflicts ``d < e`` (ids) from which the rest is inherited."""
        gens = set()
        for d, e in self.conflict:
            if d >= e:
                continue
            inherited = any(
                (d2, e2) in self.conflict and (d2, e2) != (d, e)
                for d2 in self._below[d] for e2 in self._below[e])
            if not inherited:
                gens.add((d, e))
        return frozenset(gens)

    def label(self, e: int) -> str:
        self._check(e)
        return self.labels[e]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownEvent(f"no event named {name!r}") from None

    def leq(self, d: int, e: int) -> bool:
        return d == e or (d, e) in self.order

    def less(self, d: int, e: int) -> bool:
        return (d, e) in self.order

    def in_conflict(self, d: int, e: int) -> bool:
        return (d, e) in self.conflict

    def below(self, e: int) -> frozenset:
        return self._below[e]

    def conflicts_of(self, e: int) -> frozenset:
        return self._conflicting[e]

    def _check(self, e):
        if not isinstance(e, int) or not 0 <= e < len(self.labels):
            raise UnknownEvent(f"event {e!r} is not declared")

    def _check_all(self, xs):
        for e in xs:
            self._check(e)

    def __repr__(self):
        evs = ", ".join(f"{n}:{l}" for n, l in zip(self.names, self.labels))
        return f"PES({self.name or '_'}; {evs})"


def _resolve(ref, names, n):
    if isinstance(ref, str):
        if ref not in names:
            raise DanglingEvent(f"undeclared event {ref!r}")
        return names.index(ref)
    if not isinstance(ref, int) or not 0 <= ref < n:
        raise DanglingEvent(f"undeclared event {ref!r}")
    return ref


def validate_pes(labels: Sequence[str], causes: Iterable = (), conflicts: Iterable = (),
                 names: Sequence[str] | None = None, name: str = "") -> PrimeEventStructure:
    """Build a PES from generating pairs.

    ``causes`` is closed transitively and ``conflicts`` is saturated to the
    smallest symmetric, hereditary relation containing it.  Pairs may use
    integer ids or event names.
    """
    labels = tuple(labels)
    n = len(labels)
    for lab in labels:
        if not isinstance(lab, str) or not lab:
            raise InvalidPES(f"bad label {lab!r}")
    names = tuple(names) if names else tuple(f"e{i + 1}" for i in range(n))
    if len(names) != n or len(set(names)) != n:
        raise InvalidPES("event names must be unique, one per event")

    succ = [set() for _ in range(n)]
    for a, b in causes:
        a, b = _resolve(a, names, n), _resolve(b, names, n)
        if a != b:
            succ[a].add(b)
    order = set()
    for start in range(n):
        stack = list(succ[start])
        seen = set()
        while stack:
            e = stack.pop()
            if e in seen:
                continue
            seen.add(e)
            stack.extend(succ[e])
        if start in seen:
            raise CyclicCausality(f"causal cycle through {names[start]}")
        order.update((start, e) for e in seen)

    above = [{e} | {b for a, b in order if a == e} for e in range(n)]
    conflict = set()
    for a, b in conflicts:
        a, b = _resolve(a, names, n), _resolve(b, names, n)
        if (a, b) in order or (b, a) in order:
            raise CausalConflictOverlap(f"{names[a]} and {names[b]} are both ordered and in conflict")
        for d in above[a]:
            for e in above[b]:
                if d == e:
                    raise SelfConflict(f"conflict saturation makes {names[d]} conflict with itself")
                conflict.add((d, e))
                conflict.add((e, d))
    for d, e in conflict:
        if (d, e) in order:
            raise CausalConflictOverlap(f"{names[d]} both causes and conflicts with {names[e]}")
    return PrimeEventStructure(labels, frozenset(order), frozenset(conflict), names, name)


def causes(pes: PrimeEventStructure, e: int) -> frozenset:
    """The down-set of ``e``, including ``e``."""
    pes._check(e)
    return pes.below(e)


def is_consistent(pes: PrimeEventStructure, xs: Iterable[int]) -> bool:
    xs = list(xs)
    pes._check_all(xs)
    members = set(xs)
    return all(not (pes.conflicts_of(e) & members) for e in members)


def are_concurrent(pes: PrimeEventStructure, d: int, e: int) -> bool:
    pes._check(d)
    pes._check(e)
    return not pes.leq(d, e) and not pes.leq(e, d) and not pes.in_conflict(d, e)


def is_configuration(pes: PrimeEventStructure, xs: Iterable[int]) -> bool:
    xs = frozenset(xs)
    pes._check_all(xs)
    return is_consistent(pes, xs) and all(pes.below(e) <= xs for e in xs)


def enabled(pes: PrimeEventStructure, config: frozenset) -> list:
    """Events that extend ``config`` to a larger configuration, in id order."""
    out = []
    for e in pes.events:
        if e in config:
            continue
        if pes.below(e) - {e} <= config and not (pes.conflicts_of(e) & config):
            out.append(e)
    return out


def config_key(config):
    return (len(config), tuple(sorted(config)))


def enumerate_configurations(pes: PrimeEventStructure) -> list:
    """All configurations, sorted by size then ids; ``[EMPTY]`` for the empty PES."""
    return list(_configurations(pes))


def _configurations(pes):
    cache = pes.__dict__.get("_configs_cache")
    if cache is None:
        seen = {EMPTY}
        frontier = [EMPTY]
        while frontier:
            nxt = []
            for c in frontier:
                for e in enabled(pes, c):
                    d = c | {e}
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
            frontier = nxt
        cache = tuple(sorted(seen, key=config_key))
        pes.__dict__["_configs_cache"] = cache
    return cache


def visible_part(pes: PrimeEventStructure, xs: Iterable[int]) -> frozenset:
    xs = frozenset(xs)
    pes._check_all(xs)
    return xs & pes.visible_events


def residual(pes: PrimeEventStructure, config: frozenset) -> frozenset:
    """Visible events outside ``config`` that conflict with nothing in it."""
    return frozenset(e for e in pes.visible_events
                     if e not in config and not (pes.conflicts_of(e) & config))


def brute_force_configurations(pes: PrimeEventStructure) -> set:
    """Filter all 2^n subsets; used as a test oracle."""
    out = set()
    ev = list(pes.events)
    for k in range(len(ev) + 1):
        for sub in combinations(ev, k):
            if is_configuration(pes, sub):
                out.add(frozenset(sub))
    return out
