"""Strong and weak transitions between configurations."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import TauArgument
from .pes import (PrimeEventStructure, config_key, enabled, enumerate_configurations,
                  is_tau)
from .pomset import Pomset, _pomset


class TransitionKind(Enum):
    STRONG = "strong"
    WEAK = "weak"


def _memo(pes, name):
    store = pes.__dict__.setdefault("_transition_memo", {})
    return store.setdefault(name, {})


def strong_successors(pes: PrimeEventStructure, config: frozenset) -> list:
    """``(e, C ∪ {e})`` for every event enabled at ``config``, silent ones included."""
    return [(e, config | {e}) for e in enabled(pes, config)]


def tau_closure(pes: PrimeEventStructure, config: frozenset) -> set:
    """Configurations reachable from ``config`` by firing silent events only."""
    memo = _memo(pes, "tau_closure")
    if config in memo:
        return set(memo[config])
    seen = {config}
    stack = [config]
    while stack:
        c = stack.pop()
        for e in enabled(pes, c):
            if is_tau(pes.labels[e]):
                d = c | {e}
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
    memo[config] = frozenset(seen)
    return seen


def supersets(pes: PrimeEventStructure, config: frozenset) -> list:
    """Configurations strictly containing ``config``."""
    memo = _memo(pes, "supersets")
    if config not in memo:
        memo[config] = tuple(d for d in enumerate_configurations(pes) if config < d)
    return memo[config]


def weak_moves(pes: PrimeEventStructure, config: frozenset) -> list:
    """``(X, C')`` pairs of every weak pomset transition, ``X`` as a frozenset.

    ``C ⇒X C'`` iff ``C ⊆ C'`` and the visible events of ``C' \\ C`` are
    exactly the non-empty ``X``; silent events may sit anywhere in between.
    """
    memo = _memo(pes, "weak_moves")
    if config not in memo:
        vis = pes.visible_events
        memo[config] = tuple(((d - config) & vis, d) for d in supersets(pes, config)
                             if (d - config) & vis)
    return memo[config]


def strong_moves(pes: PrimeEventStructure, config: frozenset) -> list:
    """``(X, C ∪ X)`` for every non-empty ``X`` extending ``config``; silent events are ordinary."""
    return [(d - config, d) for d in supersets(pes, config)]


def weak_event_successors(pes: PrimeEventStructure, config: frozenset, e: int) -> set:
    pes._check(e)
    if is_tau(pes.labels[e]):
        raise TauArgument(f"{pes.names[e]} is silent")
    return {d for x, d in weak_moves(pes, config) if x == {e}}


def _pairwise_concurrent(pes, xs):
    xs = sorted(xs)
    return all(not pes.leq(a, b) and not pes.leq(b, a) and not pes.in_conflict(a, b)
               for i, a in enumerate(xs) for b in xs[i + 1:])


def weak_pomset_successors(pes: PrimeEventStructure, config: frozenset) -> set:
    return {(_pomset(pes, x), d) for x, d in weak_moves(pes, config)}


def weak_step_successors(pes: PrimeEventStructure, config: frozenset) -> set:
    return {(_pomset(pes, x), d) for x, d in weak_moves(pes, config)
            if _pairwise_concurrent(pes, x)}


def weak_pomset_successors_by_paths(pes: PrimeEventStructure, config: frozenset) -> set:
    """Same relation as :func:`weak_pomset_successors`, computed by exploring firing sequences.

    Kept as an independent cross-check of the definitional filter.
    """
    out = set()
    seen = set()
    stack = [(config, frozenset())]
    while stack:
        c, fired = stack.pop()
        if (c, fired) in seen:
            continue
        seen.add((c, fired))
        if fired:
            out.add((_pomset(pes, fired), c))
        for e, d in strong_successors(pes, c):
            stack.append((d, fired if is_tau(pes.labels[e]) else fired | {e}))
    return out


@dataclass(frozen=True)
class ConfigurationGraph:
    nodes: tuple
    strong_edges: tuple  # (C, e, C')
    weak_pomset_edges: tuple  # (C, X, C') with X a Pomset
    weak_step_edges: tuple

    def index(self, config):
        return self.nodes.index(config)


def build_configuration_graph(pes: PrimeEventStructure) -> ConfigurationGraph:
    nodes = tuple(enumerate_configurations(pes))
    strong, wpom, wstep = [], [], []
    for c in nodes:
        for e, d in strong_successors(pes, c):
            strong.append((c, e, d))
        for x, d in sorted(weak_moves(pes, c), key=lambda m: (config_key(m[0]), config_key(m[1]))):
            p: Pomset = _pomset(pes, x)
            wpom.append((c, p, d))
            if _pairwise_concurrent(pes, x):
                wstep.append((c, p, d))
    return ConfigurationGraph(nodes, tuple(strong), tuple(wpom), tuple(wstep))
