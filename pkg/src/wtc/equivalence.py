"""Strong and weak bisimulation checkers by greatest-fixpoint refinement.

Flat kinds (interleaving, step, pomset) relate configuration pairs; hp and
hhp relate posetal triples ``(C1, f, C2)``.  Refinement starts from every
candidate and deletes, round by round, the elements whose transfer property
fails in the current relation.  The round in which an element disappears is
its rank; ranks drive game traces and distinguishing formulas.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product

from .pes import EMPTY, PrimeEventStructure, enumerate_configurations
from .pomset import (PosetalTriple, _pomset, all_isomorphisms, as_pairs, history_prefixes,
                     pointwise_prefixes)
from .transitions import _pairwise_concurrent, strong_moves, weak_moves

INTERLEAVING, STEP, POMSET, HP, HHP = "interleaving", "step", "pomset", "hp", "hhp"
KINDS = (INTERLEAVING, STEP, POMSET, HP, HHP)
STRONG, WEAK = "strong", "weak"
_ALIASES = {"hm": INTERLEAVING, "interleaving": INTERLEAVING, "step": STEP, "pomset": POMSET,
            "hp": HP, "hhp": HHP}


@dataclass(frozen=True)
class EquivalenceKind:
    kind: str
    strength: str = WEAK

    def __post_init__(self):
        kind = _ALIASES.get(self.kind)
        if kind is None:
            raise ValueError(f"unknown equivalence kind {self.kind!r}")
        if self.strength not in (STRONG, WEAK):
            raise ValueError(f"strength must be 'strong' or 'weak', not {self.strength!r}")
        object.__setattr__(self, "kind", kind)

    @classmethod
    def parse(cls, text: str) -> "EquivalenceKind":
        """``weak-hp``, ``strong-hm`` and the like."""
        strength, _, kind = text.partition("-")
        if not kind:
            raise ValueError(f"expected <strength>-<kind>, got {text!r}")
        return cls(kind, strength)

    @property
    def weak(self) -> bool:
        return self.strength == WEAK

    @property
    def posetal(self) -> bool:
        return self.kind in (HP, HHP)

    def __str__(self):
        short = "hm" if self.kind == INTERLEAVING else self.kind
        return f"{self.strength}-{short}"


@dataclass
class Verdict:
    kind: EquivalenceKind
    equivalent: bool
    witness: frozenset = None
    certificate: object = None
    satisfied_by: str = None  # "left" or "right"
    trace: list = field(default_factory=list)
    ranks: dict = field(default_factory=dict, repr=False)
    reasons: dict = field(default_factory=dict, repr=False)
    elapsed: float = 0.0

    def __bool__(self):
        return self.equivalent


# -- pomset canonical keys ---------------------------------------------------------

@lru_cache(maxsize=None)
def _canonical(labels: tuple, order: frozenset) -> tuple:
    n = len(labels)
    indeg = [sum(1 for a, b in order if b == i) for i in range(n)]
    outdeg = [sum(1 for a, b in order if a == i) for i in range(n)]
    sig = [(labels[i], indeg[i], outdeg[i]) for i in range(n)]
    groups = {}
    for i in sorted(range(n), key=lambda i: sig[i]):
        groups.setdefault(sig[i], []).append(i)
    best = None
    for choice in product(*(permutations(g) for g in groups.values())):
        seq = [i for grp in choice for i in grp]
        pos = {e: k for k, e in enumerate(seq)}
        key = (tuple(sig[i] for i in seq), tuple(sorted((pos[a], pos[b]) for a, b in order)))
        if best is None or key < best:
            best = key
    return best


def pomset_key(p) -> tuple:
    """Isomorphism-invariant key: equal keys iff the pomsets are isomorphic."""
    idx = {e: k for k, e in enumerate(p.carrier)}
    return _canonical(tuple(p.labels), frozenset((idx[a], idx[b]) for a, b in p.order))


# -- move tables ---------------------------------------------------------------------

def _flat_moves(pes, config, kind: EquivalenceKind):
    """``(key, X, C')`` for every transition of the given family from ``config``."""
    memo = pes.__dict__.setdefault("_flat_moves", {})
    mkey = (config, kind.kind, kind.strength)
    if mkey in memo:
        return memo[mkey]
    raw = weak_moves(pes, config) if kind.weak else strong_moves(pes, config)
    out = []
    for x, d in raw:
        if kind.kind == INTERLEAVING and len(x) != 1:
            continue
        if kind.kind == STEP and not _pairwise_concurrent(pes, x):
            continue
        out.append((pomset_key(_pomset(pes, x)), x, d))
    out.sort(key=lambda m: (m[0], sorted(m[1]), sorted(m[2])))
    memo[mkey] = tuple(out)
    return memo[mkey]


def _single_moves(pes, config, weak):
    """``(e, C')`` single-event moves: visible-weak, or strong with silent events."""
    memo = pes.__dict__.setdefault("_single_moves", {})
    if (config, weak) not in memo:
        raw = weak_moves(pes, config) if weak else strong_moves(pes, config)
        memo[(config, weak)] = tuple(sorted(((next(iter(x)), d) for x, d in raw if len(x) == 1),
                                            key=lambda m: (m[0], sorted(m[1]))))
    return memo[(config, weak)]


# -- refinement engine -----------------------------------------------------------------

def _refine(elements, violation):
    """Delete violating elements round by round; return (R, ranks, reasons)."""
    rel = set(elements)
    ranks, reasons = {}, {}
    rnd = 0
    while True:
        rnd += 1
        bad = {}
        for t in rel:
            why = violation(t, rel)
            if why is not None:
                bad[t] = why
        if not bad:
            return frozenset(rel), ranks, reasons
        for t, why in bad.items():
            rel.discard(t)
            ranks[t] = rnd
            reasons[t] = why


def _flat_violation(pes1, pes2, kind):
    def violation(pair, rel):
        c1, c2 = pair
        m1 = _flat_moves(pes1, c1, kind)
        m2 = _flat_moves(pes2, c2, kind)
        for k, x, d1 in m1:
            if not any(k2 == k and (d1, d2) in rel for k2, _, d2 in m2):
                return ("left", (k, x, d1))
        for k, x, d2 in m2:
            if not any(k1 == k and (d1, d2) in rel for k1, _, d1 in m1):
                return ("right", (k, x, d2))
        return None
    return violation


def check_flat_bisim(kind, strength, pes1: PrimeEventStructure, pes2: PrimeEventStructure,
                     certificate: bool = True) -> Verdict:
    """Interleaving, step or pomset bisimilarity (strong or weak)."""
    ek = EquivalenceKind(kind, strength)
    if ek.posetal:
        raise ValueError("use check_hp_bisim / check_hhp_bisim for posetal kinds")
    start = time.perf_counter()
    pairs = list(product(enumerate_configurations(pes1), enumerate_configurations(pes2)))
    rel, ranks, reasons = _refine(pairs, _flat_violation(pes1, pes2, ek))
    verdict = Verdict(ek, (EMPTY, EMPTY) in rel, witness=rel, ranks=ranks, reasons=reasons)
    return _finish(verdict, pes1, pes2, certificate, start)


# -- posetal relations ---------------------------------------------------------------------

def _observed(pes, config, weak):
    return config & pes.visible_events if weak else config


def posetal_product(pes1, pes2, weak: bool = True) -> list:
    """Every triple ``(C1, f, C2)`` with ``f`` an isomorphism of the observed parts."""
    memo = pes1.__dict__.setdefault("_posetal_product", {})
    key = (pes2, weak)
    if key in memo:
        return memo[key]
    by_key = {}
    for c2 in enumerate_configurations(pes2):
        obs = _observed(pes2, c2, weak)
        by_key.setdefault(pomset_key(_pomset(pes2, obs)), []).append((c2, _pomset(pes2, obs)))
    out = []
    for c1 in enumerate_configurations(pes1):
        p1 = _pomset(pes1, _observed(pes1, c1, weak))
        for c2, p2 in by_key.get(pomset_key(p1), ()):
            for f in all_isomorphisms(p1, p2):
                out.append(PosetalTriple(c1, as_pairs(f), c2))
    memo[key] = out
    return out


def _hp_violation(pes1, pes2, weak, prefixes=None):
    def violation(t, rel):
        c1, f, c2 = t
        m2 = _single_moves(pes2, c2, weak)
        m1 = _single_moves(pes1, c1, weak)
        for e1, d1 in m1:
            lab = pes1.labels[e1]
            if not any(pes2.labels[e2] == lab and
                       (d1, tuple(sorted(f + ((e1, e2),))), d2) in rel for e2, d2 in m2):
                return ("left", (e1, d1))
        for e2, d2 in m2:
            lab = pes2.labels[e2]
            if not any(pes1.labels[e1] == lab and
                       (d1, tuple(sorted(f + ((e1, e2),))), d2) in rel for e1, d1 in m1):
                return ("right", (e2, d2))
        if prefixes is not None:
            for p in prefixes(t):
                if p not in rel:
                    return ("prefix", p)
        return None
    return violation


def check_hp_bisim(strength, pes1, pes2, certificate: bool = True) -> Verdict:
    ek = EquivalenceKind(HP, strength)
    start = time.perf_counter()
    triples = posetal_product(pes1, pes2, ek.weak)
    rel, ranks, reasons = _refine(triples, _hp_violation(pes1, pes2, ek.weak))
    verdict = Verdict(ek, (EMPTY, (), EMPTY) in rel, witness=rel, ranks=ranks, reasons=reasons)
    return _finish(verdict, pes1, pes2, certificate, start)


def hhp_prefix_function(pes1, pes2, weak=True, prefixes="history"):
    """Prefix generator used for downward closure.

    ``"history"`` keeps causally closed parts of the history (default for the
    weak relation); ``"pointwise"`` takes every pair of sub-configurations
    whose observed parts correspond under ``f``.  The strong relation always
    uses pointwise prefixes of the full configurations.
    """
    if not weak or prefixes == "pointwise":
        c1s = enumerate_configurations(pes1)
        c2s = enumerate_configurations(pes2)
        return lambda t: pointwise_prefixes(pes1, pes2, t, c1s, c2s, strong=not weak)
    if prefixes != "history":
        raise ValueError(f"unknown prefix mode {prefixes!r}")
    return lambda t: history_prefixes(pes1, pes2, t)


def check_hhp_bisim(strength, pes1, pes2, certificate: bool = True,
                    prefixes: str = "history") -> Verdict:
    ek = EquivalenceKind(HHP, strength)
    start = time.perf_counter()
    triples = posetal_product(pes1, pes2, ek.weak)
    pre = hhp_prefix_function(pes1, pes2, ek.weak, prefixes)
    rel, ranks, reasons = _refine(triples, _hp_violation(pes1, pes2, ek.weak, pre))
    verdict = Verdict(ek, (EMPTY, (), EMPTY) in rel, witness=rel, ranks=ranks, reasons=reasons)
    return _finish(verdict, pes1, pes2, certificate, start)


def check(kind, pes1, pes2, certificate: bool = True, **options) -> Verdict:
    """Dispatch on an :class:`EquivalenceKind` or a string such as ``"weak-hp"``."""
    ek = EquivalenceKind.parse(kind) if isinstance(kind, str) else kind
    if ek.kind == HP:
        return check_hp_bisim(ek.strength, pes1, pes2, certificate)
    if ek.kind == HHP:
        return check_hhp_bisim(ek.strength, pes1, pes2, certificate, **options)
    return check_flat_bisim(ek.kind, ek.strength, pes1, pes2, certificate)


def _finish(verdict, pes1, pes2, certificate, start):
    if not verdict.equivalent:
        verdict.trace = game_trace(verdict, pes1, pes2)
        if certificate:
            from .certificates import attach_certificate
            attach_certificate(verdict, pes1, pes2)
    verdict.elapsed = time.perf_counter() - start
    return verdict


# -- refutation traces ----------------------------------------------------------------------

def _initial(verdict):
    return (EMPTY, (), EMPTY) if verdict.kind.posetal else (EMPTY, EMPTY)


def _responses(verdict, pes1, pes2, pos, side, move):
    """Defender answers to an attack, each paired with the resulting position."""
    weak = verdict.kind.weak
    if not verdict.kind.posetal:
        c1, c2 = pos
        k = move[0]
        if side == "left":
            return [((x, d2), (move[2], d2)) for k2, x, d2 in _flat_moves(pes2, c2, verdict.kind)
                    if k2 == k]
        return [((x, d1), (d1, move[2])) for k1, x, d1 in _flat_moves(pes1, c1, verdict.kind)
                if k1 == k]
    c1, f, c2 = pos
    out = []
    if side == "left":
        e1, d1 = move
        for e2, d2 in _single_moves(pes2, c2, weak):
            t = (d1, tuple(sorted(f + ((e1, e2),))), d2)
            if pes2.labels[e2] == pes1.labels[e1] and t in verdict.ranks:
                out.append(((e2, d2), PosetalTriple(*t)))
    else:
        e2, d2 = move
        for e1, d1 in _single_moves(pes1, c1, weak):
            t = (d1, tuple(sorted(f + ((e1, e2),))), d2)
            if pes1.labels[e1] == pes2.labels[e2] and t in verdict.ranks:
                out.append(((e1, d1), PosetalTriple(*t)))
    return out


def game_trace(verdict, pes1, pes2) -> list:
    """Attacker strategy from the initial position, as a list of steps.

    Each step is a dict with the position, the attacker's side and move, and
    the defender's longest-surviving answer (None when no answer exists).
    """
    pos = _initial(verdict)
    steps = []
    while pos in verdict.reasons:
        side, move = verdict.reasons[pos]
        if side == "prefix":
            steps.append({"position": pos, "side": "prefix", "move": move, "answer": None})
            pos = move
            continue
        answers = _responses(verdict, pes1, pes2, pos, side, move)
        best = max(answers, key=lambda a: verdict.ranks.get(a[1], 0), default=None)
        steps.append({"position": pos, "side": side, "move": move,
                      "answer": best[0] if best else None})
        if best is None:
            break
        pos = best[1]
    return steps


# -- independent witness re-check -----------------------------------------------------------------

def _path_moves(pes, config, kind: EquivalenceKind):
    """Move table rebuilt from firing sequences (independent of the refinement tables)."""
    from .transitions import strong_successors, weak_pomset_successors_by_paths
    if kind.weak:
        moves = [(frozenset(p.carrier), d) for p, d in weak_pomset_successors_by_paths(pes, config)]
    else:
        moves = set()
        stack = [config]
        seen = set()
        while stack:
            c = stack.pop()
            for _, d in strong_successors(pes, c):
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
                    moves.add((d - config, d))
        moves = list(moves)
    if kind.kind == INTERLEAVING or kind.posetal:
        moves = [(x, d) for x, d in moves if len(x) == 1]
    elif kind.kind == STEP:
        moves = [(x, d) for x, d in moves if _pairwise_concurrent(pes, x)]
    return moves


def is_bisimulation(kind, pes1, pes2, relation, prefixes="history") -> bool:
    """Re-check that ``relation`` contains the initial element and satisfies transfer."""
    ek = EquivalenceKind.parse(kind) if isinstance(kind, str) else kind
    rel = set(relation)
    if not ek.posetal:
        if (EMPTY, EMPTY) not in rel:
            return False
        from .pomset import pomset_isomorphic
        for c1, c2 in rel:
            m1, m2 = _path_moves(pes1, c1, ek), _path_moves(pes2, c2, ek)
            for a, b, flip in ((m1, m2, False), (m2, m1, True)):
                pa = pes2 if flip else pes1
                pb = pes1 if flip else pes2
                for x, d in a:
                    px = _pomset(pa, x)
                    if not any(pomset_isomorphic(px, _pomset(pb, y)) is not None and
                               ((e, d) if flip else (d, e)) in rel for y, e in b):
                        return False
        return True
    from .pomset import is_posetal_triple
    if (EMPTY, (), EMPTY) not in rel:
        return False
    pre = hhp_prefix_function(pes1, pes2, ek.weak, prefixes) if ek.kind == HHP else None
    for t in rel:
        c1, f, c2 = t
        if not is_posetal_triple(pes1, pes2, c1, f, c2, strong=not ek.weak):
            return False
        m1, m2 = _path_moves(pes1, c1, ek), _path_moves(pes2, c2, ek)
        for x, d1 in m1:
            (e1,) = x
            if not any(pes2.labels[e2] == pes1.labels[e1] and
                       (d1, tuple(sorted(f + ((e1, e2),))), d2) in rel for (e2,), d2 in
                       ((tuple(y), d2) for y, d2 in m2)):
                return False
        for y, d2 in m2:
            (e2,) = y
            if not any(pes1.labels[e1] == pes2.labels[e2] and
                       (d1, tuple(sorted(f + ((e1, e2),))), d2) in rel for (e1,), d1 in
                       ((tuple(x), d1) for x, d1 in m1)):
                return False
        if pre is not None and not all(p in rel for p in pre(t)):
            return False
    return True


def all_verdicts(pes1, pes2, strength=WEAK, certificate=False) -> dict:
    return {k: check(EquivalenceKind(k, strength), pes1, pes2, certificate) for k in KINDS}

