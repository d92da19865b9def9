"""Denotational model checking of formulas over a finite PES.

A denotation is a frozenset of pairs ``(C, env)`` where ``env`` is a sorted
tuple of ``(variable, event)`` items over exactly the free variables of the
formula.  Fixpoint formulas are evaluated by Kleene iteration from the empty
set, with propositions bound positionally to sets of ``(C, events)``.
"""
from __future__ import annotations

from itertools import product
from typing import NamedTuple

from .errors import FormulaError, PositivityViolation, UnboundProposition, UnboundVariable
from .formula import (And, Bind, Exec, Formula, Mu, Not, Nu, PropApply, Top, desugar, free_props,
                      free_vars)
from .pes import PrimeEventStructure, enumerate_configurations, is_tau, residual
from .transitions import weak_moves


class LegalPair(NamedTuple):
    config: frozenset
    env: tuple


def make_env(eta, variables) -> tuple:
    """Restrict a mapping to ``variables`` as a canonical sorted tuple."""
    missing = [v for v in variables if v not in eta]
    if missing:
        raise UnboundVariable(f"unbound variable(s): {', '.join(sorted(missing))}")
    return tuple(sorted((v, eta[v]) for v in variables))


class ModelChecker:
    """Evaluates formulas over one PES, memoising sub-denotations."""

    def __init__(self, pes: PrimeEventStructure, strict_independence: bool = False):
        self.pes = pes
        self.strict = strict_independence
        self.configs = enumerate_configurations(pes)
        self.visible = sorted(pes.visible_events)
        self._lp = {}
        self._residual = {c: sorted(residual(pes, c)) for c in self.configs}
        self._memo = {}
        self._exec = {}
        self.iteration_log = {}

    # legal pairs ---------------------------------------------------------------
    def legal_pairs(self, variables) -> frozenset:
        key = tuple(sorted(set(variables)))
        if key not in self._lp:
            pes = self.pes
            out = []
            for values in product(self.visible, repeat=len(key)):
                vals = set(values)
                if any(pes.conflicts_of(e) & vals for e in vals):
                    continue
                env = tuple(zip(key, values))
                for c in self.configs:
                    if not any(pes.conflicts_of(e) & c for e in vals):
                        out.append((c, env))
            self._lp[key] = frozenset(out)
        return self._lp[key]

    def is_legal(self, config, env) -> bool:
        events = set(config) | {e for _, e in env}
        return not any(self.pes.conflicts_of(e) & events for e in events)

    # helpers -------------------------------------------------------------------
    def _independent(self, y, e) -> bool:
        pes = self.pes
        if pes.leq(y, e) or pes.leq(e, y) or pes.in_conflict(y, e):
            return False
        if self.strict:
            below_y = pes.below(y)
            for t in pes.below(e):
                if is_tau(pes.labels[t]) and t not in below_y:
                    if pes.leq(y, t) or pes.leq(t, y) or pes.in_conflict(y, t):
                        return False
        return True

    def weak_event_targets(self, config, e):
        key = (config, e)
        if key not in self._exec:
            self._exec[key] = tuple(d for x, d in weak_moves(self.pes, config) if x == {e})
        return self._exec[key]

    # evaluation ----------------------------------------------------------------
    def denote(self, phi: Formula, props=None) -> frozenset:
        """Denotation of ``phi`` under proposition environment ``props``."""
        props = props or {}
        phi = desugar(phi)
        return self._denote(phi, props)

    def _denote(self, phi, props):
        fp = free_props(phi)
        key = (phi, tuple(sorted((x, props[x]) for x in fp if x in props)))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = frozenset(self._compute(phi, props))
        self._memo[key] = out
        return out

    def _compute(self, phi, props):
        fv = free_vars(phi)
        if isinstance(phi, Top):
            return self.legal_pairs(())
        if isinstance(phi, And):
            left = self._denote(phi.left, props)
            right = self._denote(phi.right, props)
            fl, fr = sorted(free_vars(phi.left)), sorted(free_vars(phi.right))
            out = []
            for c, env in self.legal_pairs(fv):
                eta = dict(env)
                if (c, tuple((v, eta[v]) for v in fl)) in left and \
                        (c, tuple((v, eta[v]) for v in fr)) in right:
                    out.append((c, env))
            return out
        if isinstance(phi, Not):
            return self.legal_pairs(fv) - self._denote(phi.body, props)
        if isinstance(phi, Bind):
            return self._bind(phi, props, fv)
        if isinstance(phi, Exec):
            body = self._denote(phi.body, props)
            fb = sorted(free_vars(phi.body))
            out = []
            for c, env in self.legal_pairs(fv):
                eta = dict(env)
                e = eta[phi.var]
                if e in c:
                    continue
                rest = tuple((v, eta[v]) for v in fb)
                if any((d, rest) in body for d in self.weak_event_targets(c, e)):
                    out.append((c, env))
            return out
        if isinstance(phi, PropApply):
            if phi.name not in props:
                raise UnboundProposition(f"proposition {phi.name} is not bound")
            table = props[phi.name]
            out = []
            for c, env in self.legal_pairs(fv):
                eta = dict(env)
                if (c, tuple(eta[v] for v in phi.vars)) in table:
                    out.append((c, env))
            return out
        if isinstance(phi, Mu):
            return self._mu(phi, props)
        raise TypeError(f"not a core formula: {phi!r}")

    def _bind(self, phi, props, fv):
        pes = self.pes
        body = self._denote(phi.body, props)
        fb = sorted(free_vars(phi.body))
        context = sorted(free_vars(phi.body) - {phi.var})
        out = []
        for c, env in self.legal_pairs(fv):
            eta = dict(env)
            ctx = {eta[v] for v in context}
            for e in self._residual[c]:
                if pes.labels[e] != phi.label or pes.conflicts_of(e) & ctx:
                    continue
                if not all(pes.less(eta[x], e) for x in phi.xs):
                    continue
                if not all(self._independent(eta[y], e) for y in phi.ys):
                    continue
                eta2 = dict(eta)
                eta2[phi.var] = e
                if (c, tuple((v, eta2[v]) for v in fb)) in body:
                    out.append((c, env))
                    break
        return out

    # fixpoints -----------------------------------------------------------------
    def _check_mu(self, phi: Mu):
        if len(set(phi.params)) != len(phi.params):
            raise FormulaError(f"repeated parameter in mu {phi.name}")
        if free_vars(phi.body) != set(phi.params):
            raise FormulaError(
                f"body of mu {phi.name} has free variables {sorted(free_vars(phi.body))}, "
                f"expected exactly {sorted(phi.params)}")
        from .fixpoint import positivity_violations
        bad = positivity_violations(phi)
        if bad:
            raise PositivityViolation("; ".join(bad))

    def iterate(self, phi, props=None, steps=None):
        """Kleene sequence ``S_0, S_1, ...`` of a fixpoint until stable (or ``steps`` long).

        A ``Mu`` node iterates upwards from the empty set.  A ``Nu`` node is
        iterated directly downwards from all legal pairs, independently of its
        desugaring.  Each ``S_k`` is a frozenset of ``(C, events)`` with events
        listed along the parameters.
        """
        props = dict(props or {})
        greatest = isinstance(phi, Nu)
        phi = Mu(phi.name, phi.params, desugar(phi.body)) if greatest else desugar(phi)
        self._check_mu(phi)
        if greatest:
            top = frozenset((c, tuple(dict(env)[p] for p in phi.params))
                            for c, env in self.legal_pairs(phi.params))
            seq = [top]
        else:
            seq = [frozenset()]
        while steps is None or len(seq) <= steps:
            props[phi.name] = seq[-1]
            d = self._denote(phi.body, props)
            nxt = frozenset((c, tuple(dict(env)[p] for p in phi.params)) for c, env in d)
            if not (nxt <= seq[-1] if greatest else seq[-1] <= nxt):
                raise AssertionError(f"non-monotone iteration for {phi.name}")
            if nxt == seq[-1]:
                break
            seq.append(nxt)
        return seq

    def _mu(self, phi, props):
        seq = self.iterate(phi, props)
        self.iteration_log[phi] = len(seq)
        order = sorted(range(len(phi.params)), key=lambda i: phi.params[i])
        return [(c, tuple((phi.params[i], vals[i]) for i in order)) for c, vals in seq[-1]]


def checker(pes: PrimeEventStructure, strict_independence: bool = False) -> ModelChecker:
    """Shared checker for ``pes`` (memo tables live as long as the PES)."""
    store = pes.__dict__.setdefault("_model_checkers", {})
    if strict_independence not in store:
        store[strict_independence] = ModelChecker(pes, strict_independence)
    return store[strict_independence]


def denotation(pes: PrimeEventStructure, phi: Formula, props=None,
               strict_independence: bool = False) -> frozenset:
    return checker(pes, strict_independence).denote(phi, props)


def legal_pairs(pes: PrimeEventStructure, phi: Formula) -> frozenset:
    return checker(pes).legal_pairs(free_vars(phi))


def _config(pes, config):
    c = frozenset(config)
    pes._check_all(c)
    return c


def is_legal_pair(pes: PrimeEventStructure, config, eta, phi: Formula) -> bool:
    env = make_env(eta or {}, free_vars(phi))
    return checker(pes).is_legal(_config(pes, config), env)


def satisfies(pes: PrimeEventStructure, config, eta, phi: Formula, props=None,
              strict_independence: bool = False) -> bool:
    """``E, C |=_eta phi``; ``eta`` must bind the free variables of ``phi``."""
    env = make_env(eta or {}, free_vars(phi))
    return (_config(pes, config), env) in denotation(pes, phi, props, strict_independence)


def holds(pes: PrimeEventStructure, phi: Formula) -> bool:
    """Satisfaction of a closed formula at the empty configuration."""
    return satisfies(pes, frozenset(), {}, phi)
