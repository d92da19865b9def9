"""Least and greatest fixpoints over propositions with arity."""
from __future__ import annotations

from .errors import ArityError
from .formula import (And, Bind, Box, Diamond, DualBind, Exec, Formula, Mu, Not, Nu, Or,
                      PropApply, Step, Top, desugar, free_vars, gfp_desugar)
from .semantics import checker


def _walk(phi, bound, negations, out, arity):
    """Collect positivity and arity problems below ``phi``.

    ``bound`` maps each proposition in scope to its binder's arity.
    """
    if isinstance(phi, Top):
        return
    if isinstance(phi, PropApply):
        if phi.name in bound:
            if len(phi.vars) != bound[phi.name]:
                arity.append(f"{phi.name} applied to {len(phi.vars)} variables, "
                             f"declared with {bound[phi.name]}")
            if negations.get(phi.name, 0) % 2:
                out.append(f"{phi.name} occurs under an odd number of negations")
        return
    if isinstance(phi, (Mu, Nu)):
        if free_vars(phi.body) != set(phi.params):
            arity.append(f"body of {phi.name} has free variables "
                         f"{sorted(free_vars(phi.body))}, expected {sorted(phi.params)}")
        inner = dict(bound)
        inner[phi.name] = len(phi.params)
        neg = dict(negations)
        neg[phi.name] = 0
        _walk(phi.body, inner, neg, out, arity)
        return
    if isinstance(phi, Not):
        _walk(phi.body, bound, {k: v + 1 for k, v in negations.items()}, out, arity)
        return
    if isinstance(phi, (And, Or)):
        _walk(phi.left, bound, negations, out, arity)
        _walk(phi.right, bound, negations, out, arity)
        return
    if isinstance(phi, (DualBind, Box)):
        # dual operators hide two negations around the body
        _walk(phi.body, bound, negations, out, arity)
        return
    if isinstance(phi, (Bind, Exec, Diamond, Step)):
        _walk(phi.body, bound, negations, out, arity)
        return
    raise TypeError(f"not a formula: {phi!r}")


def positivity_violations(phi: Formula) -> list:
    """Human-readable reasons why ``phi`` is not a well-formed fixpoint formula."""
    out, arity = [], []
    _walk(phi, {}, {}, out, arity)
    return out + arity


def positivity_check(phi: Formula) -> bool:
    return not positivity_violations(phi)


def check_arity(phi: Formula) -> None:
    """Raise :class:`ArityError` when a bound proposition is applied with the wrong arity."""
    arity = []
    _walk(phi, {}, {}, [], arity)
    bad = [m for m in arity if "applied to" in m]
    if bad:
        raise ArityError("; ".join(bad))


def mu_denotation(pes, phi: Formula, pi=None) -> frozenset:
    """Denotation of a fixpoint formula; ``pi`` maps free propositions to ``(C, events)`` sets."""
    return checker(pes).denote(phi, pi)


def iteration_sequence(pes, phi: Mu, pi=None) -> list:
    """``[S_0, S_1, ..., S_k]`` with ``S_k`` the least fixpoint (positional entries)."""
    return checker(pes).iterate(phi, pi)


def approximant(pes, phi: Mu, k: int, pi=None) -> frozenset:
    """``S_k``: ``k`` unfoldings of the fixpoint starting from the empty set."""
    if k < 0:
        raise ValueError("k must be non-negative")
    seq = checker(pes).iterate(phi, pi, steps=k)
    return seq[min(k, len(seq) - 1)]


def greatest_fixpoint(pes, phi: Nu, pi=None) -> frozenset:
    """``nu`` denotation by downward iteration from all legal pairs (no desugaring)."""
    seq = checker(pes).iterate(phi, pi)
    order = sorted(range(len(phi.params)), key=lambda i: phi.params[i])
    return frozenset((c, tuple((phi.params[i], vals[i]) for i in order)) for c, vals in seq[-1])


def stabilization_index(pes, phi: Mu, pi=None) -> int:
    """Number of body evaluations needed to reach the fixpoint (last one confirms it)."""
    return len(iteration_sequence(pes, phi, pi))


def as_positional(denot, params) -> frozenset:
    """Convert ``(C, env)`` pairs to ``(C, events)`` along ``params``."""
    return frozenset((c, tuple(dict(env)[p] for p in params)) for c, env in denot)


__all__ = ["positivity_check", "positivity_violations", "check_arity", "mu_denotation",
           "iteration_sequence", "approximant", "greatest_fixpoint", "stabilization_index", "gfp_desugar",
           "as_positional", "desugar"]
