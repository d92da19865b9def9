"""Property suites run over exhaustive sweeps of small event structures.

Each suite returns a dict with the number of structures, the number of
checked cases and a list of human-readable failures.
"""
from __future__ import annotations

from .enumeration import bounded_logical_equiv, fixpoint_bodies
from .equivalence import HHP, HP, INTERLEAVING, KINDS, POMSET, STEP, EquivalenceKind, check
from .formula import HM, FULL, Diamond, Mu, Nu, Or, PropApply, T, fragment_of
from .pes import enumerate_configurations
from .quotient import build_quotient_pes, check_projection, projection_properties
from .semantics import ModelChecker, holds
from .sweep import sweep_small_pes
from .transitions import weak_pomset_successors, weak_pomset_successors_by_paths

FRAGMENT_OF_KIND = {INTERLEAVING: HM, STEP: "step", POMSET: "pomset", HP: "hp", HHP: FULL}


def _pairs(structures):
    for i, a in enumerate(structures):
        for b in structures[i:]:
            yield a, b


def suite_strong_implies_weak(structures):
    cases, failures = 0, []
    for a, b in _pairs(structures):
        for k in KINDS:
            cases += 1
            strong = check(EquivalenceKind(k, "strong"), a, b, certificate=False).equivalent
            if strong and not check(EquivalenceKind(k, "weak"), a, b, certificate=False).equivalent:
                failures.append(f"{k}: {a.name} vs {b.name} strongly but not weakly equivalent")
    return cases, failures


def suite_hierarchy(structures):
    order = [HHP, HP, POMSET, STEP, INTERLEAVING]
    cases, failures = 0, []
    for a, b in _pairs(structures):
        for strength in ("weak", "strong"):
            cases += 1
            v = [check(EquivalenceKind(k, strength), a, b, certificate=False).equivalent
                 for k in order]
            for i in range(len(order) - 1):
                if v[i] and not v[i + 1]:
                    failures.append(f"{strength}: {a.name} vs {b.name} {order[i]} "
                                    f"but not {order[i + 1]}")
    return cases, failures


def verify_certificate(verdict, a, b):
    """None when the certificate is sound, else a description of the problem."""
    phi = verdict.certificate
    if phi is None:
        return "no certificate"
    want = FRAGMENT_OF_KIND[verdict.kind.kind]
    if want not in fragment_of(phi):
        return f"certificate outside the {want} fragment"
    on_a, on_b = holds(a, phi), holds(b, phi)
    expected = (True, False) if verdict.satisfied_by == "left" else (False, True)
    if (on_a, on_b) != expected:
        return f"certificate evaluates to {on_a}/{on_b}, claimed {verdict.satisfied_by}"
    return None


def suite_certificates(structures):
    cases, failures = 0, []
    for a, b in _pairs(structures):
        for k in KINDS:
            v = check(EquivalenceKind(k, "weak"), a, b, certificate=True)
            if v.equivalent:
                continue
            cases += 1
            problem = verify_certificate(v, a, b)
            if problem:
                failures.append(f"{k}: {a.name} vs {b.name}: {problem}")
    return cases, failures


def suite_successor_oracle(structures):
    cases, failures = 0, []
    for p in structures:
        for c in enumerate_configurations(p):
            cases += 1
            if weak_pomset_successors(p, c) != weak_pomset_successors_by_paths(p, c):
                failures.append(f"{p.name} at {sorted(c)}")
    return cases, failures


def suite_logic_coincidence(structures, depth=3):
    kinds = ((INTERLEAVING, HM), (STEP, "step"), (POMSET, "pomset"))
    cases, failures = 0, []
    for a, b in _pairs(structures):
        for kind, fragment in kinds:
            cases += 1
            bisim = check(EquivalenceKind(kind, "weak"), a, b, certificate=False).equivalent
            found = bounded_logical_equiv(a, b, fragment, depth)
            if bisim and found.separator is not None:
                failures.append(f"{fragment}: {a.name} vs {b.name} equivalent but separated")
            if not bisim and found.separator is None:
                failures.append(f"{fragment}: {a.name} vs {b.name} inequivalent, "
                                f"no separator up to depth {depth}")
    return cases, failures


def suite_quotient(structures):
    cases, failures = 0, []
    for a, b in _pairs(structures):
        v = check(EquivalenceKind(HHP, "weak"), a, b, certificate=False)
        if not v.equivalent:
            continue
        cases += 1
        q = build_quotient_pes(a, b, v.witness)
        for side, target in ((0, a), (1, b)):
            if not check_projection(q, side, target):
                failures.append(f"{a.name} vs {b.name}: projection {side + 1} "
                                f"is not a weak hhp-bisimulation")
            props = projection_properties(q, side, target)
            bad = [k for k, ok in props.items() if not ok]
            if bad:
                failures.append(f"{a.name} vs {b.name}: projection {side + 1} breaks {bad}")
    return cases, failures


def _liveness(labels):
    """``mu X(). (<<|b z|>>T | <<|a z|>>X())`` style bodies over the alphabet."""
    x = PropApply("X", ())
    out = []
    for goal in labels:
        for step in labels:
            body = Or(Diamond((), (), goal, "z", T), Diamond((), (), step, "z", x))
            out.append(Mu("X", (), body))
    return out


def _downward(mc, nu):
    seq = mc.iterate(nu)
    return frozenset((c, ()) for c, _ in seq[-1])


def suite_fixpoints(structures):
    cases, failures = 0, []
    labels = sorted({l for p in structures for e, l in enumerate(p.labels)
                     if e in p.visible_events}) or ["a"]
    formulas = _liveness(labels)
    for p in structures:
        mc = ModelChecker(p)
        bound = len(mc.legal_pairs(())) + 1
        for phi in formulas:
            cases += 1
            seq = mc.iterate(phi)
            if len(seq) > bound:
                failures.append(f"{p.name}: {phi} took {len(seq)} iterations (> {bound})")
            nu = Nu("X", (), phi.body)
            if mc.denote(nu) != _downward(mc, nu):
                failures.append(f"{p.name}: gfp/lfp duality fails for {phi.body}")
    return cases, failures


def mu_profile(pes, formulas) -> tuple:
    """Truth values of closed formulas at the empty configuration."""
    mc = ModelChecker(pes)
    return tuple((frozenset(), ()) in mc.denote(phi) for phi in formulas)


def suite_mu_invariance(structures, size=3):
    labels = sorted({l for p in structures for e, l in enumerate(p.labels)
                     if e in p.visible_events}) or ["a"]
    formulas = [fix(*args) for body in fixpoint_bodies(labels, size)
                for fix, args in ((Mu, ("X", (), body)), (Nu, ("X", (), body)))]
    profiles = {p: mu_profile(p, formulas) for p in structures}
    cases, failures = 0, []
    for a, b in _pairs(structures):
        if not check(EquivalenceKind(HHP, "weak"), a, b, certificate=False).equivalent:
            continue
        cases += 1
        if profiles[a] != profiles[b]:
            i = next(i for i, (x, y) in enumerate(zip(profiles[a], profiles[b])) if x != y)
            failures.append(f"{a.name} vs {b.name}: separated by {formulas[i]}")
    return cases, failures


SUITES = {
    "strong-implies-weak": suite_strong_implies_weak,
    "hierarchy": suite_hierarchy,
    "certificates": suite_certificates,
    "successor-oracle": suite_successor_oracle,
    "logic-coincidence": suite_logic_coincidence,
    "quotient": suite_quotient,
    "fixpoints": suite_fixpoints,
    "mu-invariance": suite_mu_invariance,
}


def run_suite(name, spec) -> dict:
    structures = list(sweep_small_pes(spec))
    cases, failures = SUITES[name](structures)
    return {"suite": name, "structures": len(structures), "cases": cases, "failures": failures}
