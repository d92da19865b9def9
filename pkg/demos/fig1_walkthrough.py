"""Walk through the silent-step example: a.tau.b against a.b.

Run from the repository root:  python demos/fig1_walkthrough.py
"""
from pathlib import Path

from wtc import (EquivalenceKind, check, enumerate_configurations, format_formula, load_pes,
                 mu_denotation, stabilization_index)
from wtc.transitions import weak_moves
from wtc.formula import T, Diamond, Mu, Or, PropApply

DATA = Path(__file__).parent / "data"
left = load_pes(DATA / "fig1_left.pes")
right = load_pes(DATA / "fig1_right.pes")


def names(pes, config):
    return "{" + ", ".join(pes.names[e] for e in sorted(config)) + "}"


print("Configurations of a.tau.b:")
for c in enumerate_configurations(left):
    print("  ", names(left, c))

print("\nWeak pomset moves from the empty configuration of a.tau.b:")
for visible, target in sorted(weak_moves(left, frozenset()), key=lambda m: sorted(m[1])):
    print(f"   fire {names(left, visible)} and land in {names(left, target)}")

print("\nVerdicts:")
for strength in ("weak", "strong"):
    for kind in ("interleaving", "step", "pomset", "hp", "hhp"):
        v = check(EquivalenceKind(kind, strength), left, right)
        print(f"   {strength + '-' + kind:20s} {'equivalent' if v.equivalent else 'distinguished'}")

v = check("strong-hm", left, right)
print("\nThe strong game fails here; first attacker move:", v.trace[0]["move"])

live = Mu("X", (), Or(Diamond((), (), "b", "z", T),
                      Diamond((), (), "a", "z", PropApply("X", ()))))
print("\nLiveness formula:", format_formula(live))
print("   holds at", [names(left, c) for c, _ in sorted(mu_denotation(left, live),
                                                       key=lambda p: len(p[0]))])
print("   Kleene iteration stabilises after", stabilization_index(left, live), "rounds")
