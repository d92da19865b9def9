"""Concurrency against interleaving, with distinguishing formulas checked by the model checker.

Run from the repository root:  python demos/concurrency_certificates.py
"""
from wtc import check, compile_term, format_formula, holds

PAIRS = [
    ("a | b", "a.b + b.a"),
    ("a", "a + b"),
    ("(a + tau) | a", "a + (a | a)"),
]

for t1, t2 in PAIRS:
    p1, p2 = compile_term(t1), compile_term(t2)
    print(f"{t1}  vs  {t2}")
    for kind in ("weak-hm", "weak-step", "weak-pomset", "weak-hp", "weak-hhp"):
        v = check(kind, p1, p2, certificate=True)
        if v.equivalent:
            print(f"   {kind:12s} equivalent")
            continue
        phi = v.certificate
        sides = (holds(p1, phi), holds(p2, phi))
        print(f"   {kind:12s} distinguished by {format_formula(phi)}")
        print(f"   {'':12s} holds on the {v.satisfied_by} side only: {sides}")
    print()
