import pytest
from hypothesis import given, settings

from oracles import naive_bisimilar, pes_st
from wtc import (EMPTY, EquivalenceKind, PosetalTriple, check, check_flat_bisim,
                 check_hhp_bisim, check_hp_bisim, compile_term, is_bisimulation)
from wtc.equivalence import KINDS, all_verdicts
from wtc.sweep import SweepSpec, sweep_small_pes

SHORT = {"interleaving": "hm"}


def test_kind_parsing():
    k = EquivalenceKind.parse("weak-hm")
    assert k.kind == "interleaving" and k.weak and str(k) == "weak-hm"
    assert EquivalenceKind.parse("strong-hhp").posetal
    with pytest.raises(ValueError):
        EquivalenceKind.parse("weak")
    with pytest.raises(ValueError):
        EquivalenceKind("bogus")
    with pytest.raises(ValueError):
        EquivalenceKind("hp", "medium")


def test_fig1_weak_and_strong(fig1_left, fig1_right):
    for kind in KINDS:
        assert check(EquivalenceKind(kind, "weak"), fig1_left, fig1_right).equivalent
        assert not check(EquivalenceKind(kind, "strong"), fig1_left, fig1_right).equivalent
    assert check_flat_bisim("interleaving", "weak", fig1_left, fig1_right).equivalent
    assert not check_flat_bisim("interleaving", "strong", fig1_left, fig1_right).equivalent


def test_hp_witness_contains_first_step(fig1_left, fig1_right):
    v = check_hp_bisim("weak", fig1_left, fig1_right)
    assert PosetalTriple(frozenset({0}), ((0, 0),), frozenset({0})) in v.witness
    assert PosetalTriple(frozenset({0, 1}), ((0, 0),), frozenset({0})) in v.witness
    assert is_bisimulation("weak-hp", fig1_left, fig1_right, v.witness)


def test_parallel_vs_interleaving(par_ab, interleaved_ab):
    v = check("weak-step", par_ab, interleaved_ab)
    assert not v.equivalent and v.satisfied_by == "left"
    assert check("weak-hm", par_ab, interleaved_ab).equivalent
    assert not check_hp_bisim("weak", par_ab, interleaved_ab).equivalent
    assert not check_hhp_bisim("weak", par_ab, interleaved_ab).equivalent


def test_reflexive_on_examples(fig1_left, interleaved_ab):
    for p in (fig1_left, interleaved_ab):
        for kind in KINDS:
            for strength in ("weak", "strong"):
                assert check(EquivalenceKind(kind, strength), p, p).equivalent


def test_hp_but_not_hhp():
    # (a + tau) | a against a + (a | a): the extra tau branch breaks history closure
    left = compile_term("(a + tau) | a")
    right = compile_term("a + (a | a)")
    assert check("weak-hp", left, right).equivalent
    v = check("weak-hhp", left, right)
    assert not v.equivalent and v.trace


def test_traces_start_at_the_root(par_ab, interleaved_ab):
    v = check("weak-pomset", par_ab, interleaved_ab)
    first = v.trace[0]
    assert first["position"] == (EMPTY, EMPTY)
    assert first["side"] == "left"
    v = check("weak-hp", par_ab, interleaved_ab)
    assert v.trace[0]["position"] == (EMPTY, (), EMPTY)


def test_is_bisimulation_rejects_bad_relations(fig1_left, fig1_right):
    assert not is_bisimulation("weak-hm", fig1_left, fig1_right, set())
    v = check("weak-hm", fig1_left, fig1_right)
    assert is_bisimulation("weak-hm", fig1_left, fig1_right, v.witness)
    assert not is_bisimulation("weak-hm", fig1_left, fig1_right,
                               set(v.witness) - {(EMPTY, EMPTY)})
    # dropping every target of the a-move leaves the root without an answer
    stripped = {(c1, c2) for c1, c2 in v.witness if 0 not in c1}
    assert not is_bisimulation("weak-hm", fig1_left, fig1_right, stripped)


def test_all_verdicts(fig1_left, fig1_right):
    got = all_verdicts(fig1_left, fig1_right, strength="strong")
    assert set(got) == set(KINDS) and not any(v.equivalent for v in got.values())


def test_exhaustive_small_family_matches_oracle():
    structures = list(sweep_small_pes(SweepSpec(2, ("a", "b"), 1)))
    assert len(structures) == 22
    for i, a in enumerate(structures):
        for b in structures[i:]:
            for kind in KINDS:
                for strength in ("weak", "strong"):
                    got = check(EquivalenceKind(kind, strength), a, b, certificate=False)
                    assert got.equivalent == naive_bisimilar(
                        a, b, SHORT.get(kind, kind), strength == "strong"), (kind, strength, a, b)


@settings(max_examples=150, deadline=None)
@given(pes_st(max_events=3), pes_st(max_events=3))
def test_random_pairs_match_oracle(a, b):
    for kind in KINDS:
        for strength in ("weak", "strong"):
            got = check(EquivalenceKind(kind, strength), a, b, certificate=False)
            assert got.equivalent == naive_bisimilar(a, b, SHORT.get(kind, kind),
                                                     strength == "strong")


@settings(max_examples=150, deadline=None)
@given(pes_st(max_events=3), pes_st(max_events=3))
def test_symmetry_and_witnesses(a, b):
    for kind in KINDS:
        ek = EquivalenceKind(kind, "weak")
        v = check(ek, a, b, certificate=False)
        assert v.equivalent == check(ek, b, a, certificate=False).equivalent
        if v.equivalent:
            assert is_bisimulation(ek, a, b, v.witness)
        else:
            assert v.trace
