from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wtc import (EMPTY, PosetalTriple, extend_iso, induced_pomset, is_posetal_triple,
                 pointwise_prefixes, pomset_isomorphic, validate_pes)
from wtc.errors import DomainClash, InconsistentSet, RangeClash, TauArgument, TauInCarrier
from wtc.pomset import Pomset, all_isomorphisms, history_prefixes


def test_induced_chain(fig1_left):
    p = induced_pomset(fig1_left, {0, 2})
    assert p.labels == ("a", "b")
    assert p.order == {(0, 2)}


def test_induced_empty_and_antichain(fig1_left, par_ab):
    assert len(induced_pomset(fig1_left, set())) == 0
    assert induced_pomset(par_ab, {0, 1}).is_antichain


def test_induced_rejects(fig1_left, choice_ab):
    with pytest.raises(TauInCarrier):
        induced_pomset(fig1_left, {0, 1})
    with pytest.raises(InconsistentSet):
        induced_pomset(choice_ab, {0, 1})


def test_isomorphism_examples(fig1_left, fig1_right, par_ab):
    chain1 = induced_pomset(fig1_left, {0, 2})
    chain2 = induced_pomset(fig1_right, {0, 1})
    assert pomset_isomorphic(chain1, chain2) == {0: 0, 2: 1}
    assert pomset_isomorphic(chain2, induced_pomset(par_ab, {0, 1})) is None
    empty = Pomset((), frozenset(), ())
    assert pomset_isomorphic(empty, empty) == {}


def _brute_isos(p, q):
    out = []
    if len(p) != len(q):
        return out
    for perm in permutations(q.carrier):
        f = dict(zip(p.carrier, perm))
        if all(p.label_of(e) == q.label_of(f[e]) for e in p.carrier) and all(
                ((d, e) in p.order) == ((f[d], f[e]) in q.order)
                for d in p.carrier for e in p.carrier):
            out.append(f)
    return out


@st.composite
def pomsets(draw, max_size=4):
    n = draw(st.integers(0, max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rel = {p for p in pairs if draw(st.booleans())}
    changed = True
    while changed:
        extra = {(i, k) for i, j in rel for j2, k in rel if j == j2} - rel
        changed = bool(extra)
        rel |= extra
    labels = tuple(draw(st.sampled_from("ab")) for _ in range(n))
    return Pomset(tuple(range(n)), frozenset(rel), labels)


@settings(max_examples=300, deadline=None)
@given(pomsets(), pomsets(), st.permutations(range(4)))
def test_isomorphisms_match_brute_force(p, q, perm):
    assert [f for f in all_isomorphisms(p, q)] == sorted(_brute_isos(p, q),
                                                         key=lambda f: sorted(f.items()))
    # a relabelled copy of p is always isomorphic to p
    ren = {e: perm[e] + 10 for e in p.carrier}
    order = sorted(ren[e] for e in p.carrier)
    copy = Pomset(tuple(order), frozenset((ren[a], ren[b]) for a, b in p.order),
                  tuple(p.labels[p.carrier.index(next(k for k, v in ren.items() if v == e))]
                        for e in order))
    assert pomset_isomorphic(p, copy) is not None


def test_extend_iso(fig1_left, fig1_right):
    assert extend_iso((), 0, 5) == ((0, 5),)
    assert extend_iso({0: 5}, 2, 7) == ((0, 5), (2, 7))
    with pytest.raises(DomainClash):
        extend_iso({0: 5}, 0, 7)
    with pytest.raises(RangeClash):
        extend_iso({0: 5}, 2, 5)
    with pytest.raises(TauArgument):
        extend_iso((), 1, 0, fig1_left, fig1_right)


def test_posetal_triples(fig1_left, fig1_right, par_ab):
    assert is_posetal_triple(fig1_left, fig1_right, EMPTY, (), EMPTY)
    assert is_posetal_triple(fig1_left, fig1_right, frozenset({0, 1}), ((0, 0),), frozenset({0}))
    mixed = validate_pes(["b"])
    assert not is_posetal_triple(fig1_left, mixed, frozenset({0}), ((0, 0),), frozenset({0}))
    # strong triples must match silent events too
    assert not is_posetal_triple(fig1_left, fig1_right, frozenset({0, 1}), ((0, 0),),
                                 frozenset({0}), strong=True)


def test_pointwise_prefixes():
    single = validate_pes(["a"])
    t = PosetalTriple(frozenset({0}), ((0, 0),), frozenset({0}))
    assert pointwise_prefixes(single, single, t) == {t, PosetalTriple(EMPTY, (), EMPTY)}
    empty = PosetalTriple(EMPTY, (), EMPTY)
    assert pointwise_prefixes(single, single, empty) == {empty}
    chain = validate_pes(["a", "b"], [(0, 1)])
    full = PosetalTriple(frozenset({0, 1}), ((0, 0), (1, 1)), frozenset({0, 1}))
    assert len(pointwise_prefixes(chain, chain, full)) == 3


def test_history_prefixes_keep_causes_only(fig1_left, fig1_right):
    t = PosetalTriple(frozenset({0, 1, 2}), ((0, 0), (2, 1)), frozenset({0, 1}))
    got = history_prefixes(fig1_left, fig1_right, t)
    assert got == {PosetalTriple(EMPTY, (), EMPTY),
                   PosetalTriple(frozenset({0}), ((0, 0),), frozenset({0})), t}
    # the pointwise reading also allows the intermediate {e1, tau}
    assert PosetalTriple(frozenset({0, 1}), ((0, 0),), frozenset({0})) in \
        pointwise_prefixes(fig1_left, fig1_right, t)
