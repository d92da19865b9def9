import pytest
from hypothesis import given, settings

from oracles import fire_paths, pes_st
from wtc import (EMPTY, build_configuration_graph, enumerate_configurations, induced_pomset,
                 tau_closure, validate_pes, weak_event_successors, weak_pomset_successors,
                 weak_pomset_successors_by_paths, weak_step_successors)
from wtc.errors import TauArgument
from wtc.transitions import strong_successors


def test_strong_successors(fig1_left, par_ab):
    assert strong_successors(fig1_left, EMPTY) == [(0, frozenset({0}))]
    assert strong_successors(fig1_left, frozenset({0, 1, 2})) == []
    assert strong_successors(par_ab, EMPTY) == [(0, frozenset({0})), (1, frozenset({1}))]


def test_tau_closure(fig1_left, fig1_right):
    assert tau_closure(fig1_left, frozenset({0})) == {frozenset({0}), frozenset({0, 1})}
    assert tau_closure(fig1_right, frozenset({0})) == {frozenset({0})}
    taus = validate_pes(["tau", "tau"], [(0, 1)])
    assert len(tau_closure(taus, EMPTY)) == 3


def test_weak_event_successors(fig1_left, fig1_right):
    assert weak_event_successors(fig1_left, EMPTY, 0) == {frozenset({0}), frozenset({0, 1})}
    assert weak_event_successors(fig1_left, EMPTY, 2) == set()
    assert weak_event_successors(fig1_right, EMPTY, 0) == {frozenset({0})}
    with pytest.raises(TauArgument):
        weak_event_successors(fig1_left, EMPTY, 1)


def test_weak_pomset_successors(fig1_left, par_ab):
    got = {(p.carrier, d) for p, d in weak_pomset_successors(fig1_left, EMPTY)}
    assert ((0,), frozenset({0})) in got
    assert ((0,), frozenset({0, 1})) in got
    assert ((0, 2), frozenset({0, 1, 2})) in got
    assert weak_pomset_successors(fig1_left, frozenset({0, 1, 2})) == set()
    full = {(p, d) for p, d in weak_pomset_successors(par_ab, EMPTY) if len(p) == 2}
    assert len(full) == 1 and next(iter(full))[0].is_antichain


def test_weak_steps(par_ab, fig1_right):
    assert any(len(p) == 2 for p, _ in weak_step_successors(par_ab, EMPTY))
    assert all(len(p) == 1 for p, _ in weak_step_successors(fig1_right, EMPTY))


def test_configuration_graph(fig1_left, choice_ab):
    g = build_configuration_graph(fig1_left)
    assert len(g.nodes) == 4
    assert [e for _, e, _ in g.strong_edges] == [0, 1, 2]
    empty = build_configuration_graph(validate_pes([]))
    assert len(empty.nodes) == 1 and not empty.strong_edges and not empty.weak_pomset_edges
    g = build_configuration_graph(choice_ab)
    assert len(g.nodes) == 3 and len(g.strong_edges) == 2


@settings(max_examples=200, deadline=None)
@given(pes_st(max_events=5, max_tau=2))
def test_definition_filter_matches_path_search(pes):
    for c in enumerate_configurations(pes):
        by_def = weak_pomset_successors(pes, c)
        assert by_def == weak_pomset_successors_by_paths(pes, c)
        assert {(p.carrier, d) for p, d in by_def} == \
            {(tuple(sorted(x)), d) for x, d in fire_paths(pes, c)}


@settings(max_examples=200, deadline=None)
@given(pes_st(max_events=5, max_tau=2))
def test_strong_edges_embed_in_weak(pes):
    for c in enumerate_configurations(pes):
        for e, d in strong_successors(pes, c):
            if e in pes.visible_events:
                assert d in weak_event_successors(pes, c, e)


@settings(max_examples=200, deadline=None)
@given(pes_st(max_events=5, max_tau=2))
def test_steps_are_antichain_pomsets(pes):
    for c in enumerate_configurations(pes):
        steps = weak_step_successors(pes, c)
        assert steps <= weak_pomset_successors(pes, c)
        for p, d in steps:
            assert p == induced_pomset(pes, p.carrier) and p.is_antichain
