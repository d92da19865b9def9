import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wtc import compile_term, enumerate_configurations, parse_term, validate_pes
from wtc.errors import ParseError
from wtc.terms import Choice, Nil, Par, Prefix, format_term


def test_silent_chain_matches_fig1(fig1_left):
    p = compile_term("a.tau.b")
    assert p.labels == fig1_left.labels and p.order == fig1_left.order and not p.conflict


def test_nil_is_empty():
    assert len(compile_term("0")) == 0


def test_parallel_vs_interleaving(par_ab, interleaved_ab):
    assert len(par_ab) == 2 and not par_ab.order and not par_ab.conflict
    assert len(interleaved_ab) == 4
    assert interleaved_ab.order == {(0, 1), (2, 3)}
    # every event of one branch conflicts with every event of the other
    assert all(interleaved_ab.in_conflict(d, e) for d in (0, 1) for e in (2, 3))
    assert len(enumerate_configurations(interleaved_ab)) == 5


def test_precedence():
    assert parse_term("a.b + c | d") == Par(Choice(Prefix("a", Prefix("b", Nil())),
                                                   Prefix("c", Nil())), Prefix("d", Nil()))
    assert parse_term("a.(b | c)") == Prefix("a", Par(Prefix("b", Nil()), Prefix("c", Nil())))


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_term("a +")
    with pytest.raises(ParseError):
        parse_term("(a")
    with pytest.raises(ParseError):
        parse_term("a b")


terms = st.recursive(
    st.sampled_from([Nil(), Prefix("a", Nil()), Prefix("b", Nil()), Prefix("tau", Nil())]),
    lambda inner: st.one_of(
        st.builds(Prefix, st.sampled_from(["a", "b", "tau"]), inner),
        st.builds(Choice, inner, inner),
        st.builds(Par, inner, inner)),
    max_leaves=6)


@settings(max_examples=300, deadline=None)
@given(terms)
def test_compiled_terms_are_valid_and_round_trip(t):
    p = compile_term(t)
    again = validate_pes(p.labels, p.order, p.conflict)
    assert again == p
    assert parse_term(format_term(t)) == t
    assert compile_term(parse_term(format_term(t))) == p
