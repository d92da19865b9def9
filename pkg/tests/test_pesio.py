import pytest
from hypothesis import given, settings

from oracles import pes_st
from wtc import format_pes, load_pes, parse_pes
from wtc.errors import DanglingEvent, InvalidPES, ParseError


def test_fig1_left_file(data_dir, fig1_left):
    assert fig1_left.name == "fig1_left"
    assert fig1_left.names == ("e1", "e2", "e3")
    assert fig1_left.labels == ("a", "tau", "b")
    assert fig1_left.order == {(0, 1), (1, 2), (0, 2)}


def test_empty_block():
    p = parse_pes("pes nothing\n")
    assert len(p) == 0 and p.name == "nothing"


def test_comments_and_blank_lines():
    p = parse_pes("# header\n\npes p  # trailing\nevent e1 a # note\n")
    assert p.labels == ("a",)


def test_dangling_event_is_located():
    with pytest.raises(DanglingEvent) as info:
        parse_pes("pes p\nevent e1 a\ncause e1 e9\n")
    assert info.value.line == 3 and info.value.column == 10


def test_syntax_errors():
    with pytest.raises(ParseError) as info:
        parse_pes("pes p\nevnt e1 a\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_pes("event e1\n")
    with pytest.raises(InvalidPES):
        parse_pes("event e1 a\nevent e1 b\n")


def test_load_uses_file_stem_without_header(tmp_path):
    f = tmp_path / "anon.pes"
    f.write_text("event e1 a\n")
    assert load_pes(f).name == "anon"


@settings(max_examples=200, deadline=None)
@given(pes_st(max_events=5, max_tau=2))
def test_print_parse_round_trip(pes):
    text = format_pes(pes)
    back = parse_pes(text)
    assert back == pes
    assert format_pes(back) == text
