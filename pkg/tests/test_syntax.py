import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wtc import (T, And, Bind, Box, Diamond, Exec, Mu, Not, Nu, Or, PropApply, Step,
                 format_formula, parse_formula)
from wtc.errors import ParseError
from wtc.formula import DualBind
from wtc.fixpoint import positivity_check

VARS = ("x", "y", "z")


def test_bind_and_exec():
    phi = parse_formula("<<|{} {}~ << a x|>> T")
    assert phi == Diamond((), (), "a", "x", T)
    assert parse_formula("<<|a x|>> T") == phi


def test_boolean_structure():
    assert parse_formula("T & !T") == And(T, Not(T))
    assert parse_formula("T | T & !T") == Or(T, And(T, Not(T)))
    assert parse_formula("(T | T) & T") == And(Or(T, T), T)


def test_fixpoint_parses_and_is_positive():
    phi = parse_formula("mu X(). <<|{} {}~ << a z|>> X()")
    assert phi == Mu("X", (), Diamond((), (), "a", "z", PropApply("X", ())))
    assert positivity_check(phi)


def test_all_binders():
    assert parse_formula("({x}, {y}~ << a z) <<z>> T") == \
        Bind(("x",), ("y",), "a", "z", Exec("z", T))
    assert parse_formula("{{x} {}~ << b z} [[z]] T") == \
        DualBind(("x",), (), "b", "z", Box("z", T))
    assert parse_formula("(<<|a x|>> (x) <<|b y|>>) T") == \
        Step((((), (), "a", "x"), ((), (), "b", "y")), T)
    assert parse_formula("(<<|a x|>> ⊗ <<|b y|>>) T") == \
        Step((((), (), "a", "x"), ((), (), "b", "y")), T)
    assert parse_formula("nu Y(x, y). Y(y, x)") == Nu("Y", ("x", "y"), PropApply("Y", ("y", "x")))


def test_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        parse_formula("T &\n  ?")
    assert info.value.line == 2 and info.value.column == 3
    with pytest.raises(ParseError):
        parse_formula("<<|tau x|>> T")
    with pytest.raises(ParseError):
        parse_formula("T T")
    with pytest.raises(ParseError):
        parse_formula("")


def random_surface(rng, depth):
    """Random formula using every surface constructor."""
    if depth == 0:
        return rng.choice([T, Exec(rng.choice(VARS), T), PropApply("X", ()),
                           PropApply("Y", (rng.choice(VARS),))])
    sub = lambda: random_surface(rng, depth - 1)
    lists = lambda: tuple(v for v in VARS if rng.random() < 0.3)
    label = rng.choice("ab")
    var = rng.choice(VARS)
    k = rng.randrange(12)
    if k == 0:
        return And(sub(), sub())
    if k == 1:
        return Or(sub(), sub())
    if k == 2:
        return Not(sub())
    if k == 3:
        return Bind(lists(), lists(), label, var, sub())
    if k == 4:
        return DualBind(lists(), lists(), label, var, sub())
    if k == 5:
        return Exec(var, sub())
    if k == 6:
        return Box(var, sub())
    if k == 7:
        return Diamond(lists(), lists(), label, var, sub())
    if k == 8:
        parts = tuple((lists(), lists(), rng.choice("ab"), v) for v in VARS[:rng.randint(2, 3)])
        return Step(parts, sub())
    if k == 9:
        return Mu("X", (), sub())
    if k == 10:
        return Nu("X", (), sub())
    return T


@settings(max_examples=400, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(0, 4))
def test_print_parse_round_trip(seed, depth):
    phi = random_surface(random.Random(seed), depth)
    text = format_formula(phi)
    assert parse_formula(text) == phi
    assert format_formula(parse_formula(text)) == text
