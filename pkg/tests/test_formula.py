import pytest

from wtc import (T, And, Bind, Box, Diamond, Exec, Mu, Not, Nu, Or, PropApply, Step,
                 desugar, fragment_of, free_vars, gfp_desugar, pomset_class_member,
                 pomset_formula, validate_pes, induced_pomset)
from wtc.errors import ArityMismatch, FormulaError
from wtc.formula import DualBind, conj, free_props, rename_free, size
from wtc.pomset import Pomset

ALL = {"HM", "step", "pomset", "hp", "full"}


def test_free_vars():
    assert free_vars(T) == set()
    assert free_vars(Bind((), (), "a", "z", Exec("z", T))) == set()
    assert free_vars(Exec("z", T)) == {"z"}
    assert free_vars(Bind(("x",), ("y",), "a", "z", Exec("w", T))) == {"x", "y", "w"}
    assert free_vars(Mu("X", ("x",), PropApply("X", ("x",)))) == {"x"}


def test_free_props():
    body = And(PropApply("X", ()), PropApply("Y", ()))
    assert free_props(Mu("X", (), body)) == {"Y"}


def test_tau_binders_rejected():
    with pytest.raises(FormulaError):
        Bind((), (), "tau", "x", T)
    with pytest.raises(FormulaError):
        Diamond((), (), "tau", "x", T)


def test_desugar_box_and_diamond():
    assert desugar(Box("z", T)) == Not(Exec("z", Not(T)))
    assert desugar(Diamond((), (), "a", "x", T)) == Bind((), (), "a", "x", Exec("x", T))
    assert desugar(Or(T, T)) == Not(And(Not(T), Not(T)))
    assert desugar(DualBind((), (), "a", "x", T)) == Not(Bind((), (), "a", "x", Not(T)))


def test_desugar_step_binds_then_executes():
    s = Step((((), (), "a", "x"), ((), (), "b", "y")), T)
    assert desugar(s) == Bind((), (), "a", "x", Bind((), ("x",), "b", "y",
                                                        Exec("x", Exec("y", T))))


def test_desugar_is_idempotent():
    phi = Nu("X", (), Or(Box("z", T), Diamond((), (), "a", "x", PropApply("X", ()))))
    once = desugar(phi)
    assert desugar(once) == once


def test_gfp_desugar():
    phi = Nu("X", (), Diamond((), (), "a", "z", PropApply("X", ())))
    assert gfp_desugar(phi) == Not(Mu("X", (), Not(Diamond((), (), "a", "z",
                                                               Not(PropApply("X", ()))))))
    vacuous = Nu("X", (), T)
    assert gfp_desugar(vacuous) == Not(Mu("X", (), Not(T)))


def test_fragments():
    hm = Diamond((), (), "a", "x", T)
    assert fragment_of(hm) == ALL
    step = Step((((), (), "a", "x"), ((), (), "b", "y")), T)
    assert fragment_of(step) == {"step", "full"}
    open_neg = Diamond((), (), "a", "x",
                       Diamond(("x",), (), "b", "y",
                               Not(Diamond(("y",), (), "c", "w", T))))
    assert fragment_of(open_neg) == {"hp", "full"}
    assert fragment_of(Mu("X", (), T)) == {"full"}
    assert fragment_of(Exec("x", T)) == {"full"}


def test_pomset_formula_shapes(fig1_right, par_ab):
    empty = Pomset((), frozenset(), ())
    body = Diamond((), (), "a", "x", T)
    assert pomset_formula(empty, body) == body
    chain = induced_pomset(fig1_right, {0, 1})
    assert pomset_formula(chain) == Diamond((), (), "a", "z1", Diamond(("z1",), (), "b", "z2", T))
    anti = induced_pomset(par_ab, {0, 1})
    assert pomset_formula(anti) == Diamond((), (), "a", "z1", Diamond((), ("z1",), "b", "z2", T))
    assert "pomset" in fragment_of(pomset_formula(chain))


def test_pomset_class_member():
    chain = Pomset((0, 1), frozenset({(0, 1)}), ("a", "b"))
    spec = [((), (), "a", "z1"), (("z1",), (), "b", "z2")]
    assert pomset_class_member(chain, spec)
    anti = Pomset((0, 1), frozenset(), ("a", "b"))
    assert not pomset_class_member(anti, spec)
    assert pomset_class_member(Pomset((), frozenset(), ()), [])
    with pytest.raises(ArityMismatch):
        pomset_class_member(chain, spec[:1])


def test_helpers():
    a = Diamond((), (), "a", "x", T)
    assert conj([]) == T
    assert conj([a, a, T]) == a
    assert (a & T) == And(a, T) and ~a == Not(a)
    assert rename_free(Exec("x", Bind(("x",), (), "a", "x", Exec("x", T))), "x", "w") == \
        Exec("w", Bind(("w",), (), "a", "x", Exec("x", T)))
    assert size(a) == 2
