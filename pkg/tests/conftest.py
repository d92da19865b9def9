from pathlib import Path

import pytest

from wtc import compile_term, load_pes

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def fig1_left():
    return load_pes(DATA / "fig1_left.pes")


@pytest.fixture
def fig1_right():
    return load_pes(DATA / "fig1_right.pes")


@pytest.fixture
def par_ab():
    return compile_term("a | b", name="par")


@pytest.fixture
def interleaved_ab():
    return compile_term("a.b + b.a", name="inter")


@pytest.fixture
def choice_ab():
    return compile_term("a + b", name="choice")
