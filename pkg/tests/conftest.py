from pathlib import Path

import pytest

from operadic.exactalg import Field, Rationals
from operadic.operad_core import classical_presentation
from operadic.palgebra import PAlgebra

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture
def q():
    return Rationals


@pytest.fixture
def f101():
    return Field(101)


@pytest.fixture
def samples():
    return SAMPLES


@pytest.fixture(params=["com", "asc", "lie"])
def classical(request):
    return classical_presentation(request.param, Rationals)


def sl2_algebra(field=Rationals):
    return PAlgebra.lie(
        ["e", "f", "h"],
        [2, -2, 0],
        {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}},
        field,
        "sl2",
    )


def abelian_algebra(names, weights, field=Rationals, name="ab"):
    return PAlgebra.lie(names, weights, {}, field, name)


def nonabelian2_algebra(field=Rationals):
    return PAlgebra.lie(["x", "y"], [0, 0], {(0, 1): {1: 1}}, field, "aff1")


@pytest.fixture
def sl2():
    return sl2_algebra()


@pytest.fixture
def abelian2():
    return abelian_algebra(["xm", "xp"], [-1, 1], name="abelian2")


@pytest.fixture
def nonabelian2():
    return nonabelian2_algebra()
