from math import comb

import pytest

from operadic.algebra_complexes import (
    OperadicChainComplex,
    OperadicCochainComplex,
    chain_complex,
    chevalley_eilenberg_chains,
    classical_cross_check,
)
from operadic.exceptions import AlgebraError, UnsupportedOperadError
from operadic.palgebra import PAlgebra, adjoint_module, free_module, trivial_module
from tests.conftest import abelian_algebra


def test_sl2_operadic_homology(sl2):
    betti = chain_complex(sl2, 2).betti()
    assert [betti.dim(n) for n in range(3)] == [0, 0, 1]
    assert chain_complex(sl2, 2, weight=0).betti().dim(2) == 1
    assert chain_complex(sl2, 2, weight=2).betti().total_dim == 0


def test_degree_zero_is_the_algebra(nonabelian2):
    complex_ = OperadicChainComplex(nonabelian2, 1)
    assert complex_.dims() == {0: 2, 1: 1}
    assert [complex_.complex().betti().dim(n) for n in (0, 1)] == [1, 0]


def test_chevalley_eilenberg_of_sl2(sl2):
    betti = chevalley_eilenberg_chains(sl2, 3).betti()
    assert betti.as_dict() == {3: 1}


@pytest.mark.parametrize("build", ["sl2", "nonabelian2", "abelian"])
def test_cross_check_agrees(request, build):
    algebra = abelian_algebra(["x", "y"], [1, 2]) if build == "abelian" else request.getfixturevalue(build)
    check = classical_cross_check(algebra, 2, adjoint_module(algebra))
    assert check.agrees, check.mismatches
    assert check.certified
    assert check.as_dict()["degree_shift"] == "n_operadic = n_classical - 1"


def test_cross_check_with_trivial_coefficients(sl2):
    check = classical_cross_check(sl2, 2, trivial_module(sl2), certify=False)
    assert check.agrees
    assert check.certificate is None


def test_associative_cross_check(q):
    dual_numbers = PAlgebra.asc(["t"], [1], {}, q, "t")
    check = classical_cross_check(dual_numbers, 3, certify=False)
    assert check.agrees
    assert check.operadic == {0: 1, 1: 1, 2: 1, 3: 1}


def test_no_classical_complex_for_commutative_algebras(q):
    algebra = PAlgebra.com(["t"], [1], {}, q)
    with pytest.raises(UnsupportedOperadError):
        classical_cross_check(algebra, 2)


def test_invalid_algebra_is_rejected():
    broken = PAlgebra.lie(["a", "b", "c"], [0, 0, 0], {(0, 1): {0: 1}, (1, 2): {0: 1}, (0, 2): {2: 1}})
    with pytest.raises(AlgebraError):
        OperadicChainComplex(broken, 2)


def test_cochains_need_a_finite_module():
    line = abelian_algebra(["x"], [1])
    with pytest.raises(AlgebraError):
        OperadicCochainComplex(line, free_module(line, trivial_module(line).carrier, bound=2), 2)


def test_abelian_cochains(q):
    line = abelian_algebra(["x"], [1])
    betti = OperadicCochainComplex(line, trivial_module(line), 2).complex().betti()
    assert [betti.dim(n) for n in range(3)] == [1, 0, 0]


@pytest.mark.parametrize("d", range(1, 7))
def test_abelian_homology_is_exterior(d):
    algebra = abelian_algebra([f"x{i}" for i in range(d)], [1] * d)
    betti = OperadicChainComplex(algebra, 3).complex().betti()
    assert [betti.dim(n) for n in range(4)] == [comb(d, n + 1) for n in range(4)]


def test_sl2_trivial_cochains(sl2):
    betti = OperadicCochainComplex(sl2, trivial_module(sl2), 2).complex().betti()
    assert [betti.dim(n) for n in range(3)] == [0, 0, 1]
    check = classical_cross_check(sl2, 2, trivial_module(sl2), certify=False)
    assert check.operadic_cochains == {0: 0, 1: 0, 2: 1}
    assert check.classical_cochains == check.operadic_cochains
