import pytest

from operadic.exactalg import GradedSpace
from operadic.exceptions import TruncationError
from operadic.palgebra import AlgebraMorphism, PAlgebra, RightModule, adjoint_module, trivial_module
from operadic.relhom import (
    TruncationMode,
    bar_simplicial,
    compare_with_koszul,
    cotriple_from_adjunction,
    relative_cohomology,
    relative_homology,
)
from tests.conftest import abelian_algebra


@pytest.fixture
def line():
    return abelian_algebra(["x"], [1], name="line")


@pytest.fixture
def dual_numbers(q):
    return PAlgebra.asc(["t"], [0], {}, q, "t")


def test_relative_to_itself_only_degree_zero(line):
    identity = AlgebraMorphism.identity(line)
    result = relative_homology(identity, RightModule.trivial(line), 3)
    assert result.mode == "finite"
    assert result.certified == 2
    assert result.unverified == [3]
    assert result.space == GradedSpace({0: 1})
    assert result.dims[1][0] == 1


def test_relative_cohomology_negates_weights(line):
    identity = AlgebraMorphism.identity(line)
    result = relative_cohomology(identity, trivial_module(line), 2)
    assert result.cohomological
    assert list(result.dims) == [-1]
    assert result.total(0) == 1
    assert result.as_dict()["kind"] == "cohomology"


def test_unbounded_complement_needs_a_truncation(line):
    with pytest.raises(TruncationError):
        relative_homology(AlgebraMorphism.from_zero(line), RightModule.trivial(line), 2)


def test_weight_window_truncation(line):
    cotriple = cotriple_from_adjunction(AlgebraMorphism.from_zero(line), max_weight=3, margin=1)
    assert cotriple.mode is TruncationMode.WEIGHT
    assert cotriple.bound == 5
    assert cotriple.in_window(-3)
    assert not cotriple.in_window(4)
    explicit = cotriple_from_adjunction(AlgebraMorphism.from_zero(line), pbw_bound=3)
    assert explicit.mode is TruncationMode.PBW


def test_simplicial_identities(line, dual_numbers):
    finite = bar_simplicial(AlgebraMorphism.identity(line), trivial_module(line, (1,)), 3)
    assert finite.simplicial.identity_violations() == []
    absolute = bar_simplicial(AlgebraMorphism.from_zero(dual_numbers), trivial_module(dual_numbers), 3)
    assert absolute.simplicial.identity_violations() == []
    assert absolute.simplicial.dims() == {0: 4, 1: 16, 2: 64, 3: 256}


def test_cotriple_laws(dual_numbers):
    cotriple = cotriple_from_adjunction(AlgebraMorphism.from_zero(dual_numbers))
    assert cotriple.law_violations(trivial_module(dual_numbers)) == []


def test_bar_resolution_is_exact(dual_numbers):
    bar = bar_simplicial(AlgebraMorphism.from_zero(dual_numbers), trivial_module(dual_numbers), 3)
    betti = bar.augmented_complex(0).betti()
    assert all(betti.dim(n) == 0 for n in range(-1, 3))


def test_normalized_and_unnormalized_agree(dual_numbers):
    simplicial = bar_simplicial(AlgebraMorphism.from_zero(dual_numbers), trivial_module(dual_numbers), 3).simplicial
    unnormalized = simplicial.unnormalized_complex().betti()
    normalized = simplicial.normalized_complex().betti()
    assert [unnormalized.dim(n) for n in range(3)] == [normalized.dim(n) for n in range(3)]
    assert simplicial.normalized_complex().dim(1) < simplicial.dim(1)


def test_compare_with_koszul_on_a_line(line):
    comparison = compare_with_koszul(line, 3, max_weight=3)
    assert comparison.agrees, comparison.mismatches
    assert comparison.relative[0] == 1
    assert comparison.operadic[0] == 1
    assert comparison.certified == 2


def test_compare_with_koszul_on_the_zero_algebra():
    comparison = compare_with_koszul(PAlgebra.zero("lie"), 2)
    assert comparison.agrees
    assert not any(comparison.relative.values())
    assert comparison.reading == "zero Lie algebra, U = k"


def test_compare_with_koszul_on_sl2(sl2):
    comparison = compare_with_koszul(sl2, 3, pbw_bound=4)
    assert comparison.certified == 2
    assert comparison.agrees, comparison.mismatches
    assert comparison.relative == {0: 0, 1: 0, 2: 1}
    assert comparison.operadic == comparison.relative


def test_relative_bar_resolution_of_sl2_over_its_borel(sl2):
    one = sl2.field.one
    _, borel = sl2.subalgebra([{1: one}, {2: one}], ["f", "h"], name="b-")
    bar = bar_simplicial(borel, adjoint_module(sl2), 3, max_weight=4)
    assert bar.cotriple.mode is TruncationMode.WEIGHT
    for weight in range(-4, 5):
        betti = bar.augmented_complex(weight).betti()
        assert [betti.dim(n) for n in range(-1, 2)] == [0, 0, 0], weight
