import pytest

from operadic.exceptions import AlgebraError, ModuleError
from operadic.palgebra import (
    AlgebraMorphism,
    PAlgebra,
    adjoint_module,
    derivations,
    dual_module,
    enveloping_algebra,
    representability,
    restrict_along_operad_morphism,
    restrict_module,
    trivial_module,
    validate_algebra,
)
from tests.conftest import abelian_algebra


def broken_jacobi():
    return PAlgebra.lie(["a", "b", "c"], [0, 0, 0], {(0, 1): {0: 1}, (1, 2): {0: 1}, (0, 2): {2: 1}}, name="broken")


def dual_numbers():
    return PAlgebra.com(["t"], [0], {(0, 0): {}}, name="t")


def test_sl2_is_valid(sl2):
    validation = validate_algebra(sl2)
    assert validation.valid
    assert validation.as_dict()["violations"] == []
    assert sl2.carrier.as_dict() == {-2: 1, 0: 1, 2: 1}
    assert sl2.index("h") == 2


def test_jacobi_violation_is_reported():
    validation = validate_algebra(broken_jacobi())
    assert not validation.valid
    assert validation.violations


def test_bracket_must_be_alternating():
    with pytest.raises(AlgebraError):
        PAlgebra.lie(["x"], [0], {(0, 0): {0: 1}})
    with pytest.raises(AlgebraError):
        PAlgebra.lie(["x", "y"], [0, 0], {(0, 1): {0: 1}, (1, 0): {0: 1}})


def test_weights_must_add(q):
    algebra = PAlgebra.lie(["x", "y"], [1, 1], {(0, 1): {0: 1}}, q)
    assert not validate_algebra(algebra).valid


def test_commutator_of_associative_algebra(q):
    matrices = PAlgebra.asc(
        ["e11", "e12", "e21", "e22"], [0, 1, -1, 0],
        {
            (0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {0: 1}, (1, 3): {1: 1},
            (2, 0): {2: 1}, (2, 1): {3: 1}, (3, 2): {2: 1}, (3, 3): {3: 1},
        },
        q, "M2",
    )
    assert validate_algebra(matrices).valid
    gl2 = restrict_along_operad_morphism(matrices, "gl2")
    assert validate_algebra(gl2).valid
    assert gl2.multiply({1: 1}, {2: 1}) == {0: 1, 3: -1}


@pytest.mark.parametrize("d", [1, 2, 3])
def test_enveloping_dimensions_of_finite_cases(q, d):
    names = [f"a{i}" for i in range(d)]
    com = PAlgebra.com(names, [0] * d, {}, q)
    asc = PAlgebra.asc(names, [0] * d, {}, q)
    assert enveloping_algebra(com, 2).dim == d + 1
    assert enveloping_algebra(asc, 2).dim == (d + 1) ** 2


def test_enveloping_of_abelian_line():
    truncated = enveloping_algebra(abelian_algebra(["x"], [1]), 3)
    assert truncated.dims_by_filtration() == {0: 1, 1: 1, 2: 1, 3: 1}
    assert truncated.dims_by_weight() == {0: 1, 1: 1, 2: 1, 3: 1}


def test_enveloping_of_sl2_is_associative(sl2):
    truncated = enveloping_algebra(sl2, 2)
    assert truncated.dim == 10
    assert truncated.associativity_failures() == []
    assert truncated.unit_failures() == []


def test_enveloping_of_invalid_algebra():
    with pytest.raises(AlgebraError):
        enveloping_algebra(broken_jacobi(), 2)


def test_modules(sl2, nonabelian2):
    assert adjoint_module(sl2).violations() == []
    assert adjoint_module(nonabelian2).violations() == []
    assert dual_module(adjoint_module(nonabelian2)).violations() == []
    assert trivial_module(sl2).violations() == []


def test_subalgebra_and_restriction(sl2):
    borel, inclusion = sl2.subalgebra([{1: 1}, {2: 1}], ["f", "h"], "b")
    assert borel.dim == 2
    assert inclusion.is_injective()
    assert inclusion.violations() == []
    restricted = restrict_module(inclusion, adjoint_module(sl2))
    assert restricted.violations() == []
    with pytest.raises(ModuleError):
        restrict_module(inclusion, adjoint_module(borel))
    with pytest.raises(AlgebraError):
        sl2.subalgebra([{0: 1}, {1: 1}])


def test_morphisms(sl2):
    assert AlgebraMorphism.identity(sl2).violations() == []
    assert AlgebraMorphism.from_zero(sl2).violations() == []


def test_derivations_of_abelian_algebra(abelian2):
    identity = AlgebraMorphism.identity(abelian2)
    module = adjoint_module(abelian2)
    assert derivations(identity, module).dim == 4
    assert derivations(identity, module, graded=True).dim == 2
    assert derivations(identity, module).space.as_dict() == {-2: 1, 0: 2, 2: 1}


def test_kahler_represents_derivations():
    algebra = dual_numbers()
    identity = AlgebraMorphism.identity(algebra)
    assert representability(identity, adjoint_module(algebra)) == (1, 1)
