import pytest

from operadic.exactalg import (
    ChainComplex,
    ComplexBuilder,
    Direction,
    Field,
    GradedSpace,
    Quotient,
    Span,
    SparseMatrix,
    Subspace,
    block_diagonal,
    inverse,
)
from operadic.exceptions import CharacteristicError, ComplexError, FieldError, ShapeError


def test_field_from_string():
    assert Field.from_string("Q").characteristic == 0
    assert Field.from_string("F101").characteristic == 101
    assert Field.from_string("GF(7)").name == "F7"
    with pytest.raises(CharacteristicError):
        Field.from_string("F4")
    with pytest.raises(FieldError):
        Field.from_string("R")


def test_field_scalars(q, f101):
    half = q("1/2")
    assert half + half == q.one
    assert q.to_python(half) == "1/2"
    assert q.to_python(q(-3)) == -3
    assert f101(2) * f101("1/2") == f101.one
    assert q.sign(3) == -q.one
    assert q.sign(4) == q.one


def test_check_arity(f101):
    f101.check_arity(100)
    with pytest.raises(CharacteristicError):
        Field(5).check_arity(5)
    Field(0).check_arity(1000)


def test_sparse_matrix_rank_and_kernel(q):
    matrix = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6]], q)
    assert matrix.shape == (2, 3)
    assert matrix.rank() == 1
    kernel = matrix.kernel()
    assert len(kernel) == 2
    for vector in kernel:
        assert not matrix.apply(vector)
    assert matrix.T.shape == (3, 2)


def test_rank_depends_on_characteristic(q):
    values = [[1, 1], [1, -1]]
    assert SparseMatrix.from_dense(values, q).rank() == 2
    assert SparseMatrix.from_dense(values, Field(2)).rank() == 1


def test_matmul_and_inverse(q):
    a = SparseMatrix.from_dense([[2, 1], [1, 1]], q)
    assert a @ inverse(a) == SparseMatrix.identity(2, q)
    with pytest.raises(ShapeError):
        inverse(SparseMatrix.from_dense([[1, 2], [2, 4]], q))


def test_block_diagonal(q):
    block = block_diagonal([SparseMatrix.identity(1, q), SparseMatrix.from_dense([[0, 1]], q)])
    assert block.shape == (2, 3)
    assert block.rank() == 2


def test_subspace_and_quotient(q):
    one = q.one
    subspace = Subspace([{0: one, 1: one}, {1: one, 2: one}], 3, q)
    assert len(subspace) == 2
    assert subspace.contains({0: one, 2: -one})
    assert not subspace.contains({0: one})
    quotient = Quotient(3, [{0: one, 1: one}], q)
    assert len(quotient) == 2
    assert quotient.project({0: one}) == quotient.project({1: -one})
    assert quotient.project({0: one, 1: one}) == {}


def test_span_coordinates(q):
    one = q.one
    span = Span([{0: one}, {0: one, 1: one}], 2, q)
    assert span.is_independent
    assert span.coordinates({1: one}) == {0: -one, 1: one}
    dependent = Span([{0: one}, {0: q(2)}], 2, q)
    assert dependent.rank == 1
    assert not dependent.is_independent
    assert dependent.coordinates({1: one}) is None


def test_graded_space():
    space = GradedSpace({0: 1, 1: 3, 2: 0})
    assert space.degrees() == [0, 1]
    assert space.total_dim == 4
    assert space.euler_characteristic() == -2
    assert space.shifted(1).dim(2) == 3
    assert space == GradedSpace({1: 3, 0: 1})


def circle(field):
    # vertices 0, 1, 2 and edges 01, 12, 02
    d1 = SparseMatrix.from_dense([[-1, 0, -1], [1, -1, 0], [0, 1, 1]], field)
    return ChainComplex({0: 3, 1: 3}, {1: d1}, field)


def test_circle_homology(q):
    complex_ = circle(q)
    betti = complex_.betti()
    assert betti.dim(0) == 1
    assert betti.dim(1) == 1
    assert complex_.euler_characteristic() == 0
    homology = complex_.homology()
    assert len(homology.representatives[1]) == 1
    cycle = homology.representatives[1][0]
    assert not complex_.differential(1).apply(cycle)


def test_dual_reverses_direction(q):
    dual = circle(q).dual()
    assert dual.direction is Direction.COCHAIN
    assert dual.differential(0).shape == (3, 3)
    assert dual.betti() == circle(q).betti()


def test_d_squared_must_vanish(q):
    one = SparseMatrix.identity(1, q)
    with pytest.raises(ComplexError):
        ChainComplex({0: 1, 1: 1, 2: 1}, {1: one, 2: one}, q)


def test_wrong_shape(q):
    with pytest.raises(ComplexError):
        ChainComplex({0: 2, 1: 1}, {1: SparseMatrix.identity(1, q)}, q)


def test_builder(q):
    builder = ComplexBuilder(q)
    builder.extend([("a", 0), ("b", 0), ("ab", 1)])
    complex_ = builder.build(lambda label: {"b": q.one, "a": -q.one} if label == "ab" else {})
    assert complex_.betti().dim(0) == 1
    assert complex_.betti().dim(1) == 0
    with pytest.raises(ComplexError):
        builder.build(lambda label: {"c": q.one} if label == "ab" else {})


def test_truncated(q):
    truncated = circle(q).truncated(1, 1)
    assert truncated.betti().dim(1) == 3
