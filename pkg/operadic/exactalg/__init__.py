from operadic.exactalg.builder import ComplexBuilder
from operadic.exactalg.chain_complex import ChainComplex, Direction, Homology
from operadic.exactalg.field import Field, Rationals
from operadic.exactalg.graded_space import GradedSpace
from operadic.exactalg.linalg import Quotient, Span, Subspace, image_basis, inverse, solve_kernel
from operadic.exactalg.sparse_matrix import SparseMatrix, block_diagonal
from operadic.exactalg.vectors import Vector, add_scaled, add_to, combine, scaled


def rank(matrix: SparseMatrix) -> int:
    """Exact rank over the matrix's field."""
    return matrix.rank()


def homology(complex_: ChainComplex) -> Homology:
    """Homology of a complex, with representatives per degree."""
    return complex_.homology()


__all__ = [
    "ChainComplex",
    "ComplexBuilder",
    "Direction",
    "Field",
    "GradedSpace",
    "Homology",
    "Quotient",
    "Rationals",
    "Span",
    "SparseMatrix",
    "Subspace",
    "Vector",
    "add_scaled",
    "add_to",
    "block_diagonal",
    "combine",
    "homology",
    "image_basis",
    "inverse",
    "rank",
    "scaled",
    "solve_kernel",
]
