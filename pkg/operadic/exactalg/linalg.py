"""Subspaces and quotients of coordinate spaces, kept in reduced echelon form so that
coordinates and projections are read off pivots.
"""
from __future__ import annotations

from typing import Any, Dict, Iterable, List, Mapping, Optional

from operadic.exactalg.field import Field
from operadic.exactalg.sparse_matrix import SparseMatrix
from operadic.exactalg.vectors import Vector, add_to
from operadic.exceptions import ShapeError


class Subspace:
    """Span of vectors in k^dim, stored as reduced echelon rows.

    The basis vectors have a 1 at their pivot and 0 at every other pivot, so the
    coordinates of a member v are simply the values v[pivot].
    """

    __slots__ = ("dim", "field", "basis", "pivots", "_pivot_position")

    def __init__(self, vectors: Iterable[Mapping[int, Any]], dim: int, field: Field):
        rows = [dict(v) for v in vectors if any(v.values())]
        self.dim = dim
        self.field = field
        if rows:
            reduced, pivots = SparseMatrix.from_rows(rows, dim, field).rref()
            self.basis: List[Vector] = [reduced.row(k) for k in range(len(pivots))]
            self.pivots: List[int] = pivots
        else:
            self.basis = []
            self.pivots = []
        self._pivot_position = {p: k for k, p in enumerate(self.pivots)}

    @classmethod
    def full(cls, dim: int, field: Field) -> Subspace:
        return cls(({i: field.one} for i in range(dim)), dim, field)

    def __len__(self) -> int:
        return len(self.pivots)

    def pivot_position(self, index: int) -> Optional[int]:
        return self._pivot_position.get(index)

    def reduce(self, vector: Mapping[int, Any]) -> Vector:
        """Returns vector minus its echelon combination; zero iff vector is a member."""
        residual = dict(vector)
        for index, value in list(vector.items()):
            k = self._pivot_position.get(index)
            if k is None:
                continue
            coefficient = residual.get(index)
            if not coefficient:
                continue
            for j, b in self.basis[k].items():
                add_to(residual, j, -coefficient * b)
        return residual

    def contains(self, vector: Mapping[int, Any]) -> bool:
        return not self.reduce(vector)

    def coordinates(self, vector: Mapping[int, Any], check: bool = True) -> Vector:
        """Coordinates in the echelon basis.

        :raises ShapeError: If check is set and vector is not a member.
        """
        if check and not self.contains(vector):
            raise ShapeError("Vector does not lie in the subspace.")
        coords: Vector = {}
        for index, value in vector.items():
            k = self._pivot_position.get(index)
            if k is not None and value:
                coords[k] = value
        return coords

    def matrix(self) -> SparseMatrix:
        """dim x len(self) matrix whose columns are the basis vectors."""
        return SparseMatrix.from_columns(self.basis, self.dim, self.field)


class Quotient:
    """k^dim modulo the span of relation vectors.

    The quotient basis consists of the non-pivot coordinates of the relation span in
    increasing order.
    """

    __slots__ = ("dim", "field", "relations", "basis", "_position")

    def __init__(self, dim: int, relations: Iterable[Mapping[int, Any]], field: Field):
        self.dim = dim
        self.field = field
        self.relations = Subspace(relations, dim, field)
        pivot_set = set(self.relations.pivots)
        self.basis: List[int] = [i for i in range(dim) if i not in pivot_set]
        self._position: Dict[int, int] = {i: k for k, i in enumerate(self.basis)}

    def __len__(self) -> int:
        return len(self.basis)

    def position(self, index: int) -> Optional[int]:
        return self._position.get(index)

    def project(self, vector: Mapping[int, Any]) -> Vector:
        """Coordinates of the class of vector in the quotient basis."""
        result: Vector = {}
        for index, value in vector.items():
            if not value:
                continue
            position = self._position.get(index)
            if position is not None:
                add_to(result, position, value)
                continue
            k = self.relations.pivot_position(index)
            for j, b in self.relations.basis[k].items():
                if j != index:
                    add_to(result, self._position[j], -value * b)
        return result

    def lift(self, vector: Mapping[int, Any]) -> Vector:
        return {self.basis[k]: value for k, value in vector.items() if value}

    def projection_matrix(self) -> SparseMatrix:
        columns = [self.project({i: self.field.one}) for i in range(self.dim)]
        return SparseMatrix.from_columns(columns, len(self.basis), self.field)


def image_basis(matrix: SparseMatrix) -> Subspace:
    """Echelonized column space of a matrix."""
    return Subspace(matrix.columns(), matrix.rows, matrix.field)


def solve_kernel(rows: List[Mapping[int, Any]], n_unknowns: int, field: Field) -> List[Vector]:
    """Basis of the solutions x of the homogeneous system given by sparse rows."""
    if not rows:
        return [{i: field.one} for i in range(n_unknowns)]
    return SparseMatrix.from_rows(rows, n_unknowns, field).kernel()


class Span:
    """Span of given vectors, with coordinates expressed in those vectors rather than
    in an echelon basis.
    """

    __slots__ = ("dim", "field", "size", "_echelon")

    def __init__(self, vectors: Iterable[Mapping[int, Any]], dim: int, field: Field):
        vectors = list(vectors)
        self.dim = dim
        self.field = field
        self.size = len(vectors)
        tagged = []
        for k, vector in enumerate(vectors):
            row = {i: v for i, v in vector.items() if v}
            row[dim + k] = field.one
            tagged.append(row)
        self._echelon = Subspace(tagged, dim + self.size, field)

    @property
    def rank(self) -> int:
        return sum(1 for p in self._echelon.pivots if p < self.dim)

    @property
    def is_independent(self) -> bool:
        return self.rank == self.size

    def coordinates(self, vector: Mapping[int, Any]) -> Optional[Vector]:
        """Some c with Σ c_k v_k = vector, or None outside the span."""
        residual = {i: v for i, v in vector.items() if v}
        coords: Vector = {}
        for pivot, row in zip(self._echelon.pivots, self._echelon.basis):
            if pivot >= self.dim:
                break
            value = residual.get(pivot)
            if not value:
                continue
            for j, b in row.items():
                if j < self.dim:
                    add_to(residual, j, -value * b)
                else:
                    add_to(coords, j - self.dim, value * b)
        if residual:
            return None
        return coords


def inverse(matrix: SparseMatrix) -> SparseMatrix:
    """Inverse of a square matrix.

    :raises ShapeError: If the matrix is not square or is singular.
    """
    n = matrix.rows
    if matrix.cols != n:
        raise ShapeError(f"Only square matrices are invertible, not {matrix.shape}.")
    if n == 0:
        return matrix
    reduced, pivots = matrix.hstack(SparseMatrix.identity(n, matrix.field)).rref()
    if pivots[:n] != list(range(n)):
        raise ShapeError("Matrix is singular.")
    return reduced.submatrix(range(n), range(n, 2 * n))
