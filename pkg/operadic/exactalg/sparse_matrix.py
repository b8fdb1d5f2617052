"""This module contains the SparseMatrix class, a thin exact wrapper around sympy's
sparse domain matrices.
"""
from __future__ import annotations

from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.matrices.sdm import SDM

from operadic.exactalg.field import Field
from operadic.exactalg.vectors import Vector, add_to
from operadic.exceptions import ShapeError


class SparseMatrix:
    """Exact sparse matrix over a Field.

    Entries are stored row-wise as a dictionary of dictionaries without zeros. The
    convention everywhere is column-vectors: the matrix of a linear map has the image
    of basis vector j in column j.
    """

    __slots__ = ("_sdm", "_field")

    def __init__(
        self,
        rows: Mapping[int, Mapping[int, Any]],
        shape: Tuple[int, int],
        field: Field,
    ):
        n_rows, n_cols = shape
        clean: Dict[int, Dict[int, Any]] = {}
        for i, row in rows.items():
            if not 0 <= i < n_rows:
                raise ShapeError(f"Row index {i} out of range for shape {shape}.")
            kept = {}
            for j, value in row.items():
                if not 0 <= j < n_cols:
                    raise ShapeError(
                        f"Column index {j} out of range for shape {shape}."
                    )
                if value:
                    kept[j] = value
            if kept:
                clean[i] = kept
        self._sdm = SDM(clean, (n_rows, n_cols), field.domain)
        self._field = field

    @classmethod
    def _wrap(cls, sdm: SDM, field: Field) -> SparseMatrix:
        matrix = cls.__new__(cls)
        matrix._sdm = sdm
        matrix._field = field
        return matrix

    @classmethod
    def zeros(cls, shape: Tuple[int, int], field: Field) -> SparseMatrix:
        return cls({}, shape, field)

    @classmethod
    def identity(cls, n: int, field: Field) -> SparseMatrix:
        return cls({i: {i: field.one} for i in range(n)}, (n, n), field)

    @classmethod
    def from_entries(
        cls,
        entries: Iterable[Tuple[int, int, Any]],
        shape: Tuple[int, int],
        field: Field,
    ) -> SparseMatrix:
        """Builds a matrix summing (row, col, value) triples."""
        rows: Dict[int, Dict[int, Any]] = {}
        for i, j, value in entries:
            add_to(rows.setdefault(i, {}), j, value)
        return cls(rows, shape, field)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Mapping[int, Any]], n_rows: int, field: Field
    ) -> SparseMatrix:
        """Builds the matrix whose j-th column is the j-th sparse vector."""
        rows: Dict[int, Dict[int, Any]] = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                if value:
                    rows.setdefault(i, {})[j] = value
        return cls(rows, (n_rows, len(columns)), field)

    @classmethod
    def from_rows(
        cls, rows: Sequence[Mapping[int, Any]], n_cols: int, field: Field
    ) -> SparseMatrix:
        return cls(dict(enumerate(rows)), (len(rows), n_cols), field)

    @classmethod
    def from_dense(cls, values: Sequence[Sequence[Any]], field: Field) -> SparseMatrix:
        n_rows = len(values)
        n_cols = len(values[0]) if n_rows else 0
        rows = {
            i: {j: field(value) for j, value in enumerate(row)}
            for i, row in enumerate(values)
        }
        return cls(rows, (n_rows, n_cols), field)

    @property
    def field(self) -> Field:
        return self._field

    @property
    def shape(self) -> Tuple[int, int]:
        return self._sdm.shape

    @property
    def rows(self) -> int:
        return self._sdm.shape[0]

    @property
    def cols(self) -> int:
        return self._sdm.shape[1]

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._sdm.values())

    def entries(self) -> List[Tuple[int, int, Any]]:
        """Sorted (row, col, value) triples."""
        return sorted(
            (i, j, value)
            for i, row in self._sdm.items()
            for j, value in row.items()
        )

    def row(self, i: int) -> Vector:
        return dict(self._sdm.get(i, {}))

    def row_dict(self) -> Dict[int, Dict[int, Any]]:
        return {i: dict(row) for i, row in self._sdm.items()}

    def columns(self) -> List[Vector]:
        result: List[Vector] = [{} for _ in range(self.cols)]
        for i, row in self._sdm.items():
            for j, value in row.items():
                result[j][i] = value
        return result

    def column(self, j: int) -> Vector:
        return {i: row[j] for i, row in self._sdm.items() if j in row}

    def get(self, i: int, j: int) -> Any:
        return self._sdm.get(i, {}).get(j, self._field.zero)

    def _check_same_shape(self, other: SparseMatrix) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"Shapes {self.shape} and {other.shape} differ.")

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        self._check_same_shape(other)
        return self._wrap(self._sdm.add(other._sdm), self._field)

    def __sub__(self, other: SparseMatrix) -> SparseMatrix:
        self._check_same_shape(other)
        return self._wrap(self._sdm.sub(other._sdm), self._field)

    def __neg__(self) -> SparseMatrix:
        return self._wrap(self._sdm.neg(), self._field)

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.cols != other.rows:
            raise ShapeError(f"Cannot multiply {self.shape} by {other.shape}.")
        if not self._sdm or not other._sdm:
            return SparseMatrix.zeros((self.rows, other.cols), self._field)
        return self._wrap(self._sdm.matmul(other._sdm), self._field)

    def scale(self, coefficient: Any) -> SparseMatrix:
        if not coefficient:
            return SparseMatrix.zeros(self.shape, self._field)
        return self._wrap(self._sdm.mul(coefficient), self._field)

    def transpose(self) -> SparseMatrix:
        return self._wrap(self._sdm.transpose(), self._field)

    @property
    def T(self) -> SparseMatrix:
        return self.transpose()

    def hstack(self, *others: SparseMatrix) -> SparseMatrix:
        for other in others:
            if other.rows != self.rows:
                raise ShapeError("hstack needs equal row counts.")
        return self._wrap(self._sdm.hstack(*(o._sdm for o in others)), self._field)

    def vstack(self, *others: SparseMatrix) -> SparseMatrix:
        for other in others:
            if other.cols != self.cols:
                raise ShapeError("vstack needs equal column counts.")
        return self._wrap(self._sdm.vstack(*(o._sdm for o in others)), self._field)

    def submatrix(
        self, row_indices: Sequence[int], col_indices: Sequence[int]
    ) -> SparseMatrix:
        """Extracts the given rows and columns, in the given order."""
        col_position = {j: b for b, j in enumerate(col_indices)}
        rows: Dict[int, Dict[int, Any]] = {}
        for a, i in enumerate(row_indices):
            row = self._sdm.get(i)
            if not row:
                continue
            kept = {col_position[j]: v for j, v in row.items() if j in col_position}
            if kept:
                rows[a] = kept
        return SparseMatrix(rows, (len(row_indices), len(col_indices)), self._field)

    def apply(self, vector: Mapping[int, Any]) -> Vector:
        """Matrix times a sparse column vector."""
        result: Vector = {}
        if not vector:
            return result
        for i, row in self._sdm.items():
            total = self._field.zero
            for j, value in row.items():
                x = vector.get(j)
                if x:
                    total += value * x
            if total:
                result[i] = total
        return result

    def is_zero(self) -> bool:
        return not any(self._sdm.values())

    def rref(self) -> Tuple[SparseMatrix, List[int]]:
        """Reduced row echelon form and pivot columns.

        The rows of the returned matrix are ordered by their pivot column.
        """
        if not self._sdm:
            return SparseMatrix.zeros(self.shape, self._field), []
        reduced, pivots = self._sdm.rref()
        ordered = sorted(
            (row for row in reduced.values() if row), key=lambda row: min(row)
        )
        rows = {k: dict(row) for k, row in enumerate(ordered)}
        pivots = [min(row) for row in ordered]
        return SparseMatrix(rows, self.shape, self._field), pivots

    def rank(self) -> int:
        if not self._sdm:
            return 0
        return len(self.rref()[1])

    def kernel(self) -> List[Vector]:
        """Basis of the null space, one vector per free column in increasing order."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        pivot_rows = [reduced.row(k) for k in range(len(pivots))]
        basis: List[Vector] = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vector: Vector = {free: self._field.one}
            for pivot, row in zip(pivots, pivot_rows):
                value = row.get(free)
                if value:
                    vector[pivot] = -value
            basis.append(vector)
        return basis

    def nullity(self) -> int:
        return self.cols - self.rank()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self.entries())))

    def to_dense(self) -> List[List[Any]]:
        dense = [[self._field.zero] * self.cols for _ in range(self.rows)]
        for i, j, value in self.entries():
            dense[i][j] = value
        return dense

    def __repr__(self) -> str:
        return f"SparseMatrix(shape={self.shape}, nnz={self.nnz}, field={self._field.name})"


def block_diagonal(blocks: Sequence[SparseMatrix], field: Optional[Field] = None) -> SparseMatrix:
    """Direct sum of matrices."""
    if not blocks:
        if field is None:
            raise ShapeError("block_diagonal of nothing needs a field.")
        return SparseMatrix.zeros((0, 0), field)
    field = blocks[0].field
    rows: Dict[int, Dict[int, Any]] = {}
    row_offset = col_offset = 0
    for block in blocks:
        for i, j, value in block.entries():
            rows.setdefault(i + row_offset, {})[j + col_offset] = value
        row_offset += block.rows
        col_offset += block.cols
    return SparseMatrix(rows, (row_offset, col_offset), field)
