"""This module defines chain and cochain complexes of finite dimensional spaces and
their homology.
"""
from __future__ import annotations

import logging
from enum import Enum, auto, unique
from typing import Dict, List, Mapping, Optional, Sequence

from operadic.exactalg.field import Field
from operadic.exactalg.graded_space import GradedSpace
from operadic.exactalg.sparse_matrix import SparseMatrix
from operadic.exactalg.vectors import Vector
from operadic.exceptions import ComplexError

logger = logging.getLogger(__name__)


@unique
class Direction(Enum):
    """Enumeration, represent the direction of a differential."""

    CHAIN = auto()
    COCHAIN = auto()

    def __str__(self) -> str:
        return f"{self.name} (direction) object"

    @property
    def step(self) -> int:
        """Degree change of the differential: -1 for chains, +1 for cochains."""
        return -1 if self is Direction.CHAIN else 1

    @property
    def opposite(self) -> Direction:
        return Direction.COCHAIN if self is Direction.CHAIN else Direction.CHAIN


class Homology(GradedSpace):
    """Homology dimensions together with representative cycles per degree."""

    __slots__ = ("representatives",)

    def __init__(self, dims: Mapping[int, int], representatives: Mapping[int, List[Vector]]):
        super().__init__(dims)
        self.representatives: Dict[int, List[Vector]] = {
            d: list(v) for d, v in representatives.items() if v
        }


class ChainComplex:
    """Bounded complex of finite dimensional spaces.

    ``differentials[n]`` is the matrix of d leaving degree n; it has shape
    (dim(n + step), dim(n)) where step is -1 for chain complexes and +1 for cochain
    complexes. Missing differentials are zero. d∘d = 0 is checked on construction.
    """

    __slots__ = ("_dims", "_differentials", "field", "direction", "_labels")

    def __init__(
        self,
        dims: Mapping[int, int],
        differentials: Mapping[int, SparseMatrix],
        field: Field,
        direction: Direction = Direction.CHAIN,
        labels: Optional[Mapping[int, Sequence[str]]] = None,
        check: bool = True,
    ):
        self._dims: Dict[int, int] = {int(d): int(n) for d, n in dims.items()}
        self.field = field
        self.direction = direction
        self._labels = dict(labels or {})
        step = direction.step
        self._differentials: Dict[int, SparseMatrix] = {}
        for degree, matrix in differentials.items():
            expected = (self.dim(degree + step), self.dim(degree))
            if matrix.shape != expected:
                raise ComplexError(
                    f"Differential at degree {degree} has shape {matrix.shape}, "
                    f"expected {expected}."
                )
            if not matrix.is_zero():
                self._differentials[degree] = matrix
        if check:
            self.check()

    def check(self) -> None:
        """Asserts d∘d = 0 in every degree.

        :raises ComplexError: If a composite of consecutive differentials is nonzero.
        """
        step = self.direction.step
        for degree, matrix in self._differentials.items():
            following = self._differentials.get(degree + step)
            if following is not None and not (following @ matrix).is_zero():
                raise ComplexError(f"d∘d is not zero starting at degree {degree}.")

    def dim(self, degree: int) -> int:
        return self._dims.get(degree, 0)

    @property
    def spaces(self) -> GradedSpace:
        return GradedSpace(self._dims, {d: l for d, l in self._labels.items() if l})

    def degrees(self) -> List[int]:
        return sorted(d for d, n in self._dims.items() if n)

    def differential(self, degree: int) -> SparseMatrix:
        matrix = self._differentials.get(degree)
        if matrix is not None:
            return matrix
        return SparseMatrix.zeros(
            (self.dim(degree + self.direction.step), self.dim(degree)), self.field
        )

    def incoming(self, degree: int) -> SparseMatrix:
        """The differential landing in degree."""
        return self.differential(degree - self.direction.step)

    def labels(self, degree: int) -> List[str]:
        return list(self._labels.get(degree, []))

    def betti(self) -> GradedSpace:
        """Homology dimensions only: dim ker(d out) - rank(d in)."""
        ranks = {d: m.rank() for d, m in self._differentials.items()}
        step = self.direction.step
        dims = {}
        for degree in self.degrees():
            kernel = self.dim(degree) - ranks.get(degree, 0)
            dims[degree] = kernel - ranks.get(degree - step, 0)
        logger.debug("Betti numbers %s", dims)
        return GradedSpace(dims)

    def homology(self) -> Homology:
        """Homology with representatives: kernel vectors (echelonized with the natural
        column order) that are independent modulo the image.
        """
        dims: Dict[int, int] = {}
        representatives: Dict[int, List[Vector]] = {}
        for degree in self.degrees():
            kernel = self.differential(degree).kernel()
            image = self.incoming(degree).columns()
            image = [column for column in image if column]
            if not kernel:
                dims[degree] = 0
                continue
            stacked = SparseMatrix.from_columns(image + kernel, self.dim(degree), self.field)
            _, pivots = stacked.rref()
            chosen = [kernel[p - len(image)] for p in pivots if p >= len(image)]
            dims[degree] = len(chosen)
            representatives[degree] = chosen
        return Homology(dims, representatives)

    def euler_characteristic(self) -> int:
        return self.spaces.euler_characteristic()

    def dual(self) -> ChainComplex:
        """Linear dual: same dimensions, transposed differentials, opposite direction."""
        step = self.direction.step
        differentials = {
            degree + step: matrix.transpose()
            for degree, matrix in self._differentials.items()
        }
        return ChainComplex(
            self._dims, differentials, self.field, self.direction.opposite, check=False
        )

    def truncated(self, lo: int, hi: int) -> ChainComplex:
        """Brutal truncation keeping the degrees in [lo, hi]."""
        step = self.direction.step
        dims = {d: n for d, n in self._dims.items() if lo <= d <= hi}
        differentials = {
            d: m
            for d, m in self._differentials.items()
            if lo <= d <= hi and lo <= d + step <= hi
        }
        labels = {d: l for d, l in self._labels.items() if lo <= d <= hi}
        return ChainComplex(
            dims, differentials, self.field, self.direction, labels, check=False
        )

    def __repr__(self) -> str:
        return (
            f"ChainComplex({self.direction.name.lower()}, dims={dict(sorted(self._dims.items()))})"
        )
