"""This module contains ComplexBuilder, which assembles a ChainComplex from a graded set
of hashable basis labels and a differential given label by label.
"""
from __future__ import annotations

import logging
from typing import Any, Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Tuple

from operadic.exactalg.chain_complex import ChainComplex, Direction
from operadic.exactalg.field import Field
from operadic.exactalg.sparse_matrix import SparseMatrix
from operadic.exactalg.vectors import Vector
from operadic.exceptions import ComplexError

logger = logging.getLogger(__name__)


class ComplexBuilder:
    """Collects labelled basis elements per degree, then builds the complex."""

    __slots__ = ("field", "direction", "_labels", "_positions")

    def __init__(self, field: Field, direction: Direction = Direction.CHAIN):
        self.field = field
        self.direction = direction
        self._labels: Dict[int, List[Hashable]] = {}
        self._positions: Dict[Hashable, Tuple[int, int]] = {}

    def add(self, label: Hashable, degree: int) -> None:
        if label in self._positions:
            return
        bucket = self._labels.setdefault(degree, [])
        self._positions[label] = (degree, len(bucket))
        bucket.append(label)

    def extend(self, labelled: Iterable[Tuple[Hashable, int]]) -> None:
        for label, degree in labelled:
            self.add(label, degree)

    def position(self, label: Hashable) -> Tuple[int, int]:
        return self._positions[label]

    def labels(self, degree: int) -> List[Hashable]:
        return list(self._labels.get(degree, []))

    def degrees(self) -> List[int]:
        return sorted(self._labels)

    def vector(self, combination: Mapping[Hashable, Any], degree: int) -> Vector:
        """Coordinates of a combination of labels of one degree."""
        result: Vector = {}
        for label, value in combination.items():
            found, index = self._positions[label]
            if found != degree:
                raise ComplexError(f"{label!r} has degree {found}, not {degree}.")
            result[index] = value
        return result

    def build(
        self,
        differential: Callable[[Hashable], Mapping[Hashable, Any]],
        render: Optional[Callable[[Hashable], str]] = None,
        check: bool = True,
    ) -> ChainComplex:
        """
        :param differential: Image of one basis label as a combination of labels.
        :param render: Optional label printer for reports.
        :param check: Whether to assert d∘d = 0.
        :raises ComplexError: If an image leaves the basis, has the wrong degree or
            d∘d is not zero.
        """
        step = self.direction.step
        matrices: Dict[int, SparseMatrix] = {}
        for degree, labels in self._labels.items():
            target = self._labels.get(degree + step, [])
            entries = []
            for column, label in enumerate(labels):
                for image, value in differential(label).items():
                    position = self._positions.get(image)
                    if position is None:
                        raise ComplexError(f"Differential of {label!r} leaves the basis: {image!r}.")
                    if position[0] != degree + step:
                        raise ComplexError(f"Differential of {label!r} has the wrong degree.")
                    entries.append((position[1], column, value))
            matrices[degree] = SparseMatrix.from_entries(entries, (len(target), len(labels)), self.field)
        dims = {d: len(l) for d, l in self._labels.items()}
        names = None
        if render is not None:
            names = {d: [render(l) for l in labels] for d, labels in self._labels.items()}
        logger.debug("Built %s complex with dims %s", self.direction.name.lower(), dims)
        return ChainComplex(dims, matrices, self.field, self.direction, names, check=check)
