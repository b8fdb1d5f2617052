"""This module defines GradedSpace, a finite family of dimensions indexed by integer
degrees.
"""
from __future__ import annotations

from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple


class GradedSpace:
    """Integer-graded finite dimensional vector space, described by its dimensions and
    optional basis labels per degree.
    """

    __slots__ = ("_dims", "_labels")

    def __init__(
        self,
        dims: Mapping[int, int],
        labels: Optional[Mapping[int, Sequence[str]]] = None,
    ):
        cleaned: Dict[int, int] = {}
        for degree, dim in dims.items():
            if dim < 0:
                raise ValueError(f"Negative dimension {dim} in degree {degree}.")
            if dim:
                cleaned[int(degree)] = int(dim)
        self._dims = dict(sorted(cleaned.items()))
        self._labels: Dict[int, List[str]] = {}
        for degree, names in (labels or {}).items():
            if len(names) != self._dims.get(degree, 0):
                raise ValueError(f"Label count mismatch in degree {degree}.")
            if names:
                self._labels[degree] = list(names)

    @classmethod
    def zero(cls) -> GradedSpace:
        return cls({})

    def dim(self, degree: int) -> int:
        return self._dims.get(degree, 0)

    def labels(self, degree: int) -> List[str]:
        if degree in self._labels:
            return list(self._labels[degree])
        return [f"e{degree}_{k}" for k in range(self.dim(degree))]

    def degrees(self) -> List[int]:
        """Degrees carrying a nonzero component."""
        return list(self._dims)

    @property
    def total_dim(self) -> int:
        return sum(self._dims.values())

    def euler_characteristic(self, lo: Optional[int] = None, hi: Optional[int] = None) -> int:
        return sum(
            (-1) ** (degree % 2) * dim
            for degree, dim in self._dims.items()
            if (lo is None or degree >= lo) and (hi is None or degree <= hi)
        )

    def shifted(self, amount: int) -> GradedSpace:
        return GradedSpace(
            {d + amount: n for d, n in self._dims.items()},
            {d + amount: names for d, names in self._labels.items()},
        )

    def restricted(self, lo: int, hi: int) -> GradedSpace:
        return GradedSpace({d: n for d, n in self._dims.items() if lo <= d <= hi})

    def direct_sum(self, other: GradedSpace) -> GradedSpace:
        dims = dict(self._dims)
        for degree, dim in other._dims.items():
            dims[degree] = dims.get(degree, 0) + dim
        return GradedSpace(dims)

    def as_dict(self) -> Dict[int, int]:
        return dict(self._dims)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(self._dims.items())

    def __bool__(self) -> bool:
        return bool(self._dims)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedSpace):
            return NotImplemented
        return self._dims == other._dims

    def __hash__(self) -> int:
        return hash(tuple(self._dims.items()))

    def __repr__(self) -> str:
        return f"GradedSpace({self._dims})"
