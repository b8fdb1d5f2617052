"""This module contains SimplicialModule, a truncated simplicial vector space given by
face and degeneracy matrices, with its unnormalized and normalized chain complexes.
"""
from __future__ import annotations

import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from operadic.exactalg import ChainComplex, Direction, Field, Quotient, SparseMatrix
from operadic.exceptions import ComplexError

logger = logging.getLogger(__name__)


class SimplicialModule:
    """Levels 0..top with faces ∂_i: X_n -> X_{n-1} (0 ≤ i ≤ n) and degeneracies
    σ_i: X_n -> X_{n+1} (0 ≤ i ≤ n, n < top).
    """

    __slots__ = ("field", "names", "weights", "faces", "degeneracies", "name")

    def __init__(
        self,
        field: Field,
        names: Mapping[int, Sequence[str]],
        weights: Mapping[int, Sequence[int]],
        faces: Mapping[Tuple[int, int], SparseMatrix],
        degeneracies: Mapping[Tuple[int, int], SparseMatrix],
        name: str = "X",
    ):
        """
        :raises ComplexError: If a face or degeneracy is missing or has the wrong shape.
        """
        self.field = field
        self.names: Dict[int, List[str]] = {n: list(v) for n, v in names.items()}
        self.weights: Dict[int, List[int]] = {n: list(v) for n, v in weights.items()}
        self.faces = dict(faces)
        self.degeneracies = dict(degeneracies)
        self.name = name
        for n in range(self.top + 1):
            for i in range(n + 1):
                if n and self._shape(self.faces, (n, i)) != (self.dim(n - 1), self.dim(n)):
                    raise ComplexError(f"{name}: face ∂_{i} at level {n} is missing or misshaped.")
                if n < self.top and self._shape(self.degeneracies, (n, i)) != (self.dim(n + 1), self.dim(n)):
                    raise ComplexError(f"{name}: degeneracy σ_{i} at level {n} is missing or misshaped.")

    @staticmethod
    def _shape(maps: Mapping[Tuple[int, int], SparseMatrix], key: Tuple[int, int]) -> Optional[Tuple[int, int]]:
        matrix = maps.get(key)
        return None if matrix is None else matrix.shape

    @property
    def top(self) -> int:
        return max(self.names, default=-1)

    def dim(self, n: int) -> int:
        return len(self.names.get(n, []))

    def dims(self) -> Dict[int, int]:
        return {n: self.dim(n) for n in range(self.top + 1)}

    def face(self, n: int, i: int) -> SparseMatrix:
        return self.faces[(n, i)]

    def degeneracy(self, n: int, i: int) -> SparseMatrix:
        return self.degeneracies[(n, i)]

    def weight_set(self) -> List[int]:
        return sorted({w for ws in self.weights.values() for w in ws})

    def identity_violations(self) -> List[str]:
        """The simplicial identities, checked as matrix identities at every level."""
        found = []
        d, s = self.face, self.degeneracy
        for n in range(2, self.top + 1):
            for j in range(n + 1):
                for i in range(j):
                    if d(n - 1, i) @ d(n, j) != d(n - 1, j - 1) @ d(n, i):
                        found.append(f"∂_{i}∂_{j} ≠ ∂_{j - 1}∂_{i} at level {n}")
        for n in range(self.top - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if s(n + 1, i) @ s(n, j) != s(n + 1, j + 1) @ s(n, i):
                        found.append(f"σ_{i}σ_{j} ≠ σ_{j + 1}σ_{i} at level {n}")
        for n in range(self.top):
            identity = SparseMatrix.identity(self.dim(n), self.field)
            for j in range(n + 1):
                for i in range(n + 2):
                    composite = d(n + 1, i) @ s(n, j)
                    if i < j:
                        expected = s(n - 1, j - 1) @ d(n, i)
                    elif i in (j, j + 1):
                        expected = identity
                    else:
                        expected = s(n - 1, j) @ d(n, i - 1)
                    if composite != expected:
                        found.append(f"∂_{i}σ_{j} fails at level {n}")
        return found

    def restricted(self, weight: int) -> SimplicialModule:
        """The weight component; faces and degeneracies preserve weights."""
        indices = {
            n: [k for k, w in enumerate(self.weights.get(n, [])) if w == weight]
            for n in range(self.top + 1)
        }
        faces = {(n, i): m.submatrix(indices[n - 1], indices[n]) for (n, i), m in self.faces.items()}
        degeneracies = {(n, i): m.submatrix(indices[n + 1], indices[n]) for (n, i), m in self.degeneracies.items()}
        names = {n: [self.names[n][k] for k in ks] for n, ks in indices.items()}
        weights = {n: [weight] * len(ks) for n, ks in indices.items()}
        return SimplicialModule(self.field, names, weights, faces, degeneracies, f"{self.name}[{weight}]")

    def differential(self, n: int) -> SparseMatrix:
        """Σ_i (-1)^i ∂_i at level n."""
        matrix = SparseMatrix.zeros((self.dim(n - 1), self.dim(n)), self.field)
        for i in range(n + 1):
            matrix = matrix + self.face(n, i).scale(self.field.sign(i))
        return matrix

    def unnormalized_complex(self, weight: Optional[int] = None) -> ChainComplex:
        """
        :raises ComplexError: If the alternating sum does not square to zero.
        """
        if weight is not None:
            return self.restricted(weight).unnormalized_complex()
        matrices = {n: self.differential(n) for n in range(1, self.top + 1)}
        return ChainComplex(self.dims(), matrices, self.field, Direction.CHAIN, self.names)

    def normalized_complex(self, weight: Optional[int] = None) -> ChainComplex:
        """The quotient by the degenerate subcomplex spanned by the images of the σ_i."""
        if weight is not None:
            return self.restricted(weight).normalized_complex()
        quotients: Dict[int, Quotient] = {}
        for n in range(self.top + 1):
            relations = []
            if n:
                for i in range(n):
                    relations.extend(self.degeneracy(n - 1, i).columns())
            quotients[n] = Quotient(self.dim(n), relations, self.field)
        matrices = {}
        for n in range(1, self.top + 1):
            differential = self.differential(n)
            columns = [quotients[n - 1].project(differential.column(b)) for b in quotients[n].basis]
            matrices[n] = SparseMatrix.from_columns(columns, len(quotients[n - 1]), self.field)
        dims = {n: len(q) for n, q in quotients.items()}
        names = {n: [self.names[n][b] for b in q.basis] for n, q in quotients.items()}
        logger.debug("Normalized complex of %s: %s", self.name, dims)
        return ChainComplex(dims, matrices, self.field, Direction.CHAIN, names)

    def __repr__(self) -> str:
        return f"SimplicialModule({self.name}, dims={self.dims()})"
