"""This module contains SigmaRep, a right action of a symmetric group on a finite
dimensional graded space, together with coinvariants and induction.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from operadic.exactalg import Field, GradedSpace, Quotient, SparseMatrix, block_diagonal
from operadic.exceptions import RepresentationError
from operadic.symcore.permutation import Permutation, all_permutations, shuffles

logger = logging.getLogger(__name__)


class SigmaRep:
    """Right Σ_n-action on k^dim with a homogeneous basis.

    The action is given by the matrices of the adjacent transpositions s_1, ...,
    s_{n-1}; v.σ is computed as act(σ) @ v, and act(στ) = act(τ) @ act(σ).
    """

    __slots__ = ("n", "field", "degrees", "_generators", "_cache")

    def __init__(
        self,
        n: int,
        degrees: Sequence[int],
        generators: Sequence[SparseMatrix],
        field: Field,
        check: bool = True,
    ):
        """
        :param n: The arity.
        :type n: int
        :param degrees: Homological degree of each basis vector.
        :type degrees: sequence of int
        :param generators: Matrices of s_1, ..., s_{n-1}.
        :type generators: sequence of SparseMatrix
        :param field: The scalar field.
        :type field: Field
        :param check: Whether to verify the Coxeter relations.
        :type check: bool
        """
        self.n = n
        self.field = field
        self.degrees: Tuple[int, ...] = tuple(degrees)
        self._generators: Tuple[SparseMatrix, ...] = tuple(generators)
        self._cache: Dict[Tuple[int, ...], SparseMatrix] = {}
        if len(self._generators) != max(n - 1, 0):
            raise RepresentationError(
                f"Arity {n} needs {max(n - 1, 0)} generator matrices, "
                f"got {len(self._generators)}."
            )
        for matrix in self._generators:
            if matrix.shape != (self.dim, self.dim):
                raise RepresentationError(
                    f"Generator of shape {matrix.shape} on a space of dim {self.dim}."
                )
        if check:
            self.check()

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def space(self) -> GradedSpace:
        dims: Dict[int, int] = {}
        for degree in self.degrees:
            dims[degree] = dims.get(degree, 0) + 1
        return GradedSpace(dims)

    def check(self) -> None:
        """Verifies the Coxeter presentation and degree preservation.

        :raises RepresentationError: If a relation fails.
        """
        identity = SparseMatrix.identity(self.dim, self.field)
        gens = self._generators
        for i, s in enumerate(gens):
            for row, col, _ in s.entries():
                if self.degrees[row] != self.degrees[col]:
                    raise RepresentationError(f"s_{i + 1} does not preserve degrees.")
            if s @ s != identity:
                raise RepresentationError(f"s_{i + 1} is not an involution.")
            if i + 1 < len(gens):
                braid = s @ gens[i + 1]
                if braid @ braid @ braid != identity:
                    raise RepresentationError(f"Braid relation fails at s_{i + 1}.")
            for j in range(i + 2, len(gens)):
                if s @ gens[j] != gens[j] @ s:
                    raise RepresentationError(
                        f"s_{i + 1} and s_{j + 1} do not commute."
                    )

    def generator(self, i: int) -> SparseMatrix:
        """Matrix of s_i, 1 <= i < n."""
        return self._generators[i - 1]

    def act(self, sigma: Permutation) -> SparseMatrix:
        """Matrix of v -> v.σ."""
        if sigma.n != self.n:
            raise RepresentationError(f"{sigma} does not act in arity {self.n}.")
        cached = self._cache.get(sigma.images)
        if cached is not None:
            return cached
        matrix = SparseMatrix.identity(self.dim, self.field)
        for i in sigma.reduced_word():
            matrix = self._generators[i - 1] @ matrix
        self._cache[sigma.images] = matrix
        return matrix

    def act_vector(self, sigma: Permutation, vector: Dict[int, Any]) -> Dict[int, Any]:
        if sigma.is_identity():
            return dict(vector)
        return self.act(sigma).apply(vector)

    @classmethod
    def zero(cls, n: int, field: Field) -> SigmaRep:
        return cls(n, [], [SparseMatrix.zeros((0, 0), field)] * max(n - 1, 0), field)

    @classmethod
    def trivial(cls, n: int, field: Field, degree: int = 0) -> SigmaRep:
        one = SparseMatrix.identity(1, field)
        return cls(n, [degree], [one] * max(n - 1, 0), field)

    @classmethod
    def sign(cls, n: int, field: Field, degree: int = 0) -> SigmaRep:
        minus = SparseMatrix.identity(1, field).scale(-field.one)
        return cls(n, [degree], [minus] * max(n - 1, 0), field)

    @classmethod
    def regular(cls, n: int, field: Field, degree: int = 0) -> SigmaRep:
        """Right regular representation: basis Σ_n in lexicographic order, e_π.σ = e_{πσ}."""
        elements = all_permutations(n)
        index = {p: k for k, p in enumerate(elements)}
        generators = []
        for i in range(1, n):
            s = Permutation.transposition(n, i)
            generators.append(
                SparseMatrix.from_entries(
                    ((index[p * s], k, field.one) for k, p in enumerate(elements)),
                    (len(elements), len(elements)),
                    field,
                )
            )
        return cls(n, [degree] * len(elements), generators, field)

    @classmethod
    def from_dense(
        cls,
        n: int,
        degrees: Sequence[int],
        generators: Sequence[Sequence[Sequence[Any]]],
        field: Field,
    ) -> SigmaRep:
        return cls(
            n, degrees, [SparseMatrix.from_dense(g, field) for g in generators], field
        )

    def direct_sum(self, other: SigmaRep) -> SigmaRep:
        if other.n != self.n:
            raise RepresentationError("Direct sum of different arities.")
        generators = [
            block_diagonal([a, b], self.field)
            for a, b in zip(self._generators, other._generators)
        ]
        return SigmaRep(self.n, self.degrees + other.degrees, generators, self.field, check=False)

    def __repr__(self) -> str:
        return f"SigmaRep(n={self.n}, dim={self.dim})"


@dataclass(frozen=True)
class Coinvariants:
    """Result of taking Σ_n-coinvariants: the quotient space and its projection."""

    space: GradedSpace
    projection: SparseMatrix
    quotient: Quotient


def coinvariants(rep: SigmaRep, generators: Optional[Sequence[int]] = None) -> Coinvariants:
    """Quotient of rep by span{x - x.s_i}.

    :param rep: The representation.
    :type rep: SigmaRep
    :param generators: Restrict to the subgroup generated by these s_i; all of Σ_n
        when omitted.
    :type generators: sequence of int, optional
    :raises CharacteristicError: If the field characteristic divides n!.
    """
    rep.field.check_arity(rep.n)
    indices = range(1, rep.n) if generators is None else generators
    identity = SparseMatrix.identity(rep.dim, rep.field)
    relations: List[Dict[int, Any]] = []
    for i in indices:
        relations.extend(c for c in (identity - rep.generator(i)).columns() if c)
    quotient = Quotient(rep.dim, relations, rep.field)
    dims: Dict[int, int] = {}
    for index in quotient.basis:
        degree = rep.degrees[index]
        dims[degree] = dims.get(degree, 0) + 1
    return Coinvariants(GradedSpace(dims), quotient.projection_matrix(), quotient)


class InducedRep(SigmaRep):
    """Ind from Σ_{i_1} x ... x Σ_{i_k} to Σ_r of a tensor product.

    Basis elements are pairs (σ, (v_1, ..., v_k)) with σ an (i_1, ..., i_k)-shuffle
    (the block j inputs carry the letters σ(block j)) and v_j basis indices.
    """

    __slots__ = ("factors", "labels")

    def __init__(self, factors: Sequence[SigmaRep], r: int):
        if sum(f.n for f in factors) != r:
            raise RepresentationError(
                f"Arities {[f.n for f in factors]} do not add up to {r}."
            )
        field = factors[0].field if factors else None
        if field is None:
            raise RepresentationError("Induction needs at least one factor.")
        self.factors = tuple(factors)
        sizes = [f.n for f in factors]
        labels: List[Tuple[Permutation, Tuple[int, ...]]] = []
        degrees: List[int] = []
        for sigma in shuffles(*sizes):
            for vs in product(*(range(f.dim) for f in factors)):
                labels.append((sigma, vs))
                degrees.append(sum(f.degrees[v] for f, v in zip(factors, vs)))
        self.labels = labels
        position = {(s.images, vs): k for k, (s, vs) in enumerate(labels)}
        offsets = [sum(sizes[:j]) for j in range(len(sizes))]

        def block_of(sigma: Permutation, letter: int) -> Tuple[int, int]:
            slot = sigma.inverse()(letter)
            for j in reversed(range(len(sizes))):
                if slot > offsets[j]:
                    return j, slot - offsets[j]
            raise RepresentationError("letter outside every block")

        generators = []
        for i in range(1, r):
            entries = []
            for k, (sigma, vs) in enumerate(labels):
                (j1, a1), (j2, a2) = block_of(sigma, i), block_of(sigma, i + 1)
                swapped = Permutation.transposition(r, i) * sigma
                if j1 != j2:
                    entries.append((position[(swapped.images, vs)], k, field.one))
                    continue
                # i and i + 1 are consecutive inputs a1, a1 + 1 of the same block.
                local = factors[j1].generator(a1).column(vs[j1])
                for w, value in local.items():
                    new_vs = vs[:j1] + (w,) + vs[j1 + 1 :]
                    entries.append((position[(sigma.images, new_vs)], k, value))
            generators.append(
                SparseMatrix.from_entries(entries, (len(labels), len(labels)), field)
            )
        super().__init__(r, degrees, generators, field, check=False)


def induce(reps: Sequence[SigmaRep], r: int) -> InducedRep:
    """Induced representation Ind^{Σ_r}_{Σ_{i_1} x ... x Σ_{i_k}}(V_1 ⊗ ... ⊗ V_k)."""
    return InducedRep(reps, r)
