"""This module defines truncated operads: the abstract interface, free operads on
reduced Σ*-objects and quotients of free operads by operadic ideals.
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from itertools import combinations
from typing import Any, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from operadic.exactalg import Quotient, SparseMatrix, Subspace, Vector, add_to
from operadic.exceptions import PresentationError, ShapeError
from operadic.operad_core.sigma_object import SigmaObject
from operadic.operad_core.trees import DecoratedTrees, Tree, leaves, weight
from operadic.symcore import Permutation, SigmaRep, all_permutations

logger = logging.getLogger(__name__)


class TruncatedOperad(ABC):
    """An operad known in arities 1..max_arity through bases, Σ-actions and partial
    compositions.

    Elements are sparse vectors over the basis of their arity component. Partial
    compositions are shuffle compositions: ``compose_shuffle(p, r, q, s, letters)``
    inserts q at the input of p determined by min(letters), the inputs of q receiving
    the given letters.
    """

    def __init__(self, name: str, field, max_arity: int):
        if max_arity < 1:
            raise ShapeError("max_arity must be at least 1.")
        self.name = name
        self.field = field
        self.max_arity = max_arity
        self._actions: Dict[Any, SparseMatrix] = {}
        self._reps: Dict[int, SigmaRep] = {}

    @abstractmethod
    def basis(self, n: int) -> List[Hashable]:
        """Labels of the basis of the arity n component."""

    @abstractmethod
    def degree(self, n: int, index: int) -> int:
        pass

    @abstractmethod
    def weight(self, n: int, index: int) -> int:
        pass

    @abstractmethod
    def compose_basis(self, r: int, x: int, s: int, y: int, letters: Sequence[int]) -> Vector:
        """Shuffle composition of two basis elements."""

    @abstractmethod
    def act_basis(self, n: int, x: int, sigma: Permutation) -> Vector:
        pass

    def render(self, n: int, index: int) -> str:
        return str(self.basis(n)[index])

    def dim(self, n: int) -> int:
        if n < 1 or n > self.max_arity:
            return 0
        return len(self.basis(n))

    def dims(self) -> Dict[int, int]:
        return {n: self.dim(n) for n in range(1, self.max_arity + 1)}

    @property
    def unit(self) -> Vector:
        return {0: self.field.one}

    def differential(self, n: int) -> Optional[SparseMatrix]:
        """Internal differential on the arity n component, None when it vanishes."""
        return None

    def compose_shuffle(
        self, p: Mapping[int, Any], r: int, q: Mapping[int, Any], s: int, letters: Sequence[int]
    ) -> Vector:
        if r + s - 1 > self.max_arity:
            raise ShapeError(f"Composite of arity {r + s - 1} exceeds the bound {self.max_arity}.")
        result: Vector = {}
        for x, cx in p.items():
            for y, cy in q.items():
                for index, value in self.compose_basis(r, x, s, y, letters).items():
                    add_to(result, index, cx * cy * value)
        return result

    def compose(self, p: Mapping[int, Any], r: int, i: int, q: Mapping[int, Any], s: int) -> Vector:
        """Positional partial composition p ∘_i q."""
        return self.compose_shuffle(p, r, q, s, range(i, i + s))

    def compose_full(
        self,
        x: Mapping[int, Any],
        k: int,
        pieces: Sequence[Tuple[Sequence[int], Mapping[int, Any]]],
    ) -> Vector:
        """γ(x; q_1, ..., q_k) where the inputs of q_j carry the letters pieces[j][0]
        (in increasing order) and all the letters together are 1..n.

        Computed as (..((x ∘_1 q_1) ∘_{1+|q_1|} q_2)..) followed by the relabelling of
        the consecutive inputs to the given letters.
        """
        current: Vector = dict(x)
        arity = k
        position = 1
        order: List[int] = []
        for letters, q in pieces:
            size = len(letters)
            if not current or not q:
                return {}
            current = self.compose(current, arity, position, q, size)
            position += size
            arity += size - 1
            order.extend(letters)
        if not order:
            return current
        return self.act_vector(arity, current, Permutation(order).inverse())

    def compose_matrix(self, r: int, s: int, i: int) -> SparseMatrix:
        """Matrix of ∘_i from P(r) ⊗ P(s), column x * dim(s) + y, to P(r + s - 1)."""
        ds = self.dim(s)
        columns = []
        for x in range(self.dim(r)):
            for y in range(ds):
                columns.append(self.compose_basis(r, x, s, y, range(i, i + s)))
        return SparseMatrix.from_columns(columns, self.dim(r + s - 1), self.field)

    def act(self, n: int, sigma: Permutation) -> SparseMatrix:
        key = (n, sigma.images)
        cached = self._actions.get(key)
        if cached is None:
            columns = [self.act_basis(n, x, sigma) for x in range(self.dim(n))]
            cached = SparseMatrix.from_columns(columns, self.dim(n), self.field)
            self._actions[key] = cached
        return cached

    def act_vector(self, n: int, vector: Mapping[int, Any], sigma: Permutation) -> Vector:
        if sigma.is_identity():
            return dict(vector)
        return self.act(n, sigma).apply(vector)

    def sigma_rep(self, n: int) -> SigmaRep:
        rep = self._reps.get(n)
        if rep is None:
            generators = [self.act(n, Permutation.transposition(n, i)) for i in range(1, n)]
            degrees = [self.degree(n, x) for x in range(self.dim(n))]
            rep = SigmaRep(n, degrees, generators, self.field, check=False)
            self._reps[n] = rep
        return rep

    def check_axioms(self, max_arity: Optional[int] = None) -> List[str]:
        """Verifies unit, associativity and equivariance on basis elements.

        :param max_arity: Largest arity involved; defaults to the truncation.
        :type max_arity: int, optional
        :return: Descriptions of the failed identities, empty when all hold.
        :rtype: list of str
        """
        bound = min(max_arity or self.max_arity, self.max_arity)
        failures: List[str] = []
        one = self.field.one
        for n in range(1, bound + 1):
            rep_failures = _coxeter_failures(self.sigma_rep(n))
            failures.extend(f"arity {n}: {f}" for f in rep_failures)
            for x in range(self.dim(n)):
                element = {x: one}
                for i in range(1, n + 1):
                    if self.compose(element, n, i, self.unit, 1) != element:
                        failures.append(f"right unit fails on {self.render(n, x)} at {i}")
                if self.compose(self.unit, 1, 1, element, n) != element:
                    failures.append(f"left unit fails on {self.render(n, x)}")
        for r in range(2, bound + 1):
            for s in range(2, bound - r + 2):
                for t in range(2, bound - r - s + 3):
                    failures.extend(self._associativity_failures(r, s, t))
        for r in range(2, bound + 1):
            for s in range(2, bound - r + 2):
                failures.extend(self._equivariance_failures(r, s))
        for failure in failures:
            logger.debug("%s: %s", self.name, failure)
        return failures

    def _associativity_failures(self, r: int, s: int, t: int) -> List[str]:
        one = self.field.one
        failures = []
        for x in range(self.dim(r)):
            for y in range(self.dim(s)):
                for z in range(self.dim(t)):
                    X, Y, Z = {x: one}, {y: one}, {z: one}
                    sign = self.field.sign(self.degree(s, y) * self.degree(t, z))
                    for i in range(1, r + 1):
                        xy = self.compose(X, r, i, Y, s)
                        for j in range(1, s + 1):
                            left = self.compose(xy, r + s - 1, i + j - 1, Z, t)
                            right = self.compose(X, r, i, self.compose(Y, s, j, Z, t), s + t - 1)
                            if left != right:
                                failures.append(f"sequential associativity fails at ({r},{s},{t};{i},{j})")
                        for k in range(i + 1, r + 1):
                            left = self.compose(xy, r + s - 1, k + s - 1, Z, t)
                            xz = self.compose(X, r, k, Z, t)
                            right = self.compose(xz, r + t - 1, i, Y, s)
                            right = {key: sign * value for key, value in right.items()}
                            if left != right:
                                failures.append(f"parallel associativity fails at ({r},{s},{t};{i},{k})")
        return failures

    def _equivariance_failures(self, r: int, s: int) -> List[str]:
        one = self.field.one
        failures = []
        n = r + s - 1
        for x in range(self.dim(r)):
            for y in range(self.dim(s)):
                X, Y = {x: one}, {y: one}
                for i in range(1, r + 1):
                    xy = self.compose(X, r, i, Y, s)
                    for tau in all_permutations(s):
                        left = self.compose(X, r, i, self.act_vector(s, Y, tau), s)
                        right = self.act_vector(n, xy, block_permutation(Permutation.identity(r), i, tau))
                        if left != right:
                            failures.append(f"inner equivariance fails at ({r},{s};{i};{tau})")
                    for rho in all_permutations(r):
                        left = self.compose(self.act_vector(r, X, rho), r, i, Y, s)
                        moved = self.compose(X, r, rho(i), Y, s)
                        right = self.act_vector(n, moved, block_permutation(rho, i, Permutation.identity(s)))
                        if left != right:
                            failures.append(f"outer equivariance fails at ({r},{s};{i};{rho})")
        return failures


def block_permutation(rho: Permutation, i: int, tau: Permutation) -> Permutation:
    """The permutation ρ̃ of r + s - 1 letters with (x ∘_{ρ(i)} y).ρ̃ = (x.ρ) ∘_i y when
    τ is the identity, and (x ∘_i y).ρ̃ = x ∘_i (y.τ) when ρ is the identity.
    """
    r, s = rho.n, tau.n
    n = r + s - 1
    target = rho(i)
    inverse_images = [0] * n
    rho_inverse = rho.inverse()

    def outer_position(m: int, grafted_at: int) -> int:
        return m if m < grafted_at else m + s - 1

    for m in range(1, r + 1):
        if m == target:
            continue
        inverse_images[outer_position(m, target) - 1] = outer_position(rho_inverse(m), i)
    tau_inverse = tau.inverse()
    for l in range(1, s + 1):
        inverse_images[target - 1 + l - 1] = i - 1 + tau_inverse(l)
    return Permutation(inverse_images).inverse()


def _coxeter_failures(rep: SigmaRep) -> List[str]:
    try:
        rep.check()
    except Exception as error:
        return [str(error)]
    return []


class TreeOperad(TruncatedOperad):
    """Shared machinery of operads whose basis consists of normal decorated trees."""

    def __init__(self, generators: SigmaObject, max_arity: int, name: str):
        super().__init__(name, generators.field, max_arity)
        self.generators = generators
        self.trees = DecoratedTrees(generators)
        self._index: Dict[int, Dict[Tree, int]] = {}
        self._compositions: Dict[Any, Vector] = {}

    @abstractmethod
    def reduce(self, n: int, combination: Mapping[Tree, Any]) -> Vector:
        """Coordinates of a combination of normal trees."""

    def index(self, n: int) -> Dict[Tree, int]:
        cached = self._index.get(n)
        if cached is None:
            cached = {t: k for k, t in enumerate(self.basis(n))}
            self._index[n] = cached
        return cached

    def degree(self, n: int, index: int) -> int:
        return self.trees.degree(self.basis(n)[index])

    def weight(self, n: int, index: int) -> int:
        return weight(self.basis(n)[index])

    def render(self, n: int, index: int) -> str:
        return self.trees.render(self.basis(n)[index])

    def element(self, n: int, vector: Mapping[int, Any]) -> Dict[Tree, Any]:
        basis = self.basis(n)
        return {basis[k]: value for k, value in vector.items() if value}

    def compose_basis(self, r: int, x: int, s: int, y: int, letters: Sequence[int]) -> Vector:
        key = (r, x, s, y, tuple(letters))
        cached = self._compositions.get(key)
        if cached is None:
            grafted = self.trees.compose_shuffle(self.basis(r)[x], self.basis(s)[y], letters)
            cached = self.reduce(r + s - 1, grafted)
            self._compositions[key] = cached
        return cached

    def act_basis(self, n: int, x: int, sigma: Permutation) -> Vector:
        return self.reduce(n, self.trees.act(self.basis(n)[x], sigma))


class FreeOperad(TreeOperad):
    """The free operad 𝖥(E) on a reduced Σ*-object, truncated at max_arity.

    Its arity n component has the normal trees with leaves 1..n as basis; the weight
    of a tree is its number of vertices.
    """

    def basis(self, n: int) -> List[Tree]:
        if n < 1 or n > self.max_arity:
            return []
        return self.trees.basis(n)

    def reduce(self, n: int, combination: Mapping[Tree, Any]) -> Vector:
        index = self.index(n)
        result: Vector = {}
        for tree, value in combination.items():
            add_to(result, index[tree], value)
        return result


def free_operad(generators: SigmaObject, max_arity: int, name: str = "free") -> FreeOperad:
    """The truncated free operad on a reduced Σ*-object.

    :raises PresentationError: If the generators are not reduced.
    """
    return FreeOperad(generators, max_arity, name)


class QuotientOperad(TreeOperad):
    """𝖥(E)/(R): the free operad modulo the operadic ideal generated by relations.

    The ideal is built arity by arity: in arity n it is spanned by the Σ-closure of the
    arity n relations, the composites x ∘_S g and g ∘_S x for x in the ideal of a
    lower arity and g a generator, which already form a Σ-stable span.
    """

    def __init__(
        self,
        generators: SigmaObject,
        relations: Sequence[Mapping[Tree, Any]],
        max_arity: int,
        name: str = "quotient",
    ):
        super().__init__(generators, max_arity, name)
        self.free = FreeOperad(generators, max_arity, name=f"free({name})")
        self.relations = [self.trees.normalize_combination(r) for r in relations]
        self.ideals: Dict[int, Subspace] = {}
        self.quotients: Dict[int, Quotient] = {}
        self._bases: Dict[int, List[Tree]] = {}
        for relation in self.relations:
            arities = {len(leaves(t)) for t in relation}
            if len(arities) > 1:
                raise PresentationError("A relation mixes several arities.")
        for n in range(1, max_arity + 1):
            self._build(n)

    def _relations_in(self, n: int) -> List[Vector]:
        index = self.free.index(n)
        vectors = []
        for relation in self.relations:
            if relation and len(leaves(next(iter(relation)))) == n:
                vectors.append({index[t]: v for t, v in relation.items()})
        return vectors

    def _build(self, n: int) -> None:
        free = self.free
        dim = free.dim(n)
        rows = sigma_closure(free, n, self._relations_in(n))
        one = self.field.one
        for a in range(2, n):
            b = n - a + 1
            ideal = self.ideals.get(a)
            if ideal is not None and len(ideal) and self.generators.dim(b):
                for vector in ideal.basis:
                    for g in range(self.generators.dim(b)):
                        for letters in combinations(range(1, n + 1), b):
                            rows.append(free.compose_shuffle(vector, a, {self._corolla_index(b, g): one}, b, letters))
            ideal = self.ideals.get(b)
            if ideal is not None and len(ideal) and self.generators.dim(a):
                for g in range(self.generators.dim(a)):
                    for vector in ideal.basis:
                        for letters in combinations(range(1, n + 1), b):
                            rows.append(free.compose_shuffle({self._corolla_index(a, g): one}, a, vector, b, letters))
        self.ideals[n] = Subspace(rows, dim, self.field)
        self.quotients[n] = Quotient(dim, self.ideals[n].basis, self.field)
        free_basis = free.basis(n)
        self._bases[n] = [free_basis[i] for i in self.quotients[n].basis]
        logger.debug(
            "%s arity %d: free dim %d, ideal dim %d, quotient dim %d",
            self.name, n, dim, len(self.ideals[n]), len(self._bases[n]),
        )

    def _corolla_index(self, k: int, g: int) -> int:
        return self.free.index(k)[(k, g, tuple(range(1, k + 1)))]

    def basis(self, n: int) -> List[Tree]:
        if n < 1 or n > self.max_arity:
            return []
        return self._bases[n]

    def reduce(self, n: int, combination: Mapping[Tree, Any]) -> Vector:
        return self.quotients[n].project(self.free.reduce(n, combination))

    def lift(self, n: int, vector: Mapping[int, Any]) -> Vector:
        """Free-operad coordinates of the representative of a class."""
        return self.quotients[n].lift(vector)


def quotient_operad(
    generators: SigmaObject,
    relations: Sequence[Mapping[Tree, Any]],
    max_arity: int,
    name: str = "quotient",
) -> QuotientOperad:
    return QuotientOperad(generators, relations, max_arity, name)


def sigma_closure(operad: TruncatedOperad, n: int, vectors: Sequence[Mapping[int, Any]]) -> List[Vector]:
    """Echelon basis of the smallest Σ_n-stable subspace containing the vectors."""
    if not vectors or n < 2:
        return [dict(v) for v in vectors]
    span = Subspace(vectors, operad.dim(n), operad.field)
    while True:
        grown = list(span.basis)
        for i in range(1, n):
            action = operad.act(n, Permutation.transposition(n, i))
            grown.extend(action.apply(v) for v in span.basis)
        bigger = Subspace(grown, operad.dim(n), operad.field)
        if len(bigger) == len(span):
            return list(span.basis)
        span = bigger
