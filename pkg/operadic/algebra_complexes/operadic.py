"""This module contains the operadic chain complex C ∘_κ A and cochain complex
Hom(C ∘ A, M) of an algebra over a binary quadratic operad, C being the Koszul dual
cooperad and κ: C -> P the Koszul twisting morphism.

Degree n is C(n+1) ⊗_Σ A^{⊗(n+1)}. It is realized orbit by orbit: for each sorted
multi-index I of basis vectors of A, the coinvariants of C(n+1) under the stabilizer
of I. A label (I, c) stands for the class of c ⊗ a_{I_1} ⊗ ... ⊗ a_{I_{n+1}}, c being
a representative basis element of those coinvariants.
"""
from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Any, Dict, List, Optional, Tuple

from operadic.exactalg import ChainComplex, ComplexBuilder, Direction, SparseMatrix, Vector, add_to
from operadic.exceptions import AlgebraError, UnsupportedOperadError
from operadic.koszul_machine import TwistingMorphism, koszul_morphism
from operadic.operad_core import KoszulDualCooperad, OperadPresentation, QuotientOperad, koszul_dual_cooperad
from operadic.palgebra import PAlgebra, PModule, insertion, validate_algebra
from operadic.symcore import Coinvariants, Permutation, coinvariants

logger = logging.getLogger(__name__)

Label = Tuple[Tuple[int, ...], int]
CochainLabel = Tuple[Tuple[int, ...], int, int]


@lru_cache(None)
def koszul_data(
    presentation: OperadPresentation, max_arity: int
) -> Tuple[KoszulDualCooperad, QuotientOperad, TwistingMorphism]:
    """C = P^¡, P and κ: C -> P up to max_arity, memoized per presentation."""
    max_arity = max(max_arity, 2)
    cooperad = koszul_dual_cooperad(presentation, max_arity)
    operad = presentation.operad(max_arity)
    return cooperad, operad, koszul_morphism(cooperad, operad)


class OperadicChainComplex:
    """C^P_•(A) = C ∘_κ A in degrees 0..n_max, optionally restricted to one internal
    weight (the differential preserves weights).
    """

    def __init__(self, algebra: PAlgebra, n_max: int, weight: Optional[int] = None):
        """
        :param algebra: A valid algebra over a binary quadratic operad.
        :type algebra: PAlgebra
        :param n_max: Top degree.
        :type n_max: int
        :param weight: Keep only this internal weight.
        :type weight: int, optional
        :raises UnsupportedOperadError: If the operad is not binary.
        :raises AlgebraError: If the algebra is not valid.
        """
        presentation = algebra.presentation
        if not presentation.is_binary:
            raise UnsupportedOperadError(f"{presentation.name} is not a binary operad.")
        validation = validate_algebra(algebra)
        if not validation.valid:
            raise AlgebraError(f"{algebra.name} is not a valid algebra: {validation.violations[0]}")
        self.algebra = algebra
        self.field = algebra.field
        self.n_max = n_max
        self.weight = weight
        presentation.field.check_arity(n_max + 1)
        self.cooperad, self.operad, self.kappa = koszul_data(presentation, n_max + 1)
        self._coinvariants: Dict[Tuple[int, Tuple[int, ...]], Coinvariants] = {}

    def orbit(self, arity: int, indices: Tuple[int, ...]) -> Coinvariants:
        stabilizer = tuple(i for i in range(1, arity) if indices[i - 1] == indices[i])
        key = (arity, stabilizer)
        cached = self._coinvariants.get(key)
        if cached is None:
            cached = coinvariants(self.cooperad.sigma_rep(arity), stabilizer)
            self._coinvariants[key] = cached
        return cached

    def multi_indices(self, arity: int) -> List[Tuple[int, ...]]:
        weights = self.algebra.weights
        return [
            I for I in combinations_with_replacement(range(self.algebra.dim), arity)
            if self.weight is None or sum(weights[i] for i in I) == self.weight
        ]

    def basis(self, n: int) -> List[Label]:
        arity = n + 1
        labels: List[Label] = []
        for I in self.multi_indices(arity):
            labels.extend((I, c) for c in self.orbit(arity, I).quotient.basis)
        return labels

    def dims(self) -> Dict[int, int]:
        return {n: len(self.basis(n)) for n in range(self.n_max + 1)}

    def reduce(self, arity: int, element: Dict[int, Any], inputs: Tuple[int, ...]) -> Dict[Label, Any]:
        """The class of element ⊗ a_{inputs}, for inputs in any order."""
        order = sorted(range(arity), key=lambda k: inputs[k])
        ordered = tuple(inputs[k] for k in order)
        moved = self.cooperad.act(arity, Permutation([k + 1 for k in order])).apply(element)
        quotient = self.orbit(arity, ordered).quotient
        return {(ordered, quotient.basis[q]): v for q, v in quotient.project(moved).items()}

    def binary_value(self, l: int, first: int, second: int) -> Vector:
        """κ(l)(a_first, a_second) for l in C(2)."""
        image = self.kappa.image(2, l)
        if not image:
            return {}
        one = self.field.one
        return self.algebra.evaluate_combination(self.operad.element(2, image), [{first: one}, {second: one}])

    def merge_terms(self, label: Label, include_leaves: bool = False):
        """Terms of c ⊗ a_I where a binary lower piece l of c is evaluated through κ:
        yields (coefficient, upper arity, u, merged inputs).
        """
        I, c = label
        arity = len(I)
        one = self.field.one
        for a, u, b, l, letters, coefficient in self.cooperad.decompose(arity, c, include_root=True, include_leaves=include_leaves):
            if b != 2:
                continue
            s1, s2 = letters
            value = self.binary_value(l, I[s1 - 1], I[s2 - 1])
            if not value:
                continue
            sign = self.field.sign(self.cooperad.degree(a, u))
            kept = [x for x in range(1, arity + 1) if x != s2]
            for k, v in value.items():
                inputs = tuple(k if x == s1 else I[x - 1] for x in kept)
                for target, w in self.reduce(a, {u: one}, inputs).items():
                    yield target, coefficient * sign * v * w

    def differential(self, label: Label) -> Dict[Label, Any]:
        result: Dict[Label, Any] = {}
        for target, value in self.merge_terms(label):
            add_to(result, target, value)
        return result

    def render(self, label: Label) -> str:
        I, c = label
        names = ",".join(self.algebra.names[i] for i in I)
        return f"{self.cooperad.render(len(I), c)}⊗({names})"

    def complex(self, check: bool = True) -> ChainComplex:
        """
        :raises ComplexError: If d∘d does not vanish.
        """
        builder = ComplexBuilder(self.field)
        for n in range(self.n_max + 1):
            builder.extend((label, n) for label in self.basis(n))
        complex_ = builder.build(self.differential, render=self.render, check=check)
        logger.debug("Operadic chain complex of %s: %s", self.algebra.name, complex_)
        return complex_


def chain_complex(algebra: PAlgebra, n_max: int, weight: Optional[int] = None) -> ChainComplex:
    """C^P_•(A) in degrees 0..n_max.

    :raises UnsupportedOperadError: If the operad is not binary.
    :raises AlgebraError: If the algebra is not valid.
    """
    return OperadicChainComplex(algebra, n_max, weight).complex()


class OperadicCochainComplex:
    """C_P^•(A, M) = Hom(C ∘ A, M) with ∂_κ(g) = ∂(g) - (-1)^{|g|} g∘d in degrees
    0..n_max. A cochain label (I, c, m) is the map sending the class (I, c) to the basis
    vector m of M and the other classes to 0.
    """

    def __init__(self, algebra: PAlgebra, module: PModule, n_max: int, weight: Optional[int] = None):
        """
        :raises AlgebraError: If the module is over another algebra.
        """
        if module.algebra is not algebra:
            raise AlgebraError(f"{module.name} is not a module over {algebra.name}.")
        if module.exact_below is not None:
            raise AlgebraError(f"{module.name} is truncated; cochains need a finite module.")
        self.module = module
        self.weight = weight
        self.chains = OperadicChainComplex(algebra, n_max + 1)
        self.algebra = algebra
        self.field = algebra.field
        self.n_max = n_max

    def basis(self, n: int) -> List[CochainLabel]:
        labels = []
        for I, c in self.chains.basis(n):
            source_weight = sum(self.algebra.weights[i] for i in I)
            for m in range(self.module.dim):
                if self.weight is None or self.module.weights[m] - source_weight == self.weight:
                    labels.append((I, c, m))
        return labels

    def dims(self) -> Dict[int, int]:
        return {n: len(self.basis(n)) for n in range(self.n_max + 1)}

    def _insertions(self, u: int, argument: int, slot: int) -> SparseMatrix:
        matrix = SparseMatrix.zeros((self.module.dim, self.module.dim), self.field)
        image = self.chains.kappa.image(2, u)
        names = self.algebra.presentation.generators.names(2)
        for tree, value in self.chains.operad.element(2, image).items():
            moved = insertion(self.module, names[tree[1]], {argument: self.field.one}, slot)
            matrix = matrix + moved.scale(value)
        return matrix

    def evaluate_coboundary(self, label: Label) -> Dict[Tuple[Label, int], Dict[int, Any]]:
        """The linear form g -> (∂_κ g)(label), as {(class, m_in): {m_out: coefficient}}."""
        chains = self.chains
        cooperad = chains.cooperad
        field = self.field
        one = field.one
        I, c = label
        arity = len(I)
        n = arity - 2
        result: Dict[Tuple[Label, int], Dict[int, Any]] = {}
        # g applied after κ merges two inputs
        outer = -field.sign(n)
        for target, value in chains.merge_terms(label):
            for m in range(self.module.dim):
                add_to(result.setdefault((target, m), {}), m, outer * value)
        # κ applied after g, with the value of g at the input min(S) of a binary u
        for a, u, b, l, letters, coefficient in cooperad.decompose(arity, c, include_root=True, include_leaves=True):
            if a != 2 or b != arity - 1:
                continue
            x = next(y for y in range(1, arity + 1) if y not in letters)
            slot = 0 if letters[0] < x else 1
            matrix = self._insertions(u, I[x - 1], slot)
            if matrix.is_zero():
                continue
            sign = field.sign(n * cooperad.degree(2, u))
            inputs = tuple(I[s - 1] for s in letters)
            for target, w in chains.reduce(b, {l: one}, inputs).items():
                for m_in in range(self.module.dim):
                    for m_out, t in matrix.column(m_in).items():
                        add_to(result.setdefault((target, m_in), {}), m_out, coefficient * sign * w * t)
        return result

    def complex(self, check: bool = True) -> ChainComplex:
        """
        :raises ComplexError: If ∂_κ∘∂_κ does not vanish.
        """
        bases = {n: self.basis(n) for n in range(self.n_max + 1)}
        positions = {n: {label: k for k, label in enumerate(labels)} for n, labels in bases.items()}
        matrices: Dict[int, SparseMatrix] = {}
        for n in range(self.n_max):
            entries = []
            for I, c in self.chains.basis(n + 1):
                for ((J, c2), m_in), row in self.evaluate_coboundary((I, c)).items():
                    column = positions[n].get((J, c2, m_in))
                    if column is None:
                        continue
                    for m_out, value in row.items():
                        target = positions[n + 1].get((I, c, m_out))
                        if target is not None and value:
                            entries.append((target, column, value))
            shape = (len(bases[n + 1]), len(bases[n]))
            matrices[n] = SparseMatrix.from_entries(entries, shape, self.field)
        names = {n: [self._render(label) for label in labels] for n, labels in bases.items()}
        dims = {n: len(labels) for n, labels in bases.items()}
        complex_ = ChainComplex(dims, matrices, self.field, Direction.COCHAIN, names, check=check)
        logger.debug("Operadic cochain complex of %s in %s: %s", self.algebra.name, self.module.name, complex_)
        return complex_

    def _render(self, label: CochainLabel) -> str:
        I, c, m = label
        return f"[{self.chains.render((I, c))} -> {self.module.names[m]}]"


def cochain_complex(algebra: PAlgebra, module: PModule, n_max: int, weight: Optional[int] = None) -> ChainComplex:
    """C_P^•(A, M) in degrees 0..n_max.

    :raises AlgebraError: If the module does not belong to the algebra.
    """
    return OperadicCochainComplex(algebra, module, n_max, weight).complex()
