"""This module contains relative homology and cohomology of A over B, and the
comparison of relative homology over the zero algebra with operadic homology.

Degree n of M ⊗_{U(A)} BD(A, B, X) is M ⊗_{U(A)} T^{n+1} X ≅ M ⊗_{U(B)} T^n X: a class
m ⊗ (c ⊗ x) becomes (m · c) ⊗ x. Each degree is computed as a quotient of M ⊗ T^n X by
the relations (m · b) ⊗ x - m ⊗ (b · x), weight by weight.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import Any, Dict, List, Optional, Tuple

from operadic.algebra_complexes import OperadicChainComplex
from operadic.exactalg import ChainComplex, Direction, GradedSpace, Quotient, SparseMatrix, Vector, add_to
from operadic.exceptions import ModuleError
from operadic.palgebra import AlgebraMorphism, PAlgebra, PModule, RightModule, adjoint_module, kahler
from operadic.palgebra.enveloping import envelope
from operadic.relhom.bar import RelativeBar, bar_simplicial, module_margin
from operadic.relhom.cotriple import TruncationMode, cotriple_from_adjunction

logger = logging.getLogger(__name__)


@dataclass
class RelativeHomology:
    """Dimensions per weight and degree; degrees above certified are unverified."""

    source: str
    target: str
    coefficients: str
    n_max: int
    certified: int
    mode: str
    bound: Optional[int]
    dims: Dict[int, Dict[int, int]] = dataclass_field(default_factory=dict)
    cohomological: bool = False

    @property
    def unverified(self) -> List[int]:
        return [n for n in range(self.n_max + 1) if n > self.certified]

    def total(self, n: int) -> int:
        return sum(by_degree.get(n, 0) for by_degree in self.dims.values())

    @property
    def space(self) -> GradedSpace:
        """Certified total dimensions."""
        return GradedSpace({n: self.total(n) for n in range(self.certified + 1)})

    def as_dict(self) -> Dict[str, Any]:
        return {
            "kind": "cohomology" if self.cohomological else "homology",
            "source": self.source,
            "target": self.target,
            "coefficients": self.coefficients,
            "n_max": self.n_max,
            "certified_through": self.certified,
            "unverified": self.unverified,
            "truncation": self.mode,
            "bound": self.bound,
            "dims": {str(w): {str(n): d for n, d in sorted(v.items())} for w, v in sorted(self.dims.items())},
            "totals": {str(n): self.total(n) for n in range(self.n_max + 1)},
        }


class RelativeChains:
    """M ⊗_{U(A)} BD(A, B, X) from a relative bar object and a right module M."""

    def __init__(self, bar: RelativeBar, coefficients: RightModule):
        """
        :raises ModuleError: If M is not a right module over A.
        """
        cotriple = bar.cotriple
        if coefficients.algebra is not cotriple.target:
            raise ModuleError(f"{coefficients.name} is not a module over {cotriple.target.name}.")
        self.bar = bar
        self.coefficients = coefficients
        self.cotriple = cotriple
        self.field = cotriple.field
        self.n_max = bar.simplicial.top
        # in PBW mode only total filtration up to the bound is exact; the differential never raises it
        self.cap = cotriple.bound if cotriple.mode is TruncationMode.PBW else None
        self._differentials: Dict[int, SparseMatrix] = {}
        self._quotients: Dict[Tuple[int, int, bool], Tuple[List[Tuple[int, int]], Dict[Tuple[int, int], int], Quotient]] = {}
        morphism = cotriple.morphism
        source = envelope(morphism.source)
        # B letters acting through f on M (right) and on the levels (left)
        self._letters = [
            (morphism.source.weights[k], {(tag, j): v for j, v in morphism.image(k).items()})
            for tag, k in source.letters()
        ]

    def _differential(self, n: int) -> SparseMatrix:
        cached = self._differentials.get(n)
        if cached is None:
            cached = self._differentials[n] = self.bar.simplicial.differential(n)
        return cached

    def _pairs(self, n: int, weight: int) -> List[Tuple[int, int]]:
        """Basis of M ⊗ T^n X in one weight."""
        inner = self.bar.levels[n]
        return [
            (m, q) for m, q in product(range(self.coefficients.dim), range(inner.dim))
            if self.coefficients.weights[m] + inner.weights[q] == weight
            and (self.cap is None or inner.filtration[q] <= self.cap)
        ]

    def _start(self, n: int, q: int) -> Optional[int]:
        """Index of 1 ⊗ q in levels[n + 1], for q in levels[n]."""
        upper = self.cotriple.apply(self.bar.levels[n])
        return upper.position.get((upper.factorization.unit, q))

    def _descend(self, n: int, m: int, vector: Vector, position: Dict[Tuple[int, int], int]) -> Vector:
        """m ⊗ vector, vector in levels[n], rewritten on the pairs of M ⊗ levels[n - 1]."""
        application = self.cotriple.apply(self.bar.levels[n - 1])
        one = self.field.one
        image: Vector = {}
        for target, value in vector.items():
            key, x = application.pairs[target]
            word = application.factorization.complement_word(key)
            for m2, v in self.coefficients.act_word(word, {m: one}).items():
                p = position.get((m2, x))
                if p is not None:
                    add_to(image, p, value * v)
        return image

    def _quotient(self, n: int, weight: int, normalized: bool) -> Tuple[List[Tuple[int, int]], Dict[Tuple[int, int], int], Quotient]:
        cached = self._quotients.get((n, weight, normalized))
        if cached is not None:
            return cached
        pairs = self._pairs(n, weight)
        position = {pair: k for k, pair in enumerate(pairs)}
        inner = self.bar.levels[n]
        one = self.field.one
        relations: List[Vector] = []
        for shift, image in self._letters:
            for m, q in self._pairs(n, weight - shift):
                relation: Vector = {}
                for letter, v in image.items():
                    for m2, value in self.coefficients.act(letter, {m: one}).items():
                        p = position.get((m2, q))
                        if p is not None:
                            add_to(relation, p, v * value)
                    for q2, value in inner.act(letter, {q: one}).items():
                        p = position.get((m, q2))
                        if p is not None:
                            add_to(relation, p, -v * value)
                if relation:
                    relations.append(relation)
        if normalized and n:
            # images of σ_i: BD_{n-1} -> BD_n, i = 0..n-1
            degeneracies = [self.bar.simplicial.degeneracy(n - 1, i) for i in range(n)]
            for m, q in self._pairs(n - 1, weight):
                start = self._start(n - 1, q)
                if start is None:
                    continue
                for degeneracy in degeneracies:
                    relation = self._descend(n + 1, m, degeneracy.column(start), position)
                    if relation:
                        relations.append(relation)
        cached = self._quotients[(n, weight, normalized)] = (pairs, position, Quotient(len(pairs), relations, self.field))
        return cached

    def complex(self, weight: int, normalized: bool = False) -> ChainComplex:
        """The weight component in degrees 0..n_max, optionally modulo the degenerate
        subcomplex.
        """
        quotients = {n: self._quotient(n, weight, normalized) for n in range(self.n_max + 1)}
        matrices: Dict[int, SparseMatrix] = {}
        for n in range(1, self.n_max + 1):
            pairs, _, quotient = quotients[n]
            _, lower_position, lower = quotients[n - 1]
            differential = self._differential(n)
            columns = []
            for b in quotient.basis:
                m, q = pairs[b]
                start = self._start(n, q)
                image: Vector = {}
                if start is not None:
                    image = self._descend(n, m, differential.column(start), lower_position)
                columns.append(lower.project(image))
            matrices[n] = SparseMatrix.from_columns(columns, len(lower), self.field)
        dims = {n: len(q[2]) for n, q in quotients.items()}
        return ChainComplex(dims, matrices, self.field, Direction.CHAIN)

    def weights(self) -> List[int]:
        """Weights carried by some degree."""
        return sorted({w + v for w in self.coefficients.weights for level in self.bar.levels[: self.n_max + 1] for v in level.weights})


def _certified(bar: RelativeBar, n_max: int) -> int:
    certified = n_max - 1
    if bar.cotriple.mode is TruncationMode.PBW:
        certified = min(certified, bar.cotriple.bound - 2)
    return certified


def relative_homology(
    morphism: AlgebraMorphism,
    coefficients: RightModule,
    n_max: int,
    resolved: Optional[PModule] = None,
    pbw_bound: Optional[int] = None,
    max_weight: Optional[int] = None,
) -> RelativeHomology:
    """H_n(M ⊗_{U(A)} BD(A, B, X)) per weight, X being A itself unless given.

    :param morphism: f: B -> A.
    :type morphism: AlgebraMorphism
    :param coefficients: M, a right module over A.
    :type coefficients: RightModule
    :param n_max: Top degree computed; degree n_max itself is reported unverified.
    :type n_max: int
    :param resolved: X, the module resolved by the bar object.
    :type resolved: PModule, optional
    :param pbw_bound: Explicit PBW bound.
    :type pbw_bound: int, optional
    :param max_weight: Weight window.
    :type max_weight: int, optional
    :rtype: RelativeHomology
    :raises TruncationError: If the weights do not bound the levels and no PBW bound is
        given; the message names the offending generator.
    """
    target = morphism.target
    resolved = resolved if resolved is not None else adjoint_module(target)
    cotriple = cotriple_from_adjunction(morphism, pbw_bound, max_weight, module_margin(resolved, coefficients))
    bar = bar_simplicial(morphism, resolved, n_max, cotriple=cotriple)
    chains = RelativeChains(bar, coefficients)
    weights = chains.weights()
    result = RelativeHomology(
        morphism.source.name, target.name, coefficients.name, n_max, _certified(bar, n_max),
        cotriple.mode.name.lower(), cotriple.bound,
    )
    for weight in weights:
        if not cotriple.in_window(weight):
            continue
        betti = chains.complex(weight).betti()
        by_degree = {n: betti.dim(n) for n in range(n_max + 1) if betti.dim(n)}
        if by_degree:
            result.dims[weight] = by_degree
    logger.info(
        "Relative homology of %s over %s with %s: %s",
        target.name, morphism.source.name, coefficients.name,
        {n: result.total(n) for n in range(n_max + 1)},
    )
    return result


def relative_cohomology(
    morphism: AlgebraMorphism,
    module: PModule,
    n_max: int,
    resolved: Optional[PModule] = None,
    pbw_bound: Optional[int] = None,
    max_weight: Optional[int] = None,
) -> RelativeHomology:
    """H^n(Hom_{U(A)}(BD(A, B, X), N)) per weight.

    Each degree is finite-dimensional per weight, so the cochain complex is the dual of
    N* ⊗_{U(A)} BD(A, B, X): cohomology in weight w has the dimension of homology with
    coefficients in N* in weight -w.

    :raises ModuleError: If N is truncated.
    """
    dual = RightModule.dual_of(module)
    homology = relative_homology(morphism, dual, n_max, resolved, pbw_bound, max_weight)
    homology.dims = {-w: by_degree for w, by_degree in homology.dims.items()}
    homology.coefficients = module.name
    homology.cohomological = True
    return homology


@dataclass
class KoszulComparison:
    """Relative homology over the zero algebra next to operadic homology."""

    algebra: str
    tag: str
    n_max: int
    certified: int
    relative: Dict[int, int]
    operadic: Dict[int, int]
    reading: str

    @property
    def mismatches(self) -> List[str]:
        return [
            f"degree {n}: relative {self.relative.get(n, 0)}, operadic {self.operadic.get(n, 0)}"
            for n in range(self.certified + 1)
            if self.relative.get(n, 0) != self.operadic.get(n, 0)
        ]

    @property
    def agrees(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra,
            "operad": self.tag,
            "n_max": self.n_max,
            "compared_through": self.certified,
            "degree_shift": "n_relative = n_operadic",
            "relative": {str(n): v for n, v in self.relative.items()},
            "operadic": {str(n): v for n, v in self.operadic.items()},
            "trivial_algebra": self.reading,
            "agrees": self.agrees,
            "mismatches": self.mismatches,
        }


READINGS = {
    "lie": "zero Lie algebra, U = k",
    "com": "zero algebra, U = k; read as the trivial commutative algebra",
    "asc": "zero algebra, U = k; read as the trivial associative algebra",
}


def compare_with_koszul(
    algebra: PAlgebra,
    n_max: int,
    pbw_bound: Optional[int] = None,
    max_weight: Optional[int] = None,
) -> KoszulComparison:
    """Relative homology of A over the zero algebra with trivial coefficients, resolving
    the Kähler differentials Ω_A, against the homology of C ∘_κ A; both in degrees up
    to n_max - 1, weight by weight inside the window.

    :rtype: KoszulComparison
    :raises TruncationError: If the weights do not bound the levels and no PBW bound is
        given.
    """
    morphism = AlgebraMorphism.from_zero(algebra)
    cotriple = cotriple_from_adjunction(morphism, pbw_bound, max_weight, 0)
    omega_bound = cotriple.bound + 1 if cotriple.bound is not None else None
    omega = kahler(algebra, omega_bound)
    trivial = RightModule.trivial(algebra)
    bar = bar_simplicial(morphism, omega, n_max, cotriple=cotriple)
    chains = RelativeChains(bar, trivial)
    certified = _certified(bar, n_max)
    relative: Dict[int, int] = {}
    operadic: Dict[int, int] = {}
    weights = sorted({w for level in bar.levels for w in level.weights} | {
        sum(c) for n in range(n_max + 1) for c in product(algebra.weights, repeat=n + 1)
    })
    for weight in weights:
        if not cotriple.in_window(weight):
            continue
        betti = chains.complex(weight).betti()
        operadic_betti = OperadicChainComplex(algebra, n_max, weight=weight).complex().betti()
        for n in range(certified + 1):
            relative[n] = relative.get(n, 0) + betti.dim(n)
            operadic[n] = operadic.get(n, 0) + operadic_betti.dim(n)
    comparison = KoszulComparison(
        algebra.name, str(algebra.tag), n_max, certified, relative, operadic, READINGS.get(str(algebra.tag), "zero algebra"),
    )
    if comparison.agrees:
        logger.info("Relative and operadic homology of %s agree through degree %d", algebra.name, certified)
    else:
        logger.warning("Relative and operadic homology of %s differ: %s", algebra.name, "; ".join(comparison.mismatches))
    return comparison
