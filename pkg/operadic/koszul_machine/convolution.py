"""This module contains the convolution pre-Lie algebra Hom_Σ(C, P) of a truncated
cooperad and a truncated operad.
"""
from __future__ import annotations

import logging
from math import factorial
from typing import Dict, List, Mapping, Optional, Union

import numpy as np

from operadic.exactalg import SparseMatrix, Vector, add_scaled
from operadic.exceptions import ShapeError
from operadic.operad_core import TruncatedCooperad, TruncatedOperad
from operadic.symcore import Permutation, all_permutations

logger = logging.getLogger(__name__)


class ConvolutionElement:
    """A homogeneous Σ-equivariant map from the coaugmentation coideal of C to the
    augmentation ideal of P, stored as one matrix of shape (dim P(n), dim C(n)) per
    arity 2 <= n <= max_arity.
    """

    __slots__ = ("cooperad", "operad", "degree", "max_arity", "_maps")

    def __init__(
        self,
        cooperad: TruncatedCooperad,
        operad: TruncatedOperad,
        maps: Mapping[int, SparseMatrix],
        degree: int,
        max_arity: Optional[int] = None,
    ):
        """
        :param cooperad: The source cooperad C.
        :type cooperad: TruncatedCooperad
        :param operad: The target operad P.
        :type operad: TruncatedOperad
        :param maps: Per arity, the matrix of C(n) -> P(n). Missing arities are zero.
        :type maps: mapping from int to SparseMatrix
        :param degree: The degree of the map.
        :type degree: int
        :param max_arity: Truncation, at most the truncations of C and P.
        :type max_arity: int, optional
        :raises ShapeError: If a matrix has the wrong shape or the truncation is too big.
        """
        bound = min(cooperad.max_arity, operad.max_arity)
        if max_arity is None:
            max_arity = bound
        if max_arity > bound:
            raise ShapeError(f"Convolution truncated at {max_arity} exceeds the bound {bound}.")
        self.cooperad = cooperad
        self.operad = operad
        self.degree = degree
        self.max_arity = max_arity
        self._maps: Dict[int, SparseMatrix] = {}
        for n in range(2, max_arity + 1):
            shape = (operad.dim(n), cooperad.dim(n))
            matrix = maps.get(n)
            if matrix is None:
                matrix = SparseMatrix.zeros(shape, operad.field)
            if matrix.shape != shape:
                raise ShapeError(f"Arity {n} map has shape {matrix.shape}, expected {shape}.")
            self._maps[n] = matrix

    @classmethod
    def zero(
        cls, cooperad: TruncatedCooperad, operad: TruncatedOperad, degree: int = 0, max_arity: Optional[int] = None
    ) -> ConvolutionElement:
        return cls(cooperad, operad, {}, degree, max_arity)

    @property
    def field(self):
        return self.operad.field

    def map(self, n: int) -> SparseMatrix:
        return self._maps[n]

    def image(self, n: int, index: int) -> Vector:
        """Image of a basis element of C(n); zero outside arities 2..max_arity."""
        matrix = self._maps.get(n)
        if matrix is None:
            return {}
        return matrix.column(index)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self._maps.values())

    def nonzero_arities(self) -> List[int]:
        return [n for n, m in self._maps.items() if not m.is_zero()]

    def _same_space(self, other: ConvolutionElement) -> None:
        if (
            other.cooperad is not self.cooperad
            or other.operad is not self.operad
            or other.max_arity != self.max_arity
        ):
            raise ShapeError("Convolution elements live in different convolution algebras.")

    def __add__(self, other: ConvolutionElement) -> ConvolutionElement:
        self._same_space(other)
        if other.degree != self.degree and not (other.is_zero() or self.is_zero()):
            raise ShapeError(f"Cannot add degrees {self.degree} and {other.degree}.")
        degree = self.degree if not self.is_zero() else other.degree
        maps = {n: self._maps[n] + other._maps[n] for n in self._maps}
        return ConvolutionElement(self.cooperad, self.operad, maps, degree, self.max_arity)

    def __neg__(self) -> ConvolutionElement:
        maps = {n: -m for n, m in self._maps.items()}
        return ConvolutionElement(self.cooperad, self.operad, maps, self.degree, self.max_arity)

    def __sub__(self, other: ConvolutionElement) -> ConvolutionElement:
        return self + (-other)

    def scale(self, coefficient) -> ConvolutionElement:
        maps = {n: m.scale(coefficient) for n, m in self._maps.items()}
        return ConvolutionElement(self.cooperad, self.operad, maps, self.degree, self.max_arity)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConvolutionElement):
            return NotImplemented
        return self._maps == other._maps and (self.degree == other.degree or self.is_zero())

    def __hash__(self):
        return hash((self.degree, self.max_arity))

    def equivariance_failures(self) -> List[int]:
        """Arities where f(c.σ) = f(c).σ fails for some adjacent transposition."""
        failures = []
        for n, matrix in self._maps.items():
            for i in range(1, n):
                swap = Permutation.transposition(n, i)
                if matrix @ self.cooperad.act(n, swap) != self.operad.act(n, swap) @ matrix:
                    failures.append(n)
                    break
        return failures

    def is_equivariant(self) -> bool:
        return not self.equivariance_failures()

    def homogeneity_failures(self) -> List[int]:
        """Arities where a basis element is sent outside degree (its degree + self.degree)."""
        failures = []
        for n, matrix in self._maps.items():
            for row, col, _ in matrix.entries():
                if self.operad.degree(n, row) != self.cooperad.degree(n, col) + self.degree:
                    failures.append(n)
                    break
        return failures

    def __repr__(self) -> str:
        return f"ConvolutionElement(degree={self.degree}, arities={self.nonzero_arities()})"


def _check_compatible(f: ConvolutionElement, g: ConvolutionElement) -> None:
    if f.cooperad is not g.cooperad or f.operad is not g.operad:
        raise ShapeError("Convolution elements of different convolution algebras.")
    if f.max_arity != g.max_arity:
        raise ShapeError(f"Arity bounds differ: {f.max_arity} and {g.max_arity}.")


def prelie_star(f: ConvolutionElement, g: ConvolutionElement) -> ConvolutionElement:
    """f ⋆ g = μ_(1) ∘ (f ∘_(1) g) ∘ Δ_(1).

    On a reduced decomposition c = Σ u ∘_S l the value is Σ ±f(u) ∘_S g(l), the
    sign (-1)^{|g||u|} coming from g passing u.

    :raises ShapeError: If f and g have different arity bounds or spaces.
    """
    _check_compatible(f, g)
    cooperad, operad = f.cooperad, f.operad
    field = operad.field
    maps: Dict[int, SparseMatrix] = {}
    for n in range(3, f.max_arity + 1):
        columns = []
        for c in range(cooperad.dim(n)):
            column: Vector = {}
            for a, u, b, l, letters, coefficient in cooperad.decompose(n, c):
                fu = f.image(a, u)
                gl = g.image(b, l)
                if not fu or not gl:
                    continue
                sign = field.sign(g.degree * cooperad.degree(a, u))
                add_scaled(column, operad.compose_shuffle(fu, a, gl, b, letters), coefficient * sign)
            columns.append(column)
        maps[n] = SparseMatrix.from_columns(columns, operad.dim(n), field)
    return ConvolutionElement(cooperad, operad, maps, f.degree + g.degree, f.max_arity)


def derivative(f: ConvolutionElement) -> ConvolutionElement:
    """∂(f) = d_P ∘ f - (-1)^{|f|} f ∘ d_C; zero when both differentials vanish."""
    field = f.field
    maps: Dict[int, SparseMatrix] = {}
    for n in range(2, f.max_arity + 1):
        matrix = f.map(n)
        result = SparseMatrix.zeros(matrix.shape, field)
        d_operad = f.operad.differential(n)
        if d_operad is not None:
            result = result + d_operad @ matrix
        d_cooperad = f.cooperad.differential(n)
        if d_cooperad is not None:
            result = result - (matrix @ d_cooperad).scale(field.sign(f.degree))
        maps[n] = result
    return ConvolutionElement(f.cooperad, f.operad, maps, f.degree - 1, f.max_arity)


def bracket(f: ConvolutionElement, g: ConvolutionElement) -> ConvolutionElement:
    """[f, g] = f ⋆ g - (-1)^{|f||g|} g ⋆ f."""
    return prelie_star(f, g) - prelie_star(g, f).scale(f.field.sign(f.degree * g.degree))


def random_element(
    cooperad: TruncatedCooperad,
    operad: TruncatedOperad,
    degree: int,
    seed: Union[int, np.random.Generator, None] = None,
    max_arity: Optional[int] = None,
    bound: int = 3,
) -> ConvolutionElement:
    """A random homogeneous equivariant element.

    Integer entries in [-bound, bound] are drawn for every pair of basis elements of
    matching degrees, then averaged over Σ_n so that the result is equivariant.

    :raises CharacteristicError: If n! is not invertible in the field.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    field = operad.field
    top = min(cooperad.max_arity, operad.max_arity) if max_arity is None else max_arity
    maps: Dict[int, SparseMatrix] = {}
    for n in range(2, top + 1):
        field.check_arity(n)
        columns = []
        for c in range(cooperad.dim(n)):
            target = cooperad.degree(n, c) + degree
            rows = [x for x in range(operad.dim(n)) if operad.degree(n, x) == target]
            values = rng.integers(-bound, bound + 1, size=len(rows))
            columns.append({x: field(int(v)) for x, v in zip(rows, values) if v})
        matrix = SparseMatrix.from_columns(columns, operad.dim(n), field)
        maps[n] = _reynolds(matrix, cooperad, operad, n)
    logger.debug("Random convolution element of degree %d up to arity %d", degree, top)
    return ConvolutionElement(cooperad, operad, maps, degree, top)


def _reynolds(matrix: SparseMatrix, cooperad: TruncatedCooperad, operad: TruncatedOperad, n: int) -> SparseMatrix:
    field = operad.field
    total = SparseMatrix.zeros(matrix.shape, field)
    for sigma in all_permutations(n):
        total = total + operad.act(n, sigma.inverse()) @ matrix @ cooperad.act(n, sigma)
    return total.scale(field.one / field(factorial(n)))
