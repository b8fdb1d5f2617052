"""This module contains twisting morphisms: degree -1 solutions of the Maurer-Cartan
equation ∂(α) + α ⋆ α = 0 in the convolution algebra.
"""
from __future__ import annotations

import logging
from typing import Dict, List

from operadic.exactalg import SparseMatrix, Vector
from operadic.exceptions import TwistingMorphismError
from operadic.koszul_machine.convolution import ConvolutionElement, derivative, prelie_star
from operadic.operad_core import KoszulDualCooperad, TreeOperad
from operadic.operad_core.trees import weight

logger = logging.getLogger(__name__)


class TwistingMorphism:
    """A validated twisting morphism α: C -> P."""

    __slots__ = ("element",)

    def __init__(self, element: ConvolutionElement, check: bool = True):
        """
        :param element: A convolution element of degree -1.
        :type element: ConvolutionElement
        :param check: Whether to verify the Maurer-Cartan equation.
        :type check: bool
        :raises TwistingMorphismError: If the degree is not -1 or the equation fails,
            naming the first failing arity.
        """
        if element.degree != -1 and not element.is_zero():
            raise TwistingMorphismError(f"A twisting morphism has degree -1, not {element.degree}.")
        self.element = element
        if check:
            failures = self.maurer_cartan_failures()
            if failures:
                raise TwistingMorphismError(
                    f"∂(α) + α ⋆ α does not vanish in arity {failures[0]}."
                )

    @property
    def cooperad(self):
        return self.element.cooperad

    @property
    def operad(self):
        return self.element.operad

    @property
    def degree(self) -> int:
        return -1

    @property
    def max_arity(self) -> int:
        return self.element.max_arity

    def image(self, n: int, index: int) -> Vector:
        return self.element.image(n, index)

    def maurer_cartan(self) -> ConvolutionElement:
        """∂(α) + α ⋆ α."""
        return derivative(self.element) + prelie_star(self.element, self.element)

    def maurer_cartan_failures(self) -> List[int]:
        curvature = self.maurer_cartan()
        return curvature.nonzero_arities()

    def __repr__(self) -> str:
        return f"TwistingMorphism({self.cooperad.name} -> {self.operad.name})"


def koszul_morphism(cooperad: KoszulDualCooperad, operad: TreeOperad, check: bool = True) -> TwistingMorphism:
    """κ: P^¡ -> P, the projection onto sE followed by desuspension and the inclusion
    of the generators; zero in weight >= 2.

    :raises TwistingMorphismError: If κ ⋆ κ does not vanish.
    """
    field = operad.field
    max_arity = min(cooperad.max_arity, operad.max_arity)
    maps: Dict[int, SparseMatrix] = {}
    for n in range(2, max_arity + 1):
        columns = []
        for c in range(cooperad.dim(n)):
            pivot = cooperad.pivot(n, c)
            if weight(pivot) == 1:
                columns.append(operad.reduce(n, {pivot: field.one}))
            else:
                columns.append({})
        maps[n] = SparseMatrix.from_columns(columns, operad.dim(n), field)
    element = ConvolutionElement(cooperad, operad, maps, -1, max_arity)
    logger.debug("κ for %s up to arity %d", operad.name, max_arity)
    return TwistingMorphism(element, check=check)


def bar_morphism(bar, check: bool = True) -> TwistingMorphism:
    """π: Bar(P) -> P, sending s p on a one-vertex tree to p and every other tree to 0."""
    operad = bar.operad
    field = operad.field
    maps: Dict[int, SparseMatrix] = {}
    for n in range(2, bar.max_arity + 1):
        columns = []
        for c in range(bar.dim(n)):
            tree = bar.pivot(n, c)
            columns.append({tree[1]: field.one} if weight(tree) == 1 else {})
        maps[n] = SparseMatrix.from_columns(columns, operad.dim(n), field)
    element = ConvolutionElement(bar, operad, maps, -1, bar.max_arity)
    return TwistingMorphism(element, check=check)
