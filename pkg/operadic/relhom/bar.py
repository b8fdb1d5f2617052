"""This module contains the simplicial bar object BD(A, B, X) of the cotriple
T = f_! f*: level n is T^{n+1} X, ∂_i = T^i ε T^{n-i} and σ_i = T^i δ T^{n-i}.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from operadic.exactalg import ChainComplex, Direction, SparseMatrix
from operadic.palgebra import AlgebraMorphism, PModule
from operadic.relhom.cotriple import Cotriple, cotriple_from_adjunction
from operadic.relhom.simplicial import SimplicialModule

logger = logging.getLogger(__name__)


def module_margin(*modules) -> int:
    """Largest absolute weight among the given modules."""
    return max((abs(w) for module in modules for w in module.weights), default=0)


@dataclass
class RelativeBar:
    """BD(A, B, X) up to level n_max, with its levels as modules over A.

    levels[0] is X itself and levels[n + 1] is T^{n+1} X, level n of the simplicial
    object.
    """

    cotriple: Cotriple
    levels: List[PModule]
    simplicial: SimplicialModule

    @property
    def resolved(self) -> PModule:
        return self.levels[0]

    def level(self, n: int) -> PModule:
        return self.levels[n + 1]

    def augmentation(self) -> SparseMatrix:
        """ε_X: BD_0 -> X."""
        return self.cotriple.counit(self.resolved)

    def window(self) -> List[int]:
        """Weights whose components are computed exactly."""
        return [w for w in self.simplicial.weight_set() if self.cotriple.in_window(w)]

    def augmented_complex(self, weight: int) -> ChainComplex:
        """... -> BD_1 -> BD_0 -> X in one weight, X in degree -1."""
        component = self.simplicial.restricted(weight)
        rows = [k for k, w in enumerate(self.resolved.weights) if w == weight]
        columns = [k for k, w in enumerate(self.simplicial.weights.get(0, [])) if w == weight]
        matrices = {n: component.differential(n) for n in range(1, component.top + 1)}
        matrices[0] = self.augmentation().submatrix(rows, columns)
        dims = dict(component.dims())
        dims[-1] = len(rows)
        return ChainComplex(dims, matrices, self.cotriple.field, Direction.CHAIN)


def _lift(cotriple: Cotriple, levels: List[PModule], matrix: SparseMatrix, source: int, target: int, times: int) -> SparseMatrix:
    """T^times applied to a map from levels[source] to levels[target]."""
    for _ in range(times):
        matrix = cotriple.lift(matrix, levels[source], levels[target])
        source += 1
        target += 1
    return matrix


def bar_simplicial(
    morphism: AlgebraMorphism,
    module: PModule,
    n_max: int,
    pbw_bound: Optional[int] = None,
    max_weight: Optional[int] = None,
    cotriple: Optional[Cotriple] = None,
) -> RelativeBar:
    """BD(A, B, X) at levels 0..n_max.

    :param morphism: f: B -> A.
    :type morphism: AlgebraMorphism
    :param module: X, a module over A.
    :type module: PModule
    :param n_max: Top level.
    :type n_max: int
    :param pbw_bound: Explicit PBW bound on each level.
    :type pbw_bound: int, optional
    :param max_weight: Weight window, when no PBW bound is given.
    :type max_weight: int, optional
    :param cotriple: A cotriple to reuse instead of building one.
    :type cotriple: Cotriple, optional
    :rtype: RelativeBar
    :raises TruncationError: If a weight component is unbounded within the configuration.
    """
    if cotriple is None:
        cotriple = cotriple_from_adjunction(morphism, pbw_bound, max_weight, module_margin(module))
    levels = [module]
    for n in range(n_max + 1):
        levels.append(cotriple.apply(levels[-1]).module)
    # levels[k + 1] = T^{k+1} X; faces of level n map levels[n + 1] -> levels[n]
    faces: Dict[Tuple[int, int], SparseMatrix] = {}
    degeneracies: Dict[Tuple[int, int], SparseMatrix] = {}
    for n in range(n_max + 1):
        for i in range(n + 1):
            inner = n - i
            if n:
                counit = cotriple.counit(levels[inner])
                faces[(n, i)] = _lift(cotriple, levels, counit, inner + 1, inner, i)
            if n < n_max:
                delta = cotriple.comultiplication(levels[inner])
                degeneracies[(n, i)] = _lift(cotriple, levels, delta, inner + 1, inner + 2, i)
    names = {n: levels[n + 1].names for n in range(n_max + 1)}
    weights = {n: levels[n + 1].weights for n in range(n_max + 1)}
    simplicial = SimplicialModule(cotriple.field, names, weights, faces, degeneracies, name=f"BD({module.name})")
    logger.debug("Relative bar of %s: level dims %s", module.name, simplicial.dims())
    return RelativeBar(cotriple, levels[: n_max + 2], simplicial)
