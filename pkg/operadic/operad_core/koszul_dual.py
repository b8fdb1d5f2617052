"""This module builds the Koszul dual cooperad C(sE, s²R) of a quadratic presentation
inside the cofree cooperad on the suspension sE.
"""
from __future__ import annotations

import logging
from typing import Any, Dict, List, Tuple

from operadic.exactalg import Quotient, Subspace, Vector, add_to, solve_kernel
from operadic.operad_core.cooperad import TruncatedCooperad
from operadic.operad_core.operad import FreeOperad, sigma_closure
from operadic.operad_core.presentation import OperadPresentation
from operadic.operad_core.trees import DecoratedTrees, Tree, is_leaf, leaves, weight

logger = logging.getLogger(__name__)


class KoszulDualCooperad(TruncatedCooperad):
    """The Koszul dual cooperad of a quadratic presentation, truncated.

    In weight one it is sE, in weight two s²R, and in weight w >= 3 it is the largest
    subspace of the cofree cooperad whose reduced decompositions land in lower weight
    parts, computed as the kernel of the projections onto their complements.
    """

    def __init__(self, presentation: OperadPresentation, max_arity: int):
        self.presentation = presentation
        suspended = presentation.generators.suspended(1)
        trees = DecoratedTrees(suspended)
        field = presentation.field
        self._components: Dict[Tuple[int, int], Tuple[Dict[Tree, int], Subspace]] = {}
        self._complements: Dict[Tuple[int, int], Quotient] = {}
        free = FreeOperad(presentation.generators, max_arity, name=f"free({presentation.name})")
        elements: Dict[int, List[Tuple[Tree, Dict[Tree, Any]]]] = {}
        for n in range(2, max_arity + 1):
            elements[n] = []
            for w in range(1, n):
                candidates = trees.basis(n, w)
                if not candidates:
                    continue
                index = {t: k for k, t in enumerate(candidates)}
                if w == 1:
                    vectors: List[Vector] = [{k: field.one} for k in range(len(candidates))]
                elif w == 2:
                    vectors = self._suspended_relations(free, n, index)
                else:
                    vectors = self._kernel(trees, candidates)
                span = Subspace(vectors, len(candidates), field)
                self._components[(n, w)] = (index, span)
                self._complements[(n, w)] = Quotient(len(candidates), span.basis, field)
                for pivot, vector in zip(span.pivots, span.basis):
                    elements[n].append(
                        (candidates[pivot], {candidates[j]: v for j, v in vector.items()})
                    )
                logger.debug(
                    "%s^¡ arity %d weight %d: %d of %d trees",
                    presentation.name, n, w, len(span), len(candidates),
                )
        super().__init__(suspended, elements, max_arity, name=f"{presentation.name}^¡")
        self.trees = trees

    def _suspended_relations(self, free: FreeOperad, n: int, index: Dict[Tree, int]) -> List[Vector]:
        field = self.presentation.field
        relations = sigma_closure(free, n, self.presentation.relation_vectors(n, free))
        basis = free.basis(n)
        vectors = []
        for relation in relations:
            vector: Vector = {}
            for k, value in relation.items():
                tree = basis[k]
                root_degree = self.presentation.generators.degree(tree[0], tree[1])
                add_to(vector, index[tree], value * field.sign(root_degree))
            vectors.append(vector)
        return vectors

    def _kernel(self, trees: DecoratedTrees, candidates: List[Tree]) -> List[Vector]:
        field = self.presentation.field
        rows: Dict[Any, Vector] = {}
        for j, tree in enumerate(candidates):
            for cut in trees.cuts(tree):
                a = len(leaves(cut.upper))
                b = len(cut.letters)
                upper_key = (a, weight(cut.upper))
                lower_key = (b, weight(cut.lower))
                sign = field.one * cut.sign
                upper_quotient = self._complements.get(upper_key)
                if upper_quotient is not None and len(upper_quotient):
                    position = self._components[upper_key][0][cut.upper]
                    for q, value in upper_quotient.project({position: field.one}).items():
                        add_to(rows.setdefault(("upper", cut.letters, upper_key, q, cut.lower), {}), j, sign * value)
                lower_quotient = self._complements.get(lower_key)
                if not is_leaf(cut.lower) and lower_quotient is not None and len(lower_quotient):
                    position = self._components[lower_key][0][cut.lower]
                    for q, value in lower_quotient.project({position: field.one}).items():
                        add_to(rows.setdefault(("lower", cut.letters, cut.upper, lower_key, q), {}), j, sign * value)
        return solve_kernel([r for r in rows.values() if r], len(candidates), field)

    def component(self, n: int, w: int) -> Subspace:
        """The weight w part of arity n, as a subspace of the trees of that weight."""
        return self._components[(n, w)][1]


def koszul_dual_cooperad(presentation: OperadPresentation, max_arity: int) -> KoszulDualCooperad:
    """C(sE, s²R) truncated at max_arity."""
    return KoszulDualCooperad(presentation, max_arity)
