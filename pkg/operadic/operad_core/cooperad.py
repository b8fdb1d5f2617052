"""This module defines truncated cooperads realized inside cofree cooperads: the cofree
cooperad itself and sub-cooperads given by an echelon basis, such as Koszul duals.
"""
from __future__ import annotations

import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from operadic.exactalg import SparseMatrix, Vector, add_to
from operadic.operad_core.sigma_object import SigmaObject
from operadic.operad_core.trees import DecoratedTrees, Tree, weight
from operadic.symcore import Permutation, SigmaRep

logger = logging.getLogger(__name__)

# (upper arity, upper index, lower arity, lower index, letters, coefficient)
Decomposition = Tuple[int, int, int, int, Tuple[int, ...], Any]
# (upper arity, upper index, blocks, ((arity, index), ...), coefficient)
TopTerm = Tuple[int, int, Tuple[Tuple[int, ...], ...], Tuple[Tuple[int, int], ...], Any]


class TruncatedCooperad:
    """A sub-cooperad of the cofree cooperad on a reduced Σ*-object X.

    Each basis element of arity n is a combination of normal X-decorated trees with a
    pivot tree: the element has coefficient 1 at its own pivot and 0 at the pivots of
    the other elements of the same arity, so coordinates of a member are read at the
    pivots. Arity 1 is spanned by the identity (the bare leaf).
    """

    def __init__(
        self,
        generators: SigmaObject,
        elements: Mapping[int, Sequence[Tuple[Tree, Mapping[Tree, Any]]]],
        max_arity: int,
        name: str = "cooperad",
    ):
        """
        :param generators: The cogenerators X.
        :type generators: SigmaObject
        :param elements: Per arity >= 2, the (pivot tree, combination) pairs.
        :type elements: mapping
        :param max_arity: The truncation.
        :type max_arity: int
        :param name: Display name.
        :type name: str
        """
        self.generators = generators
        self.field = generators.field
        self.trees = DecoratedTrees(generators)
        self.max_arity = max_arity
        self.name = name
        one = self.field.one
        self._elements: Dict[int, List[Dict[Tree, Any]]] = {1: [{1: one}]}
        self._pivots: Dict[int, List[Tree]] = {1: [1]}
        for n in range(2, max_arity + 1):
            pairs = list(elements.get(n, []))
            self._elements[n] = [dict(c) for _, c in pairs]
            self._pivots[n] = [p for p, _ in pairs]
        self._pivot_index: Dict[int, Dict[Tree, int]] = {
            n: {p: k for k, p in enumerate(pivots)} for n, pivots in self._pivots.items()
        }
        self._actions: Dict[Any, SparseMatrix] = {}
        self._reps: Dict[int, SigmaRep] = {}
        self._decompositions: Dict[Any, List[Decomposition]] = {}
        self._tops: Dict[Any, List[TopTerm]] = {}

    def basis(self, n: int) -> List[Dict[Tree, Any]]:
        if n < 1 or n > self.max_arity:
            return []
        return self._elements[n]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def dims(self) -> Dict[int, int]:
        return {n: self.dim(n) for n in range(1, self.max_arity + 1)}

    def pivot(self, n: int, index: int) -> Tree:
        return self._pivots[n][index]

    def degree(self, n: int, index: int) -> int:
        return self.trees.degree(self._pivots[n][index])

    def weight(self, n: int, index: int) -> int:
        return weight(self._pivots[n][index])

    def render(self, n: int, index: int) -> str:
        return self.trees.render_combination(self._elements[n][index])

    def differential(self, n: int) -> Optional[SparseMatrix]:
        return None

    def coordinates(self, n: int, combination: Mapping[Tree, Any]) -> Vector:
        """Coordinates of a member, read at the pivots."""
        index = self._pivot_index.get(n, {})
        result: Vector = {}
        for tree, value in combination.items():
            k = index.get(tree)
            if k is not None and value:
                result[k] = value
        return result

    def expand(self, n: int, vector: Mapping[int, Any]) -> Dict[Tree, Any]:
        result: Dict[Tree, Any] = {}
        for k, c in vector.items():
            for tree, value in self._elements[n][k].items():
                add_to(result, tree, c * value)
        return result

    def contains(self, n: int, combination: Mapping[Tree, Any]) -> bool:
        residual = dict(combination)
        for tree, value in self.expand(n, self.coordinates(n, combination)).items():
            add_to(residual, tree, -value)
        return not residual

    def act(self, n: int, sigma: Permutation) -> SparseMatrix:
        key = (n, sigma.images)
        cached = self._actions.get(key)
        if cached is None:
            columns = []
            for element in self.basis(n):
                moved: Dict[Tree, Any] = {}
                for tree, value in element.items():
                    for image, c in self.trees.act(tree, sigma).items():
                        add_to(moved, image, value * c)
                columns.append(self.coordinates(n, moved))
            cached = SparseMatrix.from_columns(columns, self.dim(n), self.field)
            self._actions[key] = cached
        return cached

    def sigma_rep(self, n: int) -> SigmaRep:
        rep = self._reps.get(n)
        if rep is None:
            generators = [self.act(n, Permutation.transposition(n, i)) for i in range(1, n)]
            degrees = [self.degree(n, k) for k in range(self.dim(n))]
            rep = SigmaRep(n, degrees, generators, self.field, check=False)
            self._reps[n] = rep
        return rep

    def _cut_tensors(
        self, n: int, index: int, include_root: bool, include_leaves: bool
    ) -> Dict[Tuple[int, ...], Dict[Tuple[Tree, Tree], Any]]:
        groups: Dict[Tuple[int, ...], Dict[Tuple[Tree, Tree], Any]] = {}
        for tree, value in self._elements[n][index].items():
            for cut in self.trees.cuts(tree, include_root=include_root, include_leaves=include_leaves):
                add_to(groups.setdefault(cut.letters, {}), (cut.upper, cut.lower), value * cut.sign)
        return groups

    def decompose(
        self, n: int, index: int, include_root: bool = False, include_leaves: bool = False
    ) -> List[Decomposition]:
        """Infinitesimal decomposition Δ_(1) of a basis element.

        :return: Terms (a, u, b, l, letters, c) meaning c · u ∘_letters l with u in
            arity a and l in arity b. The reduced decomposition omits the terms with the
            identity on either side unless asked for.
        """
        key = (n, index, include_root, include_leaves)
        cached = self._decompositions.get(key)
        if cached is not None:
            return cached
        terms: List[Decomposition] = []
        for letters, tensor in self._cut_tensors(n, index, include_root, include_leaves).items():
            b = len(letters)
            a = n - b + 1
            uppers = self._pivot_index.get(a, {})
            lowers = self._pivot_index.get(b, {})
            for (upper, lower), value in tensor.items():
                u = uppers.get(upper)
                l = lowers.get(lower)
                if u is not None and l is not None:
                    terms.append((a, u, b, l, letters, value))
        terms.sort(key=lambda t: (t[4], t[1], t[3]))
        self._decompositions[key] = terms
        return terms

    def top_decompose(self, n: int, index: int) -> List[TopTerm]:
        """Full decompositions c = u(l_1, ..., l_k) with u containing the root vertex.

        The term with every l_j the identity is included.
        """
        key = (n, index)
        cached = self._tops.get(key)
        if cached is not None:
            return cached
        groups: Dict[Tuple[Tuple[int, ...], ...], Dict[Tuple[Tree, Tuple[Tree, ...]], Any]] = {}
        if n == 1:
            return []
        for tree, value in self._elements[n][index].items():
            for top in self.trees.top_decompositions(tree):
                add_to(groups.setdefault(top.blocks, {}), (top.upper, top.lowers), value * top.sign)
        terms: List[TopTerm] = []
        for blocks, tensor in groups.items():
            k = len(blocks)
            uppers = self._pivot_index.get(k, {})
            for (upper, lowers), value in tensor.items():
                u = uppers.get(upper)
                if u is None:
                    continue
                indices = []
                for block, lower in zip(blocks, lowers):
                    l = self._pivot_index.get(len(block), {}).get(lower)
                    if l is None:
                        break
                    indices.append((len(block), l))
                else:
                    terms.append((k, u, blocks, tuple(indices), value))
        terms.sort(key=lambda t: (t[2], t[1], t[3]))
        self._tops[key] = terms
        return terms

    def check_axioms(self, max_arity: Optional[int] = None) -> List[str]:
        """Verifies the Σ-action, that decompositions land in C ⊗ C, and that each
        decomposition recomposes to its source (coassociativity being dual to the
        associativity of grafting).
        """
        bound = min(max_arity or self.max_arity, self.max_arity)
        failures: List[str] = []
        for n in range(2, bound + 1):
            try:
                self.sigma_rep(n).check()
            except Exception as error:
                failures.append(f"arity {n}: {error}")
            for index in range(self.dim(n)):
                for letters, tensor in self._cut_tensors(n, index, False, False).items():
                    b = len(letters)
                    a = n - b + 1
                    rebuilt: Dict[Tuple[Tree, Tree], Any] = {}
                    for (upper, lower), value in tensor.items():
                        u = self._pivot_index.get(a, {}).get(upper)
                        l = self._pivot_index.get(b, {}).get(lower)
                        if u is None or l is None:
                            continue
                        for t1, c1 in self._elements[a][u].items():
                            for t2, c2 in self._elements[b][l].items():
                                add_to(rebuilt, (t1, t2), value * c1 * c2)
                    if rebuilt != tensor:
                        failures.append(
                            f"arity {n}: decomposition of {self.render(n, index)} at {letters} leaves the cooperad"
                        )
                for tree in self._elements[n][index]:
                    for cut in self.trees.cuts(tree):
                        grafted = self.trees.compose_shuffle(cut.upper, cut.lower, cut.letters)
                        if grafted != {tree: self.field.one * cut.sign}:
                            failures.append(f"arity {n}: cut of {self.trees.render(tree)} does not recompose")
        for failure in failures:
            logger.debug("%s: %s", self.name, failure)
        return failures

    def __repr__(self) -> str:
        return f"TruncatedCooperad({self.name}, dims={self.dims()})"


def cofree_cooperad(generators: SigmaObject, max_arity: int, name: str = "cofree") -> TruncatedCooperad:
    """The cofree cooperad on a reduced Σ*-object: every normal tree is a basis element
    and Δ_(1) cuts one internal edge at a time.

    :raises PresentationError: If the generators are not reduced.
    """
    trees = DecoratedTrees(generators)
    one = generators.field.one
    elements = {
        n: [(t, {t: one}) for t in trees.basis(n)] for n in range(2, max_arity + 1)
    }
    cooperad = TruncatedCooperad(generators, elements, max_arity, name)
    cooperad.trees = trees
    return cooperad
