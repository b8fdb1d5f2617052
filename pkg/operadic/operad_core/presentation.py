"""This module contains OperadPresentation, quadratic data (E, R) defining an operad,
and the built-in presentations of com, asc and lie.
"""
from __future__ import annotations

import logging
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence

from operadic.data import PresentationData, to_tag
from operadic.exactalg import Field, Rationals, SparseMatrix
from operadic.exceptions import PresentationError, UnsupportedOperadError
from operadic.operad_core.operad import FreeOperad, QuotientOperad
from operadic.operad_core.sigma_object import SigmaObject
from operadic.operad_core.trees import DecoratedTrees, Tree, leaves, weight
from operadic.symcore import SigmaRep

logger = logging.getLogger(__name__)

CLASSICAL_TAGS = ("com", "asc", "lie")


class OperadPresentation:
    """Generators E and weight-two relations R.

    Relations are combinations of normal trees in the free operad on E; the ideal they
    generate is closed under the Σ-action when the quotient is built.
    """

    def __init__(
        self,
        name: str,
        generators: SigmaObject,
        relations: Sequence[Mapping[Tree, Any]],
        tag: Optional[str] = None,
    ):
        """
        :param name: Display name.
        :type name: str
        :param generators: The reduced Σ*-object E.
        :type generators: SigmaObject
        :param relations: Combinations of trees of weight two, each in one arity.
        :type relations: sequence of mappings from trees to scalars
        :param tag: "com", "asc" or "lie" for the built-in presentations.
        :type tag: str, optional
        :raises PresentationError: If E is not reduced or a relation is not quadratic.
        """
        if not generators.is_reduced():
            raise PresentationError(f"{name}: generators must live in arities >= 2.")
        self.name = name
        self.generators = generators
        self.field = generators.field
        self.tag = tag
        self.trees = DecoratedTrees(generators)
        normalized: List[Dict[Tree, Any]] = []
        for relation in relations:
            combination = self.trees.normalize_combination(relation)
            if not combination:
                continue
            if {weight(t) for t in combination} != {2}:
                raise PresentationError(f"{name}: relations must have weight 2.")
            if len({len(leaves(t)) for t in combination}) != 1:
                raise PresentationError(f"{name}: a relation mixes arities.")
            normalized.append(combination)
        self.relations = normalized
        self._operads: Dict[int, QuotientOperad] = {}

    @classmethod
    def from_data(cls, data: Mapping[str, Any], field: Field = Rationals, tag: Optional[str] = None) -> OperadPresentation:
        """Builds a presentation from the static/TOML layout: a list of generators
        (name, arity, degree), per-arity action matrices of s_1..s_{k-1} and relations
        written as {tree string: coefficient}.
        """
        by_arity: Dict[int, List[Mapping[str, Any]]] = {}
        for generator in data.get("generators", []):
            arity = int(generator["arity"])
            by_arity.setdefault(arity, []).append(generator)
        actions = data.get("actions", {})
        components: Dict[int, SigmaRep] = {}
        names: Dict[int, List[str]] = {}
        for arity, gens in by_arity.items():
            degrees = [int(g.get("degree", 0)) for g in gens]
            given = actions.get(str(arity), actions.get(arity))
            if given is None:
                if arity > 1 and len(gens) != 1:
                    raise PresentationError(f"Arity {arity} generators need action matrices.")
                given = [[[1]]] * (arity - 1)
            matrices = [
                SparseMatrix.from_dense([[field(v) for v in row] for row in matrix], field)
                for matrix in given
            ]
            components[arity] = SigmaRep(arity, degrees, matrices, field)
            names[arity] = [str(g["name"]) for g in gens]
        generators = SigmaObject(components, field, names)
        trees = DecoratedTrees(generators)
        relations = []
        for relation in data.get("relations", []):
            combination: Dict[Tree, Any] = {}
            for text, coefficient in relation.items():
                tree = trees.parse(text)
                combination[tree] = combination.get(tree, field.zero) + field(coefficient)
            relations.append(combination)
        return cls(str(data.get("name", tag or "custom")), generators, relations, tag=tag)

    @property
    def is_binary(self) -> bool:
        return self.generators.arities() == [2]

    @property
    def max_generator_arity(self) -> int:
        return max(self.generators.arities(), default=0)

    def free(self, max_arity: int) -> FreeOperad:
        return FreeOperad(self.generators, max_arity, name=f"free({self.name})")

    def operad(self, max_arity: int) -> QuotientOperad:
        """The truncated quotient operad 𝖥(E)/(R), memoized per truncation."""
        operad = self._operads.get(max_arity)
        if operad is None:
            operad = QuotientOperad(self.generators, self.relations, max_arity, name=self.name)
            self._operads[max_arity] = operad
        return operad

    def relation_vectors(self, n: int, free: FreeOperad) -> List[Dict[int, Any]]:
        index = free.index(n)
        return [
            {index[t]: v for t, v in relation.items()}
            for relation in self.relations
            if len(leaves(next(iter(relation)))) == n
        ]

    def require_classical(self) -> str:
        """The tag of a built-in presentation.

        :raises UnsupportedOperadError: For custom presentations.
        """
        if self.tag not in CLASSICAL_TAGS:
            raise UnsupportedOperadError(
                f"{self.name}: only com, asc and lie are supported here."
            )
        return self.tag

    def __repr__(self) -> str:
        return f"OperadPresentation({self.name}, {len(self.relations)} relations)"


@lru_cache(None)
def classical_presentation(tag: str, field: Field = Rationals) -> OperadPresentation:
    """The presentation of com, asc or lie over the given field."""
    tag = to_tag(tag)
    data = PresentationData.from_tag(tag)
    return OperadPresentation.from_data(data.as_dict(), field, tag=tag)


def quotient_presentation(presentation: OperadPresentation, max_arity: int) -> QuotientOperad:
    """𝖥(E)/(R) truncated at max_arity."""
    return presentation.operad(max_arity)
