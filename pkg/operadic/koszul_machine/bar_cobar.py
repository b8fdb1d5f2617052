"""This module contains the operadic bar and cobar constructions, the counit
Cobar(Bar(P)) -> P, the morphism Cobar(P^¡) -> P, the inclusion P^¡ -> Bar(P) and the
homology comparisons that certify them arity by arity.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Tuple

from operadic.exactalg import (
    ChainComplex,
    ComplexBuilder,
    SparseMatrix,
    Subspace,
    Vector,
    add_scaled,
    add_to,
)
from operadic.exceptions import UnsupportedOperadError
from operadic.operad_core import (
    DecoratedTrees,
    FreeOperad,
    SigmaObject,
    TreeOperad,
    TruncatedCooperad,
    TruncatedOperad,
    Tree,
)
from operadic.operad_core.trees import compress, is_leaf, leaves, weight
from operadic.symcore import Permutation

logger = logging.getLogger(__name__)


def suspended_augmentation(operad: TruncatedOperad, max_arity: int) -> SigmaObject:
    """s P̄: the augmentation ideal of P (arities >= 2) with degrees raised by one."""
    components = {}
    names = {}
    for n in range(2, max_arity + 1):
        if operad.dim(n):
            components[n] = operad.sigma_rep(n)
            names[n] = [f"[{operad.render(n, x)}]" for x in range(operad.dim(n))]
    return SigmaObject(components, operad.field, names).suspended(1, prefix="s")


def desuspended_coaugmentation(cooperad: TruncatedCooperad, max_arity: int) -> SigmaObject:
    """s⁻¹ C̄: the coaugmentation coideal of C (arities >= 2) with degrees lowered by one."""
    components = {}
    names = {}
    for n in range(2, max_arity + 1):
        if cooperad.dim(n):
            components[n] = cooperad.sigma_rep(n)
            names[n] = [f"[{cooperad.render(n, c)}]" for c in range(cooperad.dim(n))]
    return SigmaObject(components, cooperad.field, names).suspended(-1, prefix="s^-1")


def _complex_from_builder(
    builder: ComplexBuilder,
    basis: List[Tree],
    degree: Callable[[Tree], int],
    differential: Callable[[Tree], Dict[Tree, Any]],
    render: Callable[[Tree], str],
) -> ChainComplex:
    for tree in basis:
        builder.add(tree, degree(tree))
    return builder.build(differential, render=render)


class BarConstruction(TruncatedCooperad):
    """Bar(P) = (𝔽^c(s P̄), d₁ + d₂), truncated.

    d₂ contracts one internal edge, composing the two decorations in P with
    μ_s(s ⊗ s) = s; the Koszul signs follow the preorder of the vertices. d₁ is
    -s d_P applied to one vertex.
    """

    def __init__(self, operad: TruncatedOperad, max_arity: Optional[int] = None):
        """
        :param operad: An augmented operad: P(1) is spanned by the unit in degree 0.
        :type operad: TruncatedOperad
        :param max_arity: Truncation, at most the operad's.
        :type max_arity: int, optional
        :raises UnsupportedOperadError: If P is not augmented.
        """
        if operad.dim(1) != 1 or operad.degree(1, 0) != 0:
            raise UnsupportedOperadError(f"{operad.name} is not augmented: P(1) must be the ground field.")
        bound = min(max_arity or operad.max_arity, operad.max_arity)
        generators = suspended_augmentation(operad, bound)
        trees = DecoratedTrees(generators)
        one = operad.field.one
        elements = {n: [(t, {t: one}) for t in trees.basis(n)] for n in range(2, bound + 1)}
        super().__init__(generators, elements, bound, name=f"Bar({operad.name})")
        self.trees = trees
        self.operad = operad
        self._tree_differentials: Dict[Tuple[Tree, str], Dict[Tree, Any]] = {}
        self._matrices: Dict[Tuple[int, str], SparseMatrix] = {}
        self._complexes: Dict[int, Tuple[ComplexBuilder, ChainComplex]] = {}

    def internal_part(self, tree: Tree) -> Dict[Tree, Any]:
        """d₁ on a basis tree."""
        key = (tree, "d1")
        cached = self._tree_differentials.get(key)
        if cached is not None:
            return cached
        result: Dict[Tree, Any] = {}
        before = 0
        for path, node in self.trees.walk(tree):
            if is_leaf(node):
                continue
            k, x, children = node
            d_operad = self.operad.differential(k)
            if d_operad is not None:
                sign = -self.field.sign(before)
                for x2, value in d_operad.column(x).items():
                    replaced = self.trees.replace(tree, path, (k, x2, children))
                    add_scaled(result, self.trees.normalize(replaced), sign * value)
            before += self.generators.degree(k, x)
        self._tree_differentials[key] = result
        return result

    def contraction_part(self, tree: Tree) -> Dict[Tree, Any]:
        """d₂ on a basis tree: the sum over internal edges of their contractions."""
        key = (tree, "d2")
        cached = self._tree_differentials.get(key)
        if cached is not None:
            return cached
        field = self.field
        one = field.one
        result: Dict[Tree, Any] = {}
        before = 0
        for path, node in self.trees.walk(tree):
            if is_leaf(node):
                continue
            k, x, children = node
            earlier = 0
            for i, child in enumerate(children):
                if not is_leaf(child):
                    kc, y, grandchildren = child
                    composed = self.operad.compose({x: one}, k, i + 1, {y: one}, kc)
                    sign = field.sign(
                        self.generators.degree(kc, y) * earlier + before + self.operad.degree(k, x)
                    )
                    merged = children[:i] + grandchildren + children[i + 1 :]
                    for z, value in composed.items():
                        replaced = self.trees.replace(tree, path, (k + kc - 1, z, merged))
                        add_scaled(result, self.trees.normalize(replaced), sign * value)
                earlier += self.trees.degree(child)
            before += self.generators.degree(k, x)
        self._tree_differentials[key] = result
        return result

    def tree_differential(self, tree: Tree) -> Dict[Tree, Any]:
        result = dict(self.internal_part(tree))
        add_scaled(result, self.contraction_part(tree), self.field.one)
        return result

    def _part_matrix(self, n: int, part: str) -> SparseMatrix:
        key = (n, part)
        cached = self._matrices.get(key)
        if cached is None:
            apply = self.internal_part if part == "d1" else self.contraction_part
            columns = [self.coordinates(n, apply(self.pivot(n, c))) for c in range(self.dim(n))]
            cached = SparseMatrix.from_columns(columns, self.dim(n), self.field)
            self._matrices[key] = cached
        return cached

    def differential(self, n: int) -> Optional[SparseMatrix]:
        if n < 2 or n > self.max_arity:
            return None
        return self._part_matrix(n, "d1") + self._part_matrix(n, "d2")

    def differential_failures(self, n: int) -> List[str]:
        """Checks d₁² = 0, d₂² = 0 and d₁d₂ + d₂d₁ = 0 on the arity n component."""
        d1 = self._part_matrix(n, "d1")
        d2 = self._part_matrix(n, "d2")
        failures = []
        if not (d1 @ d1).is_zero():
            failures.append(f"arity {n}: d1 squared is not zero")
        if not (d2 @ d2).is_zero():
            failures.append(f"arity {n}: d2 squared is not zero")
        if not (d1 @ d2 + d2 @ d1).is_zero():
            failures.append(f"arity {n}: d1 and d2 do not anticommute")
        return failures

    def chain_complex(self, n: int) -> Tuple[ComplexBuilder, ChainComplex]:
        """The arity n component as a complex graded by tree degree, with its labels."""
        cached = self._complexes.get(n)
        if cached is None:
            builder = ComplexBuilder(self.field)
            complex_ = _complex_from_builder(
                builder,
                [self.pivot(n, c) for c in range(self.dim(n))],
                self.trees.degree,
                self.tree_differential,
                self.trees.render,
            )
            cached = (builder, complex_)
            self._complexes[n] = cached
            logger.debug("%s arity %d: %s", self.name, n, complex_)
        return cached

    def complex(self, n: int) -> ChainComplex:
        return self.chain_complex(n)[1]


class CobarConstruction(FreeOperad):
    """Cobar(C) = (𝔽(s⁻¹ C̄), d₁ + d₂), truncated.

    On generators d₁(s⁻¹c) = -s⁻¹ d_C c and d₂(s⁻¹c) = -Σ (-1)^{|u|} s⁻¹u ∘_S s⁻¹l
    over the reduced decompositions of c; d extends to trees as a derivation.
    """

    def __init__(self, cooperad: TruncatedCooperad, max_arity: Optional[int] = None):
        """
        :raises UnsupportedOperadError: If C is not coaugmented.
        """
        if cooperad.dim(1) != 1 or cooperad.degree(1, 0) != 0:
            raise UnsupportedOperadError(f"{cooperad.name} is not coaugmented.")
        bound = min(max_arity or cooperad.max_arity, cooperad.max_arity)
        super().__init__(desuspended_coaugmentation(cooperad, bound), bound, name=f"Cobar({cooperad.name})")
        self.cooperad = cooperad
        self._generator_differentials: Dict[Tuple[int, int], Dict[Tree, Any]] = {}
        self._tree_differentials: Dict[Tree, Dict[Tree, Any]] = {}
        self._matrices: Dict[int, SparseMatrix] = {}
        self._complexes: Dict[int, Tuple[ComplexBuilder, ChainComplex]] = {}

    @staticmethod
    def corolla(k: int, c: int) -> Tree:
        return (k, c, tuple(range(1, k + 1)))

    def generator_differential(self, k: int, c: int) -> Dict[Tree, Any]:
        key = (k, c)
        cached = self._generator_differentials.get(key)
        if cached is not None:
            return cached
        field = self.field
        result: Dict[Tree, Any] = {}
        d_cooperad = self.cooperad.differential(k)
        if d_cooperad is not None:
            for c2, value in d_cooperad.column(c).items():
                add_to(result, self.corolla(k, c2), -value)
        for a, u, b, l, letters, coefficient in self.cooperad.decompose(k, c):
            grafted = self.trees.compose_shuffle(self.corolla(a, u), self.corolla(b, l), letters)
            sign = -field.sign(self.cooperad.degree(a, u))
            add_scaled(result, grafted, coefficient * sign)
        self._generator_differentials[key] = result
        return result

    def graft(self, outer: Tree, pieces: List[Tuple[Tuple[int, ...], Tree]]) -> Dict[Tree, Any]:
        """γ(outer; pieces) for trees, each piece given with its letters."""
        current: Dict[Tree, Any] = {outer: self.field.one}
        position = 1
        order: List[int] = []
        for letters, inner in pieces:
            grown: Dict[Tree, Any] = {}
            for tree, value in current.items():
                add_scaled(grown, self.trees.compose(tree, position, inner), value)
            current = grown
            position += len(letters)
            order.extend(letters)
        sigma = Permutation(order).inverse()
        result: Dict[Tree, Any] = {}
        for tree, value in current.items():
            add_scaled(result, self.trees.act(tree, sigma), value)
        return result

    def tree_differential(self, tree: Tree) -> Dict[Tree, Any]:
        if is_leaf(tree):
            return {}
        cached = self._tree_differentials.get(tree)
        if cached is not None:
            return cached
        k, g, children = tree
        pieces = [(tuple(sorted(leaves(child))), compress(child)) for child in children]
        result: Dict[Tree, Any] = {}
        for root, value in self.generator_differential(k, g).items():
            add_scaled(result, self.graft(root, pieces), value)
        corolla = self.corolla(k, g)
        passed = self.generators.degree(k, g)
        for j, (letters, child) in enumerate(pieces):
            sign = self.field.sign(passed)
            for image, value in self.tree_differential(child).items():
                changed = pieces[:j] + [(letters, image)] + pieces[j + 1 :]
                add_scaled(result, self.graft(corolla, changed), sign * value)
            passed += self.trees.degree(child)
        self._tree_differentials[tree] = result
        return result

    def differential(self, n: int) -> Optional[SparseMatrix]:
        if n < 2 or n > self.max_arity:
            return None
        cached = self._matrices.get(n)
        if cached is None:
            columns = [self.reduce(n, self.tree_differential(t)) for t in self.basis(n)]
            cached = SparseMatrix.from_columns(columns, self.dim(n), self.field)
            self._matrices[n] = cached
        return cached

    def chain_complex(self, n: int) -> Tuple[ComplexBuilder, ChainComplex]:
        cached = self._complexes.get(n)
        if cached is None:
            builder = ComplexBuilder(self.field)
            complex_ = _complex_from_builder(
                builder, self.basis(n), self.trees.degree, self.tree_differential, self.trees.render
            )
            cached = (builder, complex_)
            self._complexes[n] = cached
            logger.debug("%s arity %d: %s", self.name, n, complex_)
        return cached

    def complex(self, n: int) -> ChainComplex:
        return self.chain_complex(n)[1]


def bar(operad: TruncatedOperad, max_arity: Optional[int] = None) -> BarConstruction:
    """
    :raises UnsupportedOperadError: If the operad is not augmented.
    """
    return BarConstruction(operad, max_arity)


def cobar(cooperad: TruncatedCooperad, max_arity: Optional[int] = None) -> CobarConstruction:
    """
    :raises UnsupportedOperadError: If the cooperad is not coaugmented.
    """
    return CobarConstruction(cooperad, max_arity)


class CobarMorphism:
    """A morphism of operads Cobar(C) -> P of degree 0 determined by its values on
    the generators s⁻¹c."""

    def __init__(
        self,
        source: CobarConstruction,
        target: TruncatedOperad,
        generator_image: Callable[[int, int], Vector],
        name: str = "φ",
    ):
        self.source = source
        self.target = target
        self.name = name
        self._generator_image = generator_image
        self._images: Dict[Tree, Vector] = {}

    def image(self, tree: Tree) -> Vector:
        if is_leaf(tree):
            return self.target.unit
        cached = self._images.get(tree)
        if cached is not None:
            return cached
        k, g, children = tree
        top = self._generator_image(k, g)
        result: Vector = {}
        if top:
            pieces = [(tuple(sorted(leaves(child))), self.image(compress(child))) for child in children]
            result = self.target.compose_full(top, k, pieces)
        self._images[tree] = result
        return result

    def image_of(self, combination: Dict[Tree, Any]) -> Vector:
        result: Vector = {}
        for tree, value in combination.items():
            add_scaled(result, self.image(tree), value)
        return result

    def matrix(self, n: int) -> SparseMatrix:
        columns = [self.image(t) for t in self.source.basis(n)]
        return SparseMatrix.from_columns(columns, self.target.dim(n), self.target.field)


def counit(bar_construction: BarConstruction, max_arity: Optional[int] = None) -> CobarMorphism:
    """Cobar(Bar(P)) -> P: s⁻¹ s p on a one-vertex tree goes to p, every other
    generator to 0."""
    operad = bar_construction.operad
    source = CobarConstruction(bar_construction, max_arity)
    one = operad.field.one

    def generator_image(k: int, c: int) -> Vector:
        tree = bar_construction.pivot(k, c)
        return {tree[1]: one} if weight(tree) == 1 else {}

    return CobarMorphism(source, operad, generator_image, name="counit")


def cobar_to_operad(cooperad: TruncatedCooperad, operad: TreeOperad, max_arity: Optional[int] = None) -> CobarMorphism:
    """Cobar(P^¡) -> P: the desuspended cogenerators s⁻¹ s e go to the generators e,
    the elements of weight >= 2 to 0."""
    source = CobarConstruction(cooperad, max_arity)
    one = operad.field.one

    def generator_image(k: int, c: int) -> Vector:
        pivot = cooperad.pivot(k, c)
        if weight(pivot) != 1:
            return {}
        return operad.reduce(k, {pivot: one})

    return CobarMorphism(source, operad, generator_image, name="cobar(P^¡) -> P")


def bar_inclusion(cooperad: TruncatedCooperad, bar_construction: BarConstruction, n: int) -> List[Dict[Tree, Any]]:
    """Images of the basis of P^¡(n) in Bar(P)(n): every cogenerator s e is replaced by
    s of the generator e of P."""
    operad = bar_construction.operad
    if not isinstance(operad, TreeOperad):
        raise UnsupportedOperadError(f"{operad.name} has no presentation to include P^¡ through.")
    one = operad.field.one
    decorations: Dict[Tuple[int, int], Vector] = {}

    def decoration(k: int, g: int) -> Vector:
        key = (k, g)
        if key not in decorations:
            decorations[key] = operad.reduce(k, {(k, g, tuple(range(1, k + 1))): one})
        return decorations[key]

    def include(tree: Tree) -> Dict[Tree, Any]:
        if is_leaf(tree):
            return {tree: one}
        k, g, children = tree
        result: Dict[Tree, Any] = {}
        options = [include(child).items() for child in children]
        for x, cx in decoration(k, g).items():
            for combo in product(*options):
                value = cx
                for _, c in combo:
                    value *= c
                add_to(result, (k, x, tuple(t for t, _ in combo)), value)
        return result

    images = []
    for index in range(cooperad.dim(n)):
        image: Dict[Tree, Any] = {}
        for tree, value in cooperad.basis(n)[index].items():
            add_scaled(image, include(tree), value)
        images.append(image)
    return images


@dataclass
class HomologyComparison:
    """How a map between two complexes of one arity behaves on homology."""

    arity: int
    source: Dict[int, int]
    target: Dict[int, int]
    chain_map: bool
    isomorphism: bool

    def as_dict(self) -> Dict[str, Any]:
        return {
            "arity": self.arity,
            "source_homology": {str(d): n for d, n in sorted(self.source.items())},
            "target_homology": {str(d): n for d, n in sorted(self.target.items())},
            "chain_map": self.chain_map,
            "isomorphism": self.isomorphism,
        }


def _degree_dims(count: int, degree: Callable[[int], int]) -> Dict[int, int]:
    dims: Dict[int, int] = {}
    for index in range(count):
        d = degree(index)
        dims[d] = dims.get(d, 0) + 1
    return dims


def _nonzero(dims: Dict[int, int]) -> Dict[int, int]:
    return {d: n for d, n in dims.items() if n}


def compare_cobar_morphism(morphism: CobarMorphism, n: int) -> HomologyComparison:
    """Whether Cobar(C)(n) -> P(n) is a chain map and a homology isomorphism, P having
    zero differential.

    :raises UnsupportedOperadError: If the target has an internal differential.
    """
    target = morphism.target
    if target.differential(n) is not None:
        raise UnsupportedOperadError(f"{target.name} carries a differential.")
    source = morphism.source
    builder, complex_ = source.chain_complex(n)
    field = target.field
    chain_map = all(
        not morphism.image_of(source.tree_differential(tree)) for tree in source.basis(n)
    )
    homology = complex_.homology()
    target_dims = _degree_dims(target.dim(n), lambda x: target.degree(n, x))
    isomorphism = chain_map and _nonzero(homology.as_dict()) == _nonzero(target_dims)
    if isomorphism:
        for degree, representatives in homology.representatives.items():
            labels = builder.labels(degree)
            images = []
            for vector in representatives:
                images.append(morphism.image_of({labels[i]: v for i, v in vector.items()}))
            if len(Subspace(images, target.dim(n), field)) != target_dims.get(degree, 0):
                isomorphism = False
    logger.debug("%s in arity %d: chain map %s, isomorphism %s", morphism.name, n, chain_map, isomorphism)
    return HomologyComparison(n, _nonzero(homology.as_dict()), _nonzero(target_dims), chain_map, isomorphism)


def compare_bar_inclusion(cooperad: TruncatedCooperad, bar_construction: BarConstruction, n: int) -> HomologyComparison:
    """Whether P^¡(n) -> Bar(P)(n) is a chain map and a homology isomorphism, P^¡ having
    zero differential.

    :raises UnsupportedOperadError: If the cooperad carries a differential.
    """
    if cooperad.differential(n) is not None:
        raise UnsupportedOperadError(f"{cooperad.name} carries a differential.")
    field = bar_construction.field
    builder, complex_ = bar_construction.chain_complex(n)
    images = bar_inclusion(cooperad, bar_construction, n)
    chain_map = True
    for image in images:
        boundary: Dict[Tree, Any] = {}
        for tree, value in image.items():
            add_scaled(boundary, bar_construction.tree_differential(tree), value)
        if boundary:
            chain_map = False
            break
    source_dims = _degree_dims(cooperad.dim(n), lambda c: cooperad.degree(n, c))
    homology = complex_.betti()
    isomorphism = chain_map and _nonzero(homology.as_dict()) == _nonzero(source_dims)
    if isomorphism:
        for degree in source_dims:
            included = [
                builder.vector(image, degree)
                for c, image in enumerate(images)
                if cooperad.degree(n, c) == degree
            ]
            boundaries = [col for col in complex_.incoming(degree).columns() if col]
            size = complex_.dim(degree)
            gained = len(Subspace(boundaries + included, size, field)) - len(Subspace(boundaries, size, field))
            if gained != len(included):
                isomorphism = False
    logger.debug("P^¡ -> %s in arity %d: chain map %s, isomorphism %s", bar_construction.name, n, chain_map, isomorphism)
    return HomologyComparison(n, _nonzero(source_dims), _nonzero(homology.as_dict()), chain_map, isomorphism)
