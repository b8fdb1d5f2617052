"""This module contains decorated rooted trees, the basis elements of free operads and
cofree cooperads.

A tree is either a leaf, written as its letter (an int), or a vertex
``(k, g, children)`` decorated by the basis element ``g`` of the arity ``k`` component
of a Σ*-object. A tree is *normal* when the children of every vertex are ordered by
their smallest leaf; normal trees whose leaves are 1..n form a basis of the free
operad in arity n.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from operadic.exactalg import add_to, scaled
from operadic.exceptions import PresentationError
from operadic.operad_core.sigma_object import SigmaObject
from operadic.symcore import Permutation, koszul_sign, set_partitions

Tree = Union[int, Tuple[int, int, Tuple[Any, ...]]]


def is_leaf(tree: Tree) -> bool:
    return isinstance(tree, int)


def leaves(tree: Tree) -> Tuple[int, ...]:
    """Leaf letters in planar order."""
    if is_leaf(tree):
        return (tree,)
    result: List[int] = []
    for child in tree[2]:
        result.extend(leaves(child))
    return tuple(result)


def arity(tree: Tree) -> int:
    return len(leaves(tree))


def min_leaf(tree: Tree) -> int:
    if is_leaf(tree):
        return tree
    return min(min_leaf(child) for child in tree[2])


def weight(tree: Tree) -> int:
    """Number of vertices."""
    if is_leaf(tree):
        return 0
    return 1 + sum(weight(child) for child in tree[2])


def vertices(tree: Tree) -> List[Tuple[int, int]]:
    """Decorations (k, g) in preorder."""
    if is_leaf(tree):
        return []
    result = [(tree[0], tree[1])]
    for child in tree[2]:
        result.extend(vertices(child))
    return result


def relabel(tree: Tree, mapping: Mapping[int, int]) -> Tree:
    if is_leaf(tree):
        return mapping[tree]
    k, g, children = tree
    return (k, g, tuple(relabel(child, mapping) for child in children))


def compress(tree: Tree) -> Tree:
    """Relabels the leaves by 1..n keeping their relative order."""
    letters = sorted(leaves(tree))
    return relabel(tree, {letter: rank for rank, letter in enumerate(letters, start=1)})


def tree_key(tree: Tree) -> Tuple[Any, ...]:
    """Total order on trees: by weight, then structurally."""
    return (weight(tree), _structure_key(tree))


def _structure_key(tree: Tree) -> Tuple[Any, ...]:
    if is_leaf(tree):
        return (0, tree)
    k, g, children = tree
    return (1, k, g, tuple(_structure_key(child) for child in children))


@dataclass(frozen=True)
class Cut:
    """One term of an infinitesimal decomposition: tree = upper ∘_S lower, up to sign.

    The lower tree is grafted at the leaf of the upper tree that carries min(letters),
    and its leaves take the letters in increasing order.
    """

    upper: Tree
    lower: Tree
    letters: Tuple[int, ...]
    sign: int


@dataclass(frozen=True)
class TopDecomposition:
    """tree = upper(lowers[0], ..., lowers[k-1]) with the lowers on blocks ordered by
    their minima."""

    upper: Tree
    blocks: Tuple[Tuple[int, ...], ...]
    lowers: Tuple[Tree, ...]
    sign: int


class DecoratedTrees:
    """Calculus of trees decorated by a reduced Σ*-object: normal forms, grafting,
    decompositions, parsing and rendering. All results are memoized.
    """

    def __init__(self, generators: SigmaObject):
        """
        :param generators: The decorations. Must be reduced.
        :type generators: SigmaObject
        :raises PresentationError: If the generators have arity 0 or 1.
        """
        if not generators.is_reduced():
            raise PresentationError("Generators must live in arities >= 2.")
        self.generators = generators
        self.field = generators.field
        self._degrees: Dict[Tree, int] = {}
        self._normal: Dict[Tree, Dict[Tree, Any]] = {}
        self._basis: Dict[Tuple[int, ...], List[Tree]] = {}

    def degree(self, tree: Tree) -> int:
        if is_leaf(tree):
            return 0
        cached = self._degrees.get(tree)
        if cached is None:
            k, g, children = tree
            cached = self.generators.degree(k, g) + sum(self.degree(c) for c in children)
            self._degrees[tree] = cached
        return cached

    def vertex_degrees(self, tree: Tree) -> List[int]:
        return [self.generators.degree(k, g) for k, g in vertices(tree)]

    def normalize(self, tree: Tree) -> Dict[Tree, Any]:
        """Rewrites any tree as a combination of normal trees, applying the Σ-action on
        decorations and the Koszul sign of the reordered subtrees."""
        one = self.field.one
        if is_leaf(tree):
            return {tree: one}
        cached = self._normal.get(tree)
        if cached is not None:
            return cached
        k, g, children = tree
        child_terms = [self.normalize(child) for child in children]
        result: Dict[Tree, Any] = {}
        for combo in product(*(terms.items() for terms in child_terms)):
            subtrees = [t for t, _ in combo]
            coefficient = one
            for _, c in combo:
                coefficient *= c
            order = sorted(range(k), key=lambda a: min_leaf(subtrees[a]))
            sign = koszul_sign([self.degree(t) for t in subtrees], order)
            rho = Permutation([a + 1 for a in order])
            decoration = self.generators.component(k).act_vector(rho, {g: one})
            ordered = tuple(subtrees[a] for a in order)
            for g2, value in decoration.items():
                add_to(result, (k, g2, ordered), coefficient * value * sign)
        self._normal[tree] = result
        return result

    def normalize_combination(self, combination: Mapping[Tree, Any]) -> Dict[Tree, Any]:
        result: Dict[Tree, Any] = {}
        for tree, coefficient in combination.items():
            for normal, value in self.normalize(tree).items():
                add_to(result, normal, coefficient * value)
        return result

    def _normal_trees(self, letters: Tuple[int, ...]) -> List[Tree]:
        cached = self._basis.get(letters)
        if cached is not None:
            return cached
        if len(letters) == 1:
            trees: List[Tree] = [letters[0]]
        else:
            trees = []
            for k in self.generators.arities():
                if k > len(letters):
                    continue
                for blocks in set_partitions(letters, k):
                    options = [self._normal_trees(block) for block in blocks]
                    for g in range(self.generators.dim(k)):
                        for children in product(*options):
                            trees.append((k, g, tuple(children)))
        trees.sort(key=tree_key)
        self._basis[letters] = trees
        return trees

    def basis(self, n: int, weight_: Optional[int] = None) -> List[Tree]:
        """Normal trees with leaves 1..n, optionally of a given weight."""
        trees = self._normal_trees(tuple(range(1, n + 1)))
        if weight_ is None:
            return list(trees)
        return [t for t in trees if weight(t) == weight_]

    def act(self, tree: Tree, sigma: Permutation) -> Dict[Tree, Any]:
        """Right action: the leaf ℓ is renamed σ^{-1}(ℓ)."""
        inverse = sigma.inverse()
        return self.normalize(relabel(tree, {l: inverse(l) for l in range(1, sigma.n + 1)}))

    def compose_shuffle(self, outer: Tree, inner: Tree, letters: Sequence[int]) -> Dict[Tree, Any]:
        """Grafts inner on outer so that inner's leaves carry the given letters.

        The root of inner goes to the leaf of outer whose rank among the letters
        {min(letters)} ∪ complement is the rank of min(letters).
        """
        a, b = arity(outer), arity(inner)
        n = a + b - 1
        letters = tuple(sorted(letters))
        if len(letters) != b:
            raise PresentationError(f"{len(letters)} letters for an arity {b} tree.")
        chosen = set(letters)
        upper_letters = sorted([x for x in range(1, n + 1) if x not in chosen] + [letters[0]])
        position = upper_letters.index(letters[0]) + 1
        grafted_inner = relabel(inner, {l: letters[l - 1] for l in range(1, b + 1)})
        after = self._degree_after_leaf(outer, position)
        grafted = self._substitute(outer, position, grafted_inner, upper_letters)
        sign = self.field.sign(self.degree(inner) * after)
        return scaled(self.normalize(grafted), sign)

    def compose(self, outer: Tree, i: int, inner: Tree) -> Dict[Tree, Any]:
        """Positional partial composition outer ∘_i inner."""
        b = arity(inner)
        return self.compose_shuffle(outer, inner, range(i, i + b))

    def _degree_after_leaf(self, tree: Tree, letter: int) -> int:
        seen = False
        total = 0
        stack: List[Tree] = [tree]
        while stack:
            node = stack.pop()
            if is_leaf(node):
                if node == letter:
                    seen = True
                continue
            if seen:
                total += self.generators.degree(node[0], node[1])
            stack.extend(reversed(node[2]))
        return total

    def _substitute(self, tree: Tree, letter: int, inner: Tree, upper_letters: Sequence[int]) -> Tree:
        if is_leaf(tree):
            return inner if tree == letter else upper_letters[tree - 1]
        k, g, children = tree
        return (k, g, tuple(self._substitute(c, letter, inner, upper_letters) for c in children))

    def walk(self, tree: Tree, path: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], Tree]]:
        yield path, tree
        if not is_leaf(tree):
            for index, child in enumerate(tree[2]):
                yield from self.walk(child, path + (index,))

    @staticmethod
    def replace(tree: Tree, path: Tuple[int, ...], new: Tree) -> Tree:
        if not path:
            return new
        k, g, children = tree
        head, rest = path[0], path[1:]
        replaced = list(children)
        replaced[head] = DecoratedTrees.replace(children[head], rest, new)
        return (k, g, tuple(replaced))

    def cuts(self, tree: Tree, include_root: bool = False, include_leaves: bool = False) -> List[Cut]:
        """Infinitesimal decompositions of a normal tree, one per subtree.

        :param include_root: Also return id ∘ tree.
        :param include_leaves: Also return tree ∘_ℓ id for every leaf ℓ.
        """
        total = self.degree(tree)
        n = arity(tree)
        result: List[Cut] = []
        before = 0
        for path, subtree in self.walk(tree):
            if is_leaf(subtree):
                continue
            here = self.generators.degree(subtree[0], subtree[1])
            if path or include_root:
                letters = tuple(sorted(leaves(subtree)))
                lower_degree = self.degree(subtree)
                after = total - before - lower_degree
                upper = compress(self.replace(tree, path, letters[0]))
                lower = compress(subtree)
                result.append(Cut(upper, lower, letters, -1 if lower_degree * after % 2 else 1))
            before += here
        if include_leaves:
            for letter in range(1, n + 1):
                result.append(Cut(tree, 1, (letter,), 1))
        return result

    def top_decompositions(self, tree: Tree) -> List[TopDecomposition]:
        """All ways to write a normal tree as an upper subtree containing the root with
        subtrees (or bare leaves) grafted on its leaves."""
        result: List[TopDecomposition] = []
        for upper, segments in self._tops(tree):
            pieces = [(letter, piece) for marker, letter, piece, _ in segments if marker]
            pieces.sort(key=lambda item: item[0])
            degrees = [degree for _, _, _, degree in segments]
            upper_ids = [i for i, s in enumerate(segments) if not s[0]]
            piece_ids = sorted(
                (i for i, s in enumerate(segments) if s[0]), key=lambda i: segments[i][1]
            )
            sign = koszul_sign(degrees, upper_ids + piece_ids)
            blocks = tuple(tuple(sorted(leaves(piece))) for _, piece in pieces)
            result.append(
                TopDecomposition(
                    upper=compress(upper),
                    blocks=blocks,
                    lowers=tuple(compress(piece) for _, piece in pieces),
                    sign=sign,
                )
            )
        return result

    def _tops(self, tree: Tree) -> List[Tuple[Tree, List[Tuple[bool, int, Tree, int]]]]:
        # Segments are (is_piece, min letter, piece, degree) in preorder.
        k, g, children = tree
        per_child = []
        for child in children:
            if is_leaf(child):
                per_child.append([(child, [(True, child, child, 0)])])
                continue
            options = [(min_leaf(child), [(True, min_leaf(child), child, self.degree(child))])]
            options.extend(self._tops(child))
            per_child.append(options)
        head = (False, 0, tree, self.generators.degree(k, g))
        results = []
        for combo in product(*per_child):
            segments = [head]
            for _, segs in combo:
                segments.extend(segs)
            results.append(((k, g, tuple(up for up, _ in combo)), segments))
        return results

    def render(self, tree: Tree) -> str:
        if is_leaf(tree):
            return str(tree)
        k, g, children = tree
        name = self.generators.names(k)[g]
        return f"{name}(" + ",".join(self.render(c) for c in children) + ")"

    def render_combination(self, combination: Mapping[Tree, Any]) -> str:
        if not combination:
            return "0"
        terms = []
        for tree in sorted(combination, key=tree_key):
            terms.append(f"{self.field.to_text(combination[tree])}*{self.render(tree)}")
        return " + ".join(terms)

    def parse(self, text: str) -> Tree:
        """Reads a tree written as nested applications, e.g. ``b(b(3,1),2)``.

        The result need not be normal; pass it through :meth:`normalize`.

        :raises PresentationError: On syntax errors or unknown names.
        """
        tokens = re.findall(r"\d+|[A-Za-z_][A-Za-z_0-9']*|[(),]|\S", text)
        position = 0

        def expect(token: str) -> None:
            nonlocal position
            if position >= len(tokens) or tokens[position] != token:
                raise PresentationError(f"Expected {token!r} in {text!r}.")
            position += 1

        def read() -> Tree:
            nonlocal position
            if position >= len(tokens):
                raise PresentationError(f"Unexpected end of {text!r}.")
            token = tokens[position]
            position += 1
            if token.isdigit():
                return int(token)
            if not re.match(r"[A-Za-z_]", token):
                raise PresentationError(f"Unexpected {token!r} in {text!r}.")
            expect("(")
            children = [read()]
            while position < len(tokens) and tokens[position] == ",":
                position += 1
                children.append(read())
            expect(")")
            k, g = self.generators.lookup(token)
            if k != len(children):
                raise PresentationError(f"{token} has arity {k}, used with {len(children)} inputs.")
            return (k, g, tuple(children))

        tree = read()
        if position != len(tokens):
            raise PresentationError(f"Trailing input in {text!r}.")
        letters = sorted(leaves(tree))
        if letters != list(range(1, len(letters) + 1)):
            raise PresentationError(f"Leaves of {text!r} must be 1..n, each once.")
        return tree
