"""This module builds the twisted composite products P ∘_α C (left) and C ∘_α P
(right) of a twisting morphism, arity by arity, as chain complexes.

A basis element of the composite in arity n is a triple (x; blocks; y_1, ..., y_k):
x in the top factor of arity k, the blocks a partition of 1..n ordered by their
minima and y_j in the bottom factor on the letters of block j.
"""
from __future__ import annotations

import logging
from enum import Enum, auto, unique
from itertools import chain, product
from typing import Any, Callable, Dict, Iterator, List, Tuple

from operadic.exactalg import ChainComplex, ComplexBuilder, add_to
from operadic.exceptions import ShapeError
from operadic.koszul_machine.twisting import TwistingMorphism
from operadic.operad_core import TruncatedCooperad, TruncatedOperad
from operadic.symcore import Permutation, koszul_sign, set_partitions

logger = logging.getLogger(__name__)

Label = Tuple[int, Tuple[Tuple[int, ...], ...], Tuple[int, ...]]


@unique
class Side(Enum):
    """Enumeration, represent the side of a twisted composite product."""

    LEFT = auto()
    RIGHT = auto()

    def __str__(self) -> str:
        return f"{self.name} (side) object"

    @staticmethod
    def from_string(text: str) -> Side:
        try:
            return Side[text.strip().upper()]
        except KeyError:
            raise ShapeError(f"Unknown side {text!r}; use left or right.") from None


def composite_labels(
    top_dim: Callable[[int], int], bottom_dim: Callable[[int], int], n: int
) -> Iterator[Label]:
    for k in range(1, n + 1):
        if not top_dim(k):
            continue
        for blocks in set_partitions(range(1, n + 1), k):
            ranges = [range(bottom_dim(len(b))) for b in blocks]
            for x in range(top_dim(k)):
                for ys in product(*ranges):
                    yield (x, blocks, tuple(ys))


class TwistedCompositeProduct:
    """The arity n component of P ∘_α C or C ∘_α P with d = d_∘ + d_α."""

    def __init__(self, alpha: TwistingMorphism, side: Side, n: int):
        """
        :param alpha: A validated twisting morphism C -> P.
        :type alpha: TwistingMorphism
        :param side: LEFT for P ∘_α C, RIGHT for C ∘_α P.
        :type side: Side
        :param n: The arity.
        :type n: int
        :raises ShapeError: If n exceeds the truncation of α.
        """
        if n < 1 or n > alpha.max_arity:
            raise ShapeError(f"Arity {n} outside 1..{alpha.max_arity}.")
        self.alpha = alpha
        self.side = side
        self.n = n
        self.cooperad: TruncatedCooperad = alpha.cooperad
        self.operad: TruncatedOperad = alpha.operad
        self.field = self.operad.field
        if side is Side.LEFT:
            self._top, self._bottom = self.operad, self.cooperad
        else:
            self._top, self._bottom = self.cooperad, self.operad

    def basis(self) -> List[Label]:
        return list(composite_labels(self._top.dim, self._bottom.dim, self.n))

    def degree(self, label: Label) -> int:
        x, blocks, ys = label
        return self._top.degree(len(blocks), x) + sum(
            self._bottom.degree(len(b), y) for b, y in zip(blocks, ys)
        )

    def render(self, label: Label) -> str:
        x, blocks, ys = label
        pieces = ", ".join(
            f"{self._bottom.render(len(b), y)}@{''.join(map(str, b))}" for b, y in zip(blocks, ys)
        )
        return f"{self._top.render(len(blocks), x)}[{pieces}]"

    def differential(self, label: Label) -> Dict[Label, Any]:
        result: Dict[Label, Any] = {}
        self._internal(label, result)
        if self.side is Side.LEFT:
            self._left_twist(label, result)
        else:
            self._right_twist(label, result)
        return result

    def _internal(self, label: Label, result: Dict[Label, Any]) -> None:
        x, blocks, ys = label
        k = len(blocks)
        d_top = self._top.differential(k)
        if d_top is not None:
            for x2, value in d_top.column(x).items():
                add_to(result, (x2, blocks, ys), value)
        passed = self._top.degree(k, x)
        for j, (block, y) in enumerate(zip(blocks, ys)):
            d_bottom = self._bottom.differential(len(block))
            if d_bottom is not None:
                sign = self.field.sign(passed)
                for y2, value in d_bottom.column(y).items():
                    add_to(result, (x, blocks, ys[:j] + (y2,) + ys[j + 1 :]), sign * value)
            passed += self._bottom.degree(len(block), y)

    def _right_twist(self, label: Label, result: Dict[Label, Any]) -> None:
        # c ⊗ p_1..p_k: split c = u ∘_S l, send l through α and compose α(l) with the
        # p_x for x in S; the merged piece sits at the input min(S) of u.
        c, blocks, ps = label
        k = len(blocks)
        cooperad, operad, field = self.cooperad, self.operad, self.field
        p_degrees = [operad.degree(len(b), p) for b, p in zip(blocks, ps)]
        for a, u, b, l, letters, coefficient in cooperad.decompose(k, c, include_root=True):
            image = self.alpha.image(b, l)
            if not image:
                continue
            union = tuple(sorted(chain.from_iterable(blocks[x - 1] for x in letters)))
            rank = {letter: r for r, letter in enumerate(union, start=1)}
            pieces = [
                (tuple(rank[y] for y in blocks[x - 1]), {ps[x - 1]: field.one}) for x in letters
            ]
            merged = operad.compose_full(image, b, pieces)
            if not merged:
                continue
            first = letters[0]
            kept = sorted([x for x in range(1, k + 1) if x not in letters] + [first])
            order: List[int] = []
            for x in kept:
                if x == first:
                    order.append(0)
                    order.extend(letters)
                else:
                    order.append(x)
            image_degree = self.alpha.degree + cooperad.degree(b, l)
            sign = koszul_sign([image_degree] + p_degrees, order) * field.sign(
                self.alpha.degree * cooperad.degree(a, u)
            )
            new_blocks = tuple(union if x == first else blocks[x - 1] for x in kept)
            for y, value in merged.items():
                new_ps = tuple(y if x == first else ps[x - 1] for x in kept)
                add_to(result, (u, new_blocks, new_ps), coefficient * sign * value)

    def _left_twist(self, label: Label, result: Dict[Label, Any]) -> None:
        # p ⊗ c_1..c_k: split c_j = u(l_1..l_m) with u at the root, compose α(u) into
        # the input j of p and keep the l_i as new pieces.
        p, blocks, cs = label
        k = len(blocks)
        cooperad, operad, field = self.cooperad, self.operad, self.field
        one = field.one
        p_degree = operad.degree(k, p)
        c_degrees = [cooperad.degree(len(b), c) for b, c in zip(blocks, cs)]
        before = 0
        for j, (block, c) in enumerate(zip(blocks, cs)):
            for m, u, sub_blocks, lowers, coefficient in cooperad.top_decompose(len(block), c):
                image = self.alpha.image(m, u)
                if not image:
                    continue
                composed = operad.compose({p: one}, k, j + 1, image, m)
                if not composed:
                    continue
                image_degree = self.alpha.degree + cooperad.degree(m, u)
                sign = field.sign(self.alpha.degree * (p_degree + before) + image_degree * before)
                pieces = [(blocks[i], cs[i], c_degrees[i]) for i in range(j)]
                for sub, (size, lower) in zip(sub_blocks, lowers):
                    pieces.append((tuple(block[y - 1] for y in sub), lower, cooperad.degree(size, lower)))
                pieces.extend((blocks[i], cs[i], c_degrees[i]) for i in range(j + 1, k))
                order = sorted(range(len(pieces)), key=lambda a: pieces[a][0][0])
                sign *= koszul_sign([piece[2] for piece in pieces], order)
                moved = operad.act_vector(len(pieces), composed, Permutation([a + 1 for a in order]))
                new_blocks = tuple(pieces[a][0] for a in order)
                new_cs = tuple(pieces[a][1] for a in order)
                for y, value in moved.items():
                    add_to(result, (y, new_blocks, new_cs), coefficient * sign * value)
            before += c_degrees[j]

    def complex(self, check: bool = True) -> ChainComplex:
        """
        :raises ComplexError: If d∘d does not vanish.
        """
        builder = ComplexBuilder(self.field)
        for label in self.basis():
            builder.add(label, self.degree(label))
        complex_ = builder.build(self.differential, render=self.render, check=check)
        logger.debug(
            "%s twisted composite of %s and %s in arity %d: %s",
            self.side.name.lower(), self.cooperad.name, self.operad.name, self.n, complex_,
        )
        return complex_


def twisted_composite(
    cooperad: TruncatedCooperad,
    operad: TruncatedOperad,
    alpha: TwistingMorphism,
    side: Side,
    n: int,
) -> ChainComplex:
    """The arity n component of P ∘_α C (LEFT) or C ∘_α P (RIGHT).

    :raises ShapeError: If α does not go from cooperad to operad, or n is too big.
    :raises ComplexError: If d∘d does not vanish.
    """
    if alpha.cooperad is not cooperad or alpha.operad is not operad:
        raise ShapeError("The twisting morphism does not go from the given cooperad to the operad.")
    if isinstance(side, str):
        side = Side.from_string(side)
    return TwistedCompositeProduct(alpha, side, n).complex()
