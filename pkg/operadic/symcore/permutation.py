"""This module contains the Permutation class and shuffle enumeration.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, List, Sequence, Tuple


class Permutation:
    """A bijection of {1, ..., n}, written through its images.

    Products compose right to left: (σ * τ)(i) = σ(τ(i)).
    """

    __slots__ = ("_images",)

    def __init__(self, images: Sequence[int]):
        """
        :param images: images[i - 1] is the image of i.
        :type images: sequence of int
        """
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"{list(images)} is not a permutation of 1..{n}.")
        self._images: Tuple[int, ...] = tuple(images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, i: int) -> Permutation:
        """The adjacent transposition s_i exchanging i and i + 1."""
        if not 1 <= i < n:
            raise ValueError(f"s_{i} is not defined on {n} letters.")
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(images)

    @classmethod
    def sorting(cls, labels: Sequence[int]) -> Permutation:
        """The permutation π with π(a) = rank of labels[a - 1] among labels."""
        order = sorted(range(len(labels)), key=lambda a: labels[a])
        images = [0] * len(labels)
        for rank, a in enumerate(order, start=1):
            images[a] = rank
        return cls(images)

    @property
    def n(self) -> int:
        return len(self._images)

    @property
    def images(self) -> Tuple[int, ...]:
        return self._images

    def __call__(self, i: int) -> int:
        return self._images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.n != self.n:
            raise ValueError("Permutations of different sizes.")
        return Permutation([self._images[j - 1] for j in other._images])

    def inverse(self) -> Permutation:
        images = [0] * self.n
        for i, j in enumerate(self._images, start=1):
            images[j - 1] = i
        return Permutation(images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._images, start=1))

    def sign(self) -> int:
        inversions = sum(
            1
            for a in range(self.n)
            for b in range(a + 1, self.n)
            if self._images[a] > self._images[b]
        )
        return -1 if inversions % 2 else 1

    def reduced_word(self) -> List[int]:
        """Indices i_1, ..., i_k with self = s_{i_1} * ... * s_{i_k}, k minimal."""
        images = list(self._images)
        recorded: List[int] = []
        while True:
            for i in range(len(images) - 1):
                if images[i] > images[i + 1]:
                    images[i], images[i + 1] = images[i + 1], images[i]
                    recorded.append(i + 1)
                    break
            else:
                break
        recorded.reverse()
        return recorded

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and other._images == self._images

    def __hash__(self) -> int:
        return hash(self._images)

    def __repr__(self) -> str:
        return f"Permutation({list(self._images)})"

    def __str__(self) -> str:
        return "[" + " ".join(str(i) for i in self._images) + "]"


def all_permutations(n: int) -> List[Permutation]:
    """Σ_n in lexicographic order of images."""
    return [Permutation(p) for p in permutations(range(1, n + 1))]


@lru_cache(None)
def _shuffle_images(block_sizes: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    r = sum(block_sizes)
    results: List[Tuple[int, ...]] = []

    def extend(remaining: Tuple[int, ...], sizes: Tuple[int, ...], prefix: List[Tuple[int, ...]]) -> None:
        if not sizes:
            images: List[int] = []
            for block in prefix:
                images.extend(block)
            results.append(tuple(images))
            return
        for chosen in combinations(remaining, sizes[0]):
            rest = tuple(x for x in remaining if x not in chosen)
            extend(rest, sizes[1:], prefix + [chosen])

    extend(tuple(range(1, r + 1)), block_sizes, [])
    return tuple(sorted(results))


def shuffles(*block_sizes: int) -> List[Permutation]:
    """The (i_1, ..., i_k)-shuffles: permutations increasing on each consecutive block,
    in lexicographic order of images. Empty blocks are allowed.
    """
    if any(size < 0 for size in block_sizes):
        raise ValueError("Block sizes must be nonnegative.")
    return [Permutation(images) for images in _shuffle_images(tuple(block_sizes))]


def set_partitions(letters: Sequence[int], k: int) -> Iterable[Tuple[Tuple[int, ...], ...]]:
    """Partitions of letters into k nonempty blocks, blocks ordered by their minimum."""
    letters = tuple(letters)
    n = len(letters)
    if k <= 0 or k > n:
        return

    def grow(position: int, blocks: List[List[int]]) -> Iterable[Tuple[Tuple[int, ...], ...]]:
        if n - position < k - len(blocks):
            return
        if position == n:
            if len(blocks) == k:
                yield tuple(tuple(block) for block in blocks)
            return
        letter = letters[position]
        for block in blocks:
            block.append(letter)
            yield from grow(position + 1, blocks)
            block.pop()
        if len(blocks) < k:
            blocks.append([letter])
            yield from grow(position + 1, blocks)
            blocks.pop()

    yield from grow(0, [])


def koszul_sign(degrees: Sequence[int], order: Sequence[int]) -> int:
    """Sign of rearranging graded items.

    :param degrees: Degrees of the items in their original order.
    :param order: order[b] is the original index of the item placed at position b.
    :return: +1 or -1, the Koszul sign of the rearrangement.
    """
    odd = [degrees[a] % 2 for a in order]
    flips = 0
    for b in range(len(order)):
        if not odd[b]:
            continue
        for c in range(b + 1, len(order)):
            if odd[c] and order[b] > order[c]:
                flips += 1
    return -1 if flips % 2 else 1
