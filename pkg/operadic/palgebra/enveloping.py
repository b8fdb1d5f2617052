"""This module defines the enveloping algebras U(A) of algebras over com, asc and lie,
realized on explicit bases, and their truncations as finite associative algebras.

Elements of U(A) are sparse combinations of keys. U(A) is generated by letters, one
per basis vector for com and lie ("x", i) and two per basis vector for asc: ("l", i)
for a_i acting on the left and ("r", i) for a_i acting on the right.
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from itertools import combinations_with_replacement
from typing import Any, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from operadic.exactalg import Field, SparseMatrix, Vector, add_scaled
from operadic.exceptions import AlgebraError, UnsupportedOperadError
from operadic.palgebra.algebra import PAlgebra, validate_algebra

logger = logging.getLogger(__name__)

Letter = Tuple[str, int]
Key = Hashable

STRAIGHTENING_DEPTH = 512


class EnvelopingAlgebra(ABC):
    """U(A) for a finite dimensional algebra A, with multiplication on keys."""

    def __init__(self, algebra: PAlgebra):
        self.algebra = algebra
        self.field: Field = algebra.field
        self._products: Dict[Tuple[Letter, Key], Vector] = {}

    @property
    @abstractmethod
    def unit(self) -> Key:
        pass

    @abstractmethod
    def letters(self) -> List[Letter]:
        pass

    @abstractmethod
    def letter_key(self, letter: Letter) -> Key:
        """The key of the element a letter stands for."""

    @abstractmethod
    def word(self, key: Key) -> Tuple[Letter, ...]:
        """Letters whose product, left to right, is the key."""

    @abstractmethod
    def _left_multiply(self, letter: Letter, key: Key) -> Vector:
        pass

    @abstractmethod
    def filtration(self, key: Key) -> int:
        pass

    @abstractmethod
    def basis(self, bound: Optional[int] = None) -> List[Key]:
        """Keys of filtration at most bound, in a fixed order."""

    @abstractmethod
    def antipode_letter(self, letter: Letter) -> Vector:
        """The anti-automorphism on a letter, as a combination of letter keys."""

    def letter_weight(self, letter: Letter) -> int:
        return self.algebra.weights[letter[1]]

    def weight(self, key: Key) -> int:
        return sum(self.letter_weight(l) for l in self.word(key))

    def left_multiply(self, letter: Letter, key: Key) -> Vector:
        cached = self._products.get((letter, key))
        if cached is None:
            cached = self._left_multiply(letter, key)
            self._products[(letter, key)] = cached
        return cached

    def act_word(self, word: Sequence[Letter], element: Mapping[Key, Any]) -> Vector:
        """The product word[0] ... word[-1] * element."""
        current = dict(element)
        for letter in reversed(word):
            following: Vector = {}
            for key, value in current.items():
                add_scaled(following, self.left_multiply(letter, key), value)
            current = following
        return current

    def multiply(self, left: Key, right: Key) -> Vector:
        return self.act_word(self.word(left), {right: self.field.one})

    def multiply_elements(self, left: Mapping[Key, Any], right: Mapping[Key, Any]) -> Vector:
        result: Vector = {}
        for a, x in left.items():
            for b, y in right.items():
                add_scaled(result, self.multiply(a, b), x * y)
        return result

    def counit(self, key: Key) -> Any:
        return self.field.one if key == self.unit else self.field.zero

    def antipode(self, key: Key) -> Vector:
        """Image under the anti-automorphism used to turn left modules into right
        modules: x -> -x for lie, the identity for com, a ⊗ b -> b ⊗ a for asc.
        """
        result = {self.unit: self.field.one}
        for letter in self.word(key):
            result = self.multiply_elements(self.antipode_letter(letter), result)
        return result

    def letter_name(self, letter: Letter) -> str:
        return self.algebra.names[letter[1]]

    def render(self, key: Key) -> str:
        word = self.word(key)
        return "*".join(self.letter_name(l) for l in word) if word else "1"

    def truncated(self, bound: int) -> TruncatedAssocAlgebra:
        return TruncatedAssocAlgebra(self, bound)


class LieEnveloping(EnvelopingAlgebra):
    """U(g) on ordered PBW monomials x_{i_1} ... x_{i_k}, i_1 <= ... <= i_k, in the input
    order of the basis; a key is the sorted index tuple.
    """

    @property
    def unit(self) -> Key:
        return ()

    def letters(self) -> List[Letter]:
        return [("x", i) for i in range(self.algebra.dim)]

    def letter_key(self, letter: Letter) -> Key:
        return (letter[1],)

    def word(self, key: Key) -> Tuple[Letter, ...]:
        return tuple(("x", i) for i in key)

    def filtration(self, key: Key) -> int:
        return len(key)

    def basis(self, bound: Optional[int] = None) -> List[Key]:
        if bound is None and self.algebra.dim:
            raise AlgebraError("The enveloping algebra of a nonzero Lie algebra needs a PBW bound.")
        keys: List[Key] = []
        for k in range((bound or 0) + 1):
            keys.extend(combinations_with_replacement(range(self.algebra.dim), k))
        return keys

    def _left_multiply(self, letter: Letter, key: Key) -> Vector:
        return self._straighten(letter[1], key, 0)

    def _straighten(self, i: int, key: Tuple[int, ...], depth: int) -> Vector:
        # x_i x_j = x_j x_i + [x_i, x_j] for j < i
        if depth > STRAIGHTENING_DEPTH:
            raise AlgebraError(f"{self.algebra.name}: PBW straightening does not terminate.")
        one = self.field.one
        if not key or i <= key[0]:
            return {(i,) + key: one}
        j, rest = key[0], key[1:]
        result: Vector = {}
        for tail, value in self._straighten(i, rest, depth + 1).items():
            add_scaled(result, self._straighten(j, tail, depth + 1), value)
        bracket = self.algebra.table("b").get((i, j), {})
        for k, value in bracket.items():
            add_scaled(result, self._straighten(k, rest, depth + 1), value)
        return result

    def antipode_letter(self, letter: Letter) -> Vector:
        return {(letter[1],): -self.field.one}


class ComEnveloping(EnvelopingAlgebra):
    """A₊ = k ⊕ A; keys () for the unit and (i,) for a_i."""

    @property
    def unit(self) -> Key:
        return ()

    def letters(self) -> List[Letter]:
        return [("x", i) for i in range(self.algebra.dim)]

    def letter_key(self, letter: Letter) -> Key:
        return (letter[1],)

    def word(self, key: Key) -> Tuple[Letter, ...]:
        return tuple(("x", i) for i in key)

    def filtration(self, key: Key) -> int:
        return len(key)

    def basis(self, bound: Optional[int] = None) -> List[Key]:
        keys: List[Key] = [()] + [(i,) for i in range(self.algebra.dim)]
        return [k for k in keys if bound is None or len(k) <= bound]

    def _left_multiply(self, letter: Letter, key: Key) -> Vector:
        if not key:
            return {(letter[1],): self.field.one}
        value = self.algebra.table("m").get((letter[1], key[0]), {})
        return {(k,): v for k, v in value.items()}

    def antipode_letter(self, letter: Letter) -> Vector:
        return {(letter[1],): self.field.one}


class AscEnveloping(EnvelopingAlgebra):
    """A₊ ⊗ A₊^op with (a ⊗ b)(a' ⊗ b') = aa' ⊗ b'b. A key (l, r) stands for
    a_{l-1} ⊗ a_{r-1}, index 0 being the unit of A₊.
    """

    @property
    def unit(self) -> Key:
        return (0, 0)

    def letters(self) -> List[Letter]:
        d = self.algebra.dim
        return [("l", i) for i in range(d)] + [("r", i) for i in range(d)]

    def letter_key(self, letter: Letter) -> Key:
        side, i = letter
        return (i + 1, 0) if side == "l" else (0, i + 1)

    def word(self, key: Key) -> Tuple[Letter, ...]:
        l, r = key
        word: List[Letter] = []
        if l:
            word.append(("l", l - 1))
        if r:
            word.append(("r", r - 1))
        return tuple(word)

    def filtration(self, key: Key) -> int:
        return len(self.word(key))

    def basis(self, bound: Optional[int] = None) -> List[Key]:
        d = self.algebra.dim
        keys = [(l, r) for l in range(d + 1) for r in range(d + 1)]
        return [k for k in keys if bound is None or self.filtration(k) <= bound]

    def _left_multiply(self, letter: Letter, key: Key) -> Vector:
        side, i = letter
        l, r = key
        one = self.field.one
        table = self.algebra.table("m")
        if side == "l":
            if not l:
                return {(i + 1, r): one}
            return {(k + 1, r): v for k, v in table.get((i, l - 1), {}).items()}
        if not r:
            return {(l, i + 1): one}
        return {(l, k + 1): v for k, v in table.get((r - 1, i), {}).items()}

    def antipode_letter(self, letter: Letter) -> Vector:
        side, i = letter
        return {self.letter_key(("r" if side == "l" else "l", i)): self.field.one}

    def letter_name(self, letter: Letter) -> str:
        side, i = letter
        return f"{side.upper()}({self.algebra.names[i]})"


def envelope(algebra: PAlgebra) -> EnvelopingAlgebra:
    """The enveloping algebra of an algebra over com, asc or lie.

    :raises UnsupportedOperadError: For custom presentations.
    """
    tag = algebra.presentation.require_classical()
    if tag == "lie":
        return LieEnveloping(algebra)
    if tag == "com":
        return ComEnveloping(algebra)
    if tag == "asc":
        return AscEnveloping(algebra)
    raise UnsupportedOperadError(f"No enveloping algebra for {tag}.")


class TruncatedAssocAlgebra:
    """The part of U(A) of filtration at most bound, with its multiplication table on
    the pairs whose product stays within the bound.
    """

    def __init__(self, enveloping: EnvelopingAlgebra, bound: int):
        self.enveloping = enveloping
        self.bound = bound
        self.field = enveloping.field
        self.keys: List[Key] = enveloping.basis(bound)
        self.position = {k: i for i, k in enumerate(self.keys)}
        self.weights = [enveloping.weight(k) for k in self.keys]
        self.degrees = [enveloping.filtration(k) for k in self.keys]
        self.table: Dict[Tuple[int, int], Vector] = {}
        for a, left in enumerate(self.keys):
            for b, right in enumerate(self.keys):
                if self.degrees[a] + self.degrees[b] > bound:
                    continue
                product = enveloping.multiply(left, right)
                self.table[(a, b)] = {self.position[k]: v for k, v in product.items()}
        logger.debug(
            "U(%s) up to filtration %d: dimension %d, %d products",
            enveloping.algebra.name, bound, len(self.keys), len(self.table),
        )

    @property
    def dim(self) -> int:
        return len(self.keys)

    @property
    def unit(self) -> int:
        return self.position[self.enveloping.unit]

    def dims_by_filtration(self) -> Dict[int, int]:
        dims: Dict[int, int] = {}
        for degree in self.degrees:
            dims[degree] = dims.get(degree, 0) + 1
        return dict(sorted(dims.items()))

    def dims_by_weight(self) -> Dict[int, int]:
        dims: Dict[int, int] = {}
        for weight in self.weights:
            dims[weight] = dims.get(weight, 0) + 1
        return dict(sorted(dims.items()))

    def multiply(self, a: int, b: int) -> Vector:
        return self.table[(a, b)]

    def generator_map(self) -> SparseMatrix:
        """A -> U sending a_i to its letter; a_i ⊗ 1 for asc."""
        algebra = self.enveloping.algebra
        entries = []
        for i in range(algebra.dim):
            side = "l" if algebra.tag == "asc" else "x"
            key = self.enveloping.letter_key((side, i))
            entries.append((self.position[key], i, self.field.one))
        return SparseMatrix.from_entries(entries, (self.dim, algebra.dim), self.field)

    def associativity_failures(self) -> List[str]:
        failures = []
        n = self.dim
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.degrees[a] + self.degrees[b] + self.degrees[c] > self.bound:
                        continue
                    left: Vector = {}
                    for k, v in self.table[(a, b)].items():
                        add_scaled(left, self.table[(k, c)], v)
                    right: Vector = {}
                    for k, v in self.table[(b, c)].items():
                        add_scaled(right, self.table[(a, k)], v)
                    if left != right:
                        failures.append(
                            "(" + ")(".join(self.enveloping.render(self.keys[x]) for x in (a, b, c))
                            + ") is not associative"
                        )
        return failures

    def unit_failures(self) -> List[str]:
        one = self.field.one
        unit = self.unit
        failures = []
        for a in range(self.dim):
            if self.table[(unit, a)] != {a: one} or self.table[(a, unit)] != {a: one}:
                failures.append(f"1 is not a unit for {self.enveloping.render(self.keys[a])}")
        return failures

    def __repr__(self) -> str:
        return f"TruncatedAssocAlgebra(U({self.enveloping.algebra.name}), bound={self.bound}, dim={self.dim})"


def enveloping_algebra(algebra: PAlgebra, bound: int) -> TruncatedAssocAlgebra:
    """U(A) truncated at filtration bound: PBW degree for lie; com and asc are finite
    and the bound only cuts the word length (1 and 2 give all of U).

    :raises AlgebraError: If the algebra is not valid.
    :raises UnsupportedOperadError: For custom presentations.
    """
    validation = validate_algebra(algebra)
    if not validation.valid:
        raise AlgebraError(f"{algebra.name} is not a valid algebra: {validation.violations[0]}")
    return TruncatedAssocAlgebra(envelope(algebra), bound)

