"""This module contains RelativeFactorization: U(A) as a free right U(B)-module along a
morphism f: B -> A, with a basis of complement monomials.

Every product letter * c of a letter of A and a complement monomial is rewritten as a
sum of c' * f(b_1 ... b_k), which is what induction U(A) ⊗_{U(B)} - needs.
"""
from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional, Tuple

from operadic.exactalg import SparseMatrix, Span, Subspace, Vector, add_to, inverse
from operadic.exceptions import TruncationError, UnsupportedOperadError
from operadic.palgebra.algebra import AlgebraMorphism, PAlgebra
from operadic.palgebra.enveloping import EnvelopingAlgebra, Key, Letter, LieEnveloping, envelope

logger = logging.getLogger(__name__)

Term = Tuple[Any, Key, Tuple[Letter, ...]]


class RelativeFactorization:
    """Complement monomials of U(A) over the image of U(B).

    For lie, f must be injective: A is rebased on standard vectors completing f(B)
    followed by the images f(b_k), so that ordered monomials split into a complement
    part and a word in B. For com and asc only B = 0 (the complement is all of U(A))
    and surjective f (the complement is the unit) are available.
    """

    def __init__(self, morphism: AlgebraMorphism, pbw_bound: Optional[int] = None):
        """
        :param morphism: f: B -> A.
        :type morphism: AlgebraMorphism
        :param pbw_bound: Bound on the length of complement monomials; needed when the
            complement weights do not all have one strict sign.
        :type pbw_bound: int, optional
        :raises UnsupportedOperadError: Outside the supported cases.
        :raises TruncationError: If the weights do not bound the complement and no
            pbw_bound is given.
        """
        self.morphism = morphism
        self.source: PAlgebra = morphism.source
        self.target: PAlgebra = morphism.target
        self.field = self.target.field
        self.pbw_bound = pbw_bound
        self.tag = self.target.presentation.require_classical()
        self.enveloping: EnvelopingAlgebra = envelope(self.target)
        self.source_enveloping: EnvelopingAlgebra = envelope(self.source)
        self.sign = 0
        if self.tag == "lie":
            self._init_lie()
        elif self.source.dim == 0:
            self.kind = "absolute"
        elif morphism.is_surjective():
            self.kind = "trivial"
            self._init_section()
        else:
            raise UnsupportedOperadError(
                f"Induction along {self.source.name} -> {self.target.name} over {self.tag} is only "
                f"available for the zero algebra or a surjective morphism."
            )
        logger.debug(
            "Factorization of U(%s) over U(%s): %s, complement letters %s",
            self.target.name, self.source.name, self.kind, self.complement_names(),
        )

    def _init_lie(self) -> None:
        if not self.morphism.is_injective():
            raise UnsupportedOperadError(
                f"{self.source.name} -> {self.target.name}: relative constructions over lie need an "
                f"injective morphism."
            )
        self.kind = "lie"
        d = self.target.dim
        images = [self.morphism.image(k) for k in range(self.source.dim)]
        pivots = set(Subspace(images, d, self.field).pivots)
        self.complement = [j for j in range(d) if j not in pivots]
        self.rank = len(self.complement)
        one = self.field.one
        columns = [{j: one} for j in self.complement] + images
        names = [self.target.names[j] for j in self.complement] + [
            f"f({n})" for n in self.source.names
        ]
        self.rebased = self.target.rebased(SparseMatrix.from_columns(columns, d, self.field), names)
        self.change = inverse(SparseMatrix.from_columns(columns, d, self.field))
        self._rebased_enveloping = LieEnveloping(self.rebased)
        self._check_truncation()

    def _init_section(self) -> None:
        images = [self.morphism.image(k) for k in range(self.source.dim)]
        span = Span(images, self.target.dim, self.field)
        self._section: Dict[int, Vector] = {}
        for j in range(self.target.dim):
            self._section[j] = span.coordinates({j: self.field.one}) or {}

    def _check_truncation(self) -> None:
        if self.pbw_bound is not None:
            return
        weights = [self.rebased.weights[k] for k in range(self.rank)]
        if not weights:
            return
        if all(w > 0 for w in weights):
            self.sign = 1
        elif all(w < 0 for w in weights):
            self.sign = -1
        else:
            offending = next(k for k, w in enumerate(weights) if w == 0 or w * weights[0] < 0)
            raise TruncationError(
                f"{self.rebased.names[offending]} has weight {weights[offending]} while other "
                f"complement generators do not share its sign; pass a PBW bound."
            )
        for name, w in zip(self.source.names, self.source.weights):
            if w * self.sign > 0:
                raise TruncationError(
                    f"{name} in {self.source.name} has weight {w}, of the same sign as the "
                    f"complement; pass a PBW bound."
                )

    @property
    def unit(self) -> Key:
        if self.kind == "lie":
            return ()
        return self.enveloping.unit

    def complement_names(self) -> List[str]:
        if self.kind == "lie":
            return self.rebased.names[: self.rank]
        if self.kind == "absolute":
            return list(self.target.names)
        return []

    def complement_weight(self, key: Key) -> int:
        if self.kind == "lie":
            return sum(self.rebased.weights[i] for i in key)
        return self.enveloping.weight(key)

    def complement_filtration(self, key: Key) -> int:
        if self.kind == "lie":
            return len(key)
        return self.enveloping.filtration(key)

    def complement_keys(self, limit: int) -> List[Key]:
        """Complement monomials: of length at most the PBW bound when one is set,
        otherwise of weight at most limit in absolute value.
        """
        if self.kind == "trivial":
            return [self.unit]
        if self.kind == "absolute":
            return self.enveloping.basis()
        weights = self.rebased.weights
        keys: List[Key] = []

        def grow(prefix: Tuple[int, ...], start: int, total: int) -> None:
            keys.append(prefix)
            if self.pbw_bound is not None and len(prefix) >= self.pbw_bound:
                return
            for i in range(start, self.rank):
                following = total + abs(weights[i])
                if self.pbw_bound is None and following > limit:
                    continue
                grow(prefix + (i,), i, following)

        grow((), 0, 0)
        return keys

    def complement_word(self, key: Key) -> Tuple[Letter, ...]:
        """Letters of A whose product, left to right, is the complement monomial."""
        if self.kind == "lie":
            return tuple(("x", self.complement[i]) for i in key)
        if self.kind == "absolute":
            return self.enveloping.word(key)
        return ()

    def render(self, key: Key) -> str:
        if self.kind == "lie":
            return "*".join(self.rebased.names[i] for i in key) if key else "1"
        return self.enveloping.render(key)

    def source_letter_image(self, letter: Letter) -> Vector:
        """f on a letter of B, as a combination of letters of A."""
        tag, k = letter
        return {(tag, j): v for j, v in self.morphism.image(k).items()}

    def left_multiply(self, letter: Letter, key: Key) -> List[Term]:
        """letter * key as terms (coefficient, complement key, word in letters of B)."""
        if self.kind == "absolute":
            return [(v, k, ()) for k, v in self.enveloping.left_multiply(letter, key).items()]
        if self.kind == "trivial":
            tag, j = letter
            return [(v, key, ((tag, k),)) for k, v in self._section[j].items()]
        collected: Dict[Tuple[Key, Tuple[Letter, ...]], Any] = {}
        for k, coefficient in self.change.column(letter[1]).items():
            for monomial, value in self._rebased_enveloping.left_multiply(("x", k), key).items():
                head = tuple(i for i in monomial if i < self.rank)
                tail = tuple(("x", i - self.rank) for i in monomial if i >= self.rank)
                add_to(collected, (head, tail), coefficient * value)
        return [(v, head, tail) for (head, tail), v in collected.items()]

    def __repr__(self) -> str:
        return f"RelativeFactorization(U({self.target.name}) over U({self.source.name}), {self.kind})"
