"""This module contains semi-infinite structures on a weight-graded algebra A: a
subalgebra B with a complementary subalgebra N, and the validation of the conditions
that make U(A) factor as U(B) ⊗ U(N) ≅ U(N) ⊗ U(B) with continuous straightening.

Every condition is checked weight by weight on the PBW monomials of filtration at most
the bound; violations are results, each with a witness.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List, Optional, Tuple

from operadic.exactalg import Span, Vector, add_scaled
from operadic.exceptions import AlgebraError
from operadic.palgebra import AlgebraMorphism, EnvelopingAlgebra, PAlgebra, envelope, validate_algebra
from operadic.palgebra.enveloping import Key

logger = logging.getLogger(__name__)

CONDITIONS = {
    1: "U(B) and U(N) embed as graded subalgebras of U(A)",
    2: "U(N) is non-negatively graded with U(N)_0 = k and finite components",
    3: "U(B) is non-positively graded",
    4: "U(B) ⊗ U(N) -> U(A) and U(N) ⊗ U(B) -> U(A) are bijective in each weight",
    5: "the straightening map is continuous",
}

HOM_ACTION = (
    "U(A) acts on Hom(BD(A,B,A), M) through the outermost bar slot, via its augmentation; "
    "the complex is B-side cochains tensored with N-side chains with trivial coefficients"
)


class SemiInfiniteStructure:
    """A with f: B -> A and g: N -> A, N splitting the cokernel of f."""

    __slots__ = ("algebra", "b_morphism", "n_morphism", "name")

    def __init__(self, algebra: PAlgebra, b_morphism: AlgebraMorphism, n_morphism: AlgebraMorphism, name: Optional[str] = None):
        """
        :raises AlgebraError: If a morphism does not land in A or A is not over a
            classical operad.
        """
        for morphism in (b_morphism, n_morphism):
            if morphism.target is not algebra:
                raise AlgebraError(f"{morphism.source.name} does not map into {algebra.name}.")
        algebra.presentation.require_classical()
        self.algebra = algebra
        self.b_morphism = b_morphism
        self.n_morphism = n_morphism
        self.name = name or f"({algebra.name}, {b_morphism.source.name}, {n_morphism.source.name})"

    @property
    def subalgebra(self) -> PAlgebra:
        return self.b_morphism.source

    @property
    def complement(self) -> PAlgebra:
        return self.n_morphism.source

    @classmethod
    def from_subalgebras(
        cls,
        algebra: PAlgebra,
        b_names: List[str],
        n_names: List[str],
        name: Optional[str] = None,
    ) -> SemiInfiniteStructure:
        """B and N spanned by basis vectors of A, given by name.

        :raises AlgebraError: If a name is unknown or a span is not a subalgebra.
        """
        one = algebra.field.one
        _, b_morphism = algebra.subalgebra([{algebra.index(n): one} for n in b_names], b_names, name="B")
        _, n_morphism = algebra.subalgebra([{algebra.index(n): one} for n in n_names], n_names, name="N")
        return cls(algebra, b_morphism, n_morphism, name)

    def swapped(self) -> SemiInfiniteStructure:
        return SemiInfiniteStructure(self.algebra, self.n_morphism, self.b_morphism, f"{self.name} swapped")

    def __repr__(self) -> str:
        return f"SemiInfiniteStructure({self.name})"


@dataclass
class SemiInfiniteCertificate:
    """Outcome of validate_semiinfinite."""

    structure: str
    bound: Optional[int]
    max_weight: int
    violations: Dict[int, List[str]] = dataclass_field(default_factory=dict)
    dims: Dict[str, Dict[int, int]] = dataclass_field(default_factory=dict)
    continuity: Dict[Tuple[int, int], Tuple[int, int]] = dataclass_field(default_factory=dict)
    extremes: Dict[Tuple[int, int], Tuple[str, str]] = dataclass_field(default_factory=dict)

    @property
    def failed(self) -> List[int]:
        return sorted(k for k, found in self.violations.items() if found)

    @property
    def first_failure(self) -> Optional[int]:
        return self.failed[0] if self.failed else None

    @property
    def passed(self) -> bool:
        return not self.failed

    def __bool__(self) -> bool:
        return self.passed

    def as_dict(self) -> Dict[str, Any]:
        return {
            "structure": self.structure,
            "bound": self.bound,
            "max_weight": self.max_weight,
            "passed": self.passed,
            "first_failure": self.first_failure,
            "conditions": {
                str(k): {"statement": CONDITIONS[k], "holds": not self.violations.get(k), "witnesses": self.violations.get(k, [])}
                for k in CONDITIONS
            },
            "dims": {space: {str(w): d for w, d in sorted(by_weight.items())} for space, by_weight in self.dims.items()},
            "continuity": {
                f"{m},{n}": {"k_min": low, "k_max": high, "witnesses": list(self.extremes.get((m, n), ()))}
                for (m, n), (low, high) in sorted(self.continuity.items())
            },
            "hom_action": HOM_ACTION,
            "morphisms_required_multiplicative": True,
        }


class _Embedding:
    """U(f): U(S) -> U(A) on PBW monomials of filtration at most the bound."""

    def __init__(self, morphism: AlgebraMorphism, target: EnvelopingAlgebra, bound: Optional[int]):
        self.morphism = morphism
        self.source = envelope(morphism.source)
        self.target = target
        self.bound = bound
        self.keys: List[Key] = self.source.basis(bound) if morphism.source.dim else [self.source.unit]
        self._images: Dict[Key, Vector] = {}

    def letter_image(self, letter) -> Vector:
        tag, k = letter
        return {self.target.letter_key((tag, j)): v for j, v in self.morphism.image(k).items()}

    def image(self, key: Key) -> Vector:
        cached = self._images.get(key)
        if cached is None:
            cached = {self.target.unit: self.target.field.one}
            for letter in self.source.word(key):
                cached = self.target.multiply_elements(cached, self.letter_image(letter))
            self._images[key] = cached
        return cached

    def image_of(self, element: Vector) -> Vector:
        result: Vector = {}
        for key, value in element.items():
            add_scaled(result, self.image(key), value)
        return result

    def weight(self, key: Key) -> int:
        return self.source.weight(key)

    def filtration(self, key: Key) -> int:
        return self.source.filtration(key)

    def render(self, key: Key) -> str:
        return self.source.render(key)


def _by_weight(keys: List[Key], weight, max_weight: int) -> Dict[int, int]:
    counts: Dict[int, int] = defaultdict(int)
    for key in keys:
        w = weight(key)
        if abs(w) <= max_weight:
            counts[w] += 1
    return dict(sorted(counts.items()))


class _Validator:
    def __init__(self, structure: SemiInfiniteStructure, bound: Optional[int], max_weight: int):
        self.structure = structure
        algebra = structure.algebra
        self.lie = algebra.tag == "lie"
        self.bound = bound if self.lie else None
        self.max_weight = max_weight
        self.enveloping = envelope(algebra)
        self.keys = self.enveloping.basis(self.bound)
        self.position = {key: k for k, key in enumerate(self.keys)}
        self.b = _Embedding(structure.b_morphism, self.enveloping, self.bound)
        self.n = _Embedding(structure.n_morphism, self.enveloping, self.bound)
        self.certificate = SemiInfiniteCertificate(structure.name, self.bound, max_weight)

    def within(self, *filtrations: int) -> bool:
        return self.bound is None or sum(filtrations) <= self.bound

    def coordinates(self, element: Vector) -> Vector:
        return {self.position[key]: v for key, v in element.items() if v}

    def embedding_violations(self) -> List[str]:
        found = []
        algebra = self.structure.algebra
        for label, embedding in (("B", self.b), ("N", self.n)):
            morphism = embedding.morphism
            found.extend(f"{label}: {v}" for v in morphism.violations())
            if not morphism.is_injective():
                found.append(f"{label} -> {algebra.name} is not injective")
                continue
            images = [self.coordinates(embedding.image(key)) for key in embedding.keys]
            if not Span(images, len(self.keys), algebra.field).is_independent:
                found.append(f"U({label}) -> U({algebra.name}) is not injective within the bound")
            for x in embedding.keys:
                for y in embedding.keys:
                    if not self.within(embedding.filtration(x), embedding.filtration(y)):
                        continue
                    product = embedding.image_of(embedding.source.multiply(x, y))
                    if product != self.enveloping.multiply_elements(embedding.image(x), embedding.image(y)):
                        found.append(
                            f"U({label}) -> U({algebra.name}) is not multiplicative at "
                            f"{embedding.render(x)} * {embedding.render(y)}"
                        )
                        break
        return found

    def sign_violations(self, embedding: _Embedding, label: str, positive: bool) -> List[str]:
        source = embedding.morphism.source
        found = []
        for name, w in zip(source.names, source.weights):
            if positive and w < 0:
                found.append(f"{name} in U({label}) has negative weight {w}")
            elif positive and w == 0:
                found.append(f"{name} has weight 0, so U({label})_0 is not k")
            elif not positive and w > 0:
                found.append(f"{name} in U({label}) has positive weight {w}")
        return found

    def _pairs(self, first: _Embedding, second: _Embedding) -> Dict[int, List[Tuple[Key, Key]]]:
        pairs: Dict[int, List[Tuple[Key, Key]]] = defaultdict(list)
        for x in first.keys:
            for y in second.keys:
                if self.within(first.filtration(x), second.filtration(y)):
                    pairs[first.weight(x) + second.weight(y)].append((x, y))
        return pairs

    def _span(self, first: _Embedding, second: _Embedding, pairs: List[Tuple[Key, Key]]) -> Span:
        vectors = [
            self.coordinates(self.enveloping.multiply_elements(first.image(x), second.image(y)))
            for x, y in pairs
        ]
        return Span(vectors, len(self.keys), self.structure.algebra.field)

    def factorization_violations(self) -> Tuple[List[str], Dict[int, Tuple[List[Tuple[Key, Key]], Span]]]:
        found = []
        targets: Dict[int, int] = defaultdict(int)
        for key in self.keys:
            targets[self.enveloping.weight(key)] += 1
        bn = self._pairs(self.b, self.n)
        nb = self._pairs(self.n, self.b)
        spans = {}
        for label, first, second, pairs in (("U(B)⊗U(N)", self.b, self.n, bn), ("U(N)⊗U(B)", self.n, self.b, nb)):
            for w in sorted(set(pairs) | set(targets)):
                if abs(w) > self.max_weight:
                    continue
                chosen = pairs.get(w, [])
                span = self._span(first, second, chosen)
                if span.rank != len(chosen) or span.rank != targets.get(w, 0):
                    found.append(
                        f"{label} -> U(A) in weight {w}: {len(chosen)} products of rank {span.rank} "
                        f"for {targets.get(w, 0)} monomials"
                    )
                if first is self.n:
                    spans[w] = (chosen, span)
        return found, spans

    def continuity_violations(self, spans: Dict[int, Tuple[List[Tuple[Key, Key]], Span]]) -> List[str]:
        found = []
        certificate = self.certificate
        for x in self.b.keys:
            m = self.b.weight(x)
            if abs(m) > self.max_weight:
                continue
            for y in self.n.keys:
                n = self.n.weight(y)
                if abs(n) > self.max_weight or not self.within(self.b.filtration(x), self.n.filtration(y)):
                    continue
                chosen, span = spans.get(m + n, ([], None))
                if span is None:
                    continue
                product = self.coordinates(self.enveloping.multiply_elements(self.b.image(x), self.n.image(y)))
                coords = span.coordinates(product)
                if coords is None:
                    found.append(f"{self.b.render(x)} * {self.n.render(y)} has no straightening")
                    continue
                for index, value in coords.items():
                    if not value:
                        continue
                    y2, x2 = chosen[index]
                    k = self.b.weight(x2) - m
                    monomial = f"{self.b.render(x)}⊗{self.n.render(y)} -> {self.n.render(y2)}⊗{self.b.render(x2)}"
                    low, high = certificate.continuity.get((m, n), (k, k))
                    low_witness, high_witness = certificate.extremes.get((m, n), (monomial, monomial))
                    if k < low:
                        low, low_witness = k, monomial
                    if k > high:
                        high, high_witness = k, monomial
                    certificate.continuity[(m, n)] = (low, high)
                    certificate.extremes[(m, n)] = (low_witness, high_witness)
        return found

    def run(self) -> SemiInfiniteCertificate:
        certificate = self.certificate
        certificate.dims = {
            "U(A)": _by_weight(self.keys, self.enveloping.weight, self.max_weight),
            "U(B)": _by_weight(self.b.keys, self.b.weight, self.max_weight),
            "U(N)": _by_weight(self.n.keys, self.n.weight, self.max_weight),
        }
        certificate.violations[1] = self.embedding_violations()
        certificate.violations[2] = self.sign_violations(self.n, "N", positive=True)
        certificate.violations[3] = self.sign_violations(self.b, "B", positive=False)
        certificate.violations[4], spans = self.factorization_violations()
        if certificate.violations[4]:
            certificate.violations[5] = ["the straightening map is undefined without condition 4"]
        else:
            certificate.violations[5] = self.continuity_violations(spans)
        return certificate


def validate_semiinfinite(structure: SemiInfiniteStructure, bound: Optional[int] = None, max_weight: int = 4) -> SemiInfiniteCertificate:
    """Checks the five conditions of a semi-infinite structure on monomials of PBW
    filtration at most bound and weight at most max_weight in absolute value.

    :param structure: (A, B, N).
    :type structure: SemiInfiniteStructure
    :param bound: PBW bound, max_weight when omitted; unused for com and asc.
    :type bound: int, optional
    :param max_weight: Weight window of the reported tables.
    :type max_weight: int
    :rtype: SemiInfiniteCertificate
    :raises AlgebraError: If A, B or N is not a valid algebra.
    """
    for algebra in (structure.algebra, structure.subalgebra, structure.complement):
        validation = validate_algebra(algebra)
        if not validation:
            raise AlgebraError(f"{algebra.name} is not a valid algebra: {'; '.join(validation.violations[:3])}")
    certificate = _Validator(structure, bound if bound is not None else max_weight, max_weight).run()
    if certificate.passed:
        logger.info("%s is a semi-infinite structure up to filtration %s", structure.name, certificate.bound)
    else:
        logger.info(
            "%s fails conditions %s, first %d: %s",
            structure.name, certificate.failed, certificate.first_failure,
            certificate.violations[certificate.first_failure][0],
        )
    return certificate

