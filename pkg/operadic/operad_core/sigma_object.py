"""This module defines Σ*-objects and the two products built on them: the composite
product ∘ and the Day-convolution tensor product.
"""
from __future__ import annotations

from itertools import combinations, product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from operadic.exactalg import Field, SparseMatrix, add_to
from operadic.exceptions import PresentationError
from operadic.symcore import Permutation, SigmaRep, koszul_sign, set_partitions

Blocks = Tuple[Tuple[int, ...], ...]
CompositeLabel = Tuple[int, Blocks, Tuple[int, ...]]
TensorLabel = Tuple[Tuple[int, ...], int, int]


class SigmaObject:
    """Arity-indexed family of Σ_n-representations with named basis elements."""

    __slots__ = ("field", "_components", "_names")

    def __init__(
        self,
        components: Mapping[int, SigmaRep],
        field: Field,
        names: Optional[Mapping[int, Sequence[str]]] = None,
    ):
        self.field = field
        self._components: Dict[int, SigmaRep] = {
            n: rep for n, rep in sorted(components.items()) if rep.dim
        }
        self._names: Dict[int, List[str]] = {}
        for n, rep in self._components.items():
            given = list((names or {}).get(n, []))
            if given and len(given) != rep.dim:
                raise PresentationError(f"Arity {n} has {rep.dim} elements, {len(given)} names.")
            self._names[n] = given or [f"x{n}_{k}" for k in range(rep.dim)]

    @classmethod
    def identity(cls, field: Field) -> SigmaObject:
        """The unit 𝖨 of the composite product: 𝕜 in arity 1."""
        return cls({1: SigmaRep.trivial(1, field)}, field, {1: ["id"]})

    @classmethod
    def single(cls, rep: SigmaRep, names: Optional[Sequence[str]] = None) -> SigmaObject:
        return cls({rep.n: rep}, rep.field, {rep.n: list(names)} if names else None)

    def component(self, n: int) -> SigmaRep:
        rep = self._components.get(n)
        if rep is None:
            return SigmaRep.zero(n, self.field)
        return rep

    def dim(self, n: int) -> int:
        rep = self._components.get(n)
        return rep.dim if rep is not None else 0

    def arities(self) -> List[int]:
        return list(self._components)

    def names(self, n: int) -> List[str]:
        return list(self._names.get(n, []))

    def degree(self, n: int, index: int) -> int:
        return self._components[n].degrees[index]

    def is_reduced(self) -> bool:
        return all(n >= 2 for n in self._components)

    def lookup(self, name: str) -> Tuple[int, int]:
        """Arity and index of a named basis element."""
        for n, names in self._names.items():
            if name in names:
                return n, names.index(name)
        raise PresentationError(f"Unknown generator {name!r}.")

    def suspended(self, shift: int, prefix: str = "s") -> SigmaObject:
        """Same actions, every degree shifted by shift."""
        components = {
            n: SigmaRep(
                n,
                [d + shift for d in rep.degrees],
                [rep.generator(i) for i in range(1, n)],
                self.field,
                check=False,
            )
            for n, rep in self._components.items()
        }
        names = {n: [f"{prefix}{name}" for name in names] for n, names in self._names.items()}
        return SigmaObject(components, self.field, names)

    def direct_sum(self, other: SigmaObject) -> SigmaObject:
        components = dict(self._components)
        names = {n: list(v) for n, v in self._names.items()}
        for n, rep in other._components.items():
            if n in components:
                components[n] = components[n].direct_sum(rep)
                names[n] = names[n] + other._names[n]
            else:
                components[n] = rep
                names[n] = list(other._names[n])
        return SigmaObject(components, self.field, names)

    def __repr__(self) -> str:
        return f"SigmaObject({ {n: r.dim for n, r in self._components.items()} })"


def _sorting_inverse(labels: Sequence[int]) -> Permutation:
    return Permutation.sorting(labels).inverse()


class CompositeRep(SigmaRep):
    """(M ∘ N)(r) with basis triples (m; blocks; n_1..n_k).

    The blocks are a set partition of {1..r} ordered by their minima; n_j lives in
    N(|block j|) with its inputs labelled by block j in increasing order. Choosing the
    minimum-ordered representative realizes the Σ_k-coinvariants.
    """

    __slots__ = ("top", "bottom", "labels", "index")

    def __init__(self, top: SigmaObject, bottom: SigmaObject, r: int):
        if bottom.dim(0):
            raise PresentationError("Composite products need N(0) = 0.")
        field = top.field
        self.field = field
        self.top = top
        self.bottom = bottom
        labels: List[CompositeLabel] = []
        degrees: List[int] = []
        for k in range(1, r + 1):
            if not top.dim(k):
                continue
            for blocks in set_partitions(range(1, r + 1), k):
                ranges = [range(bottom.dim(len(b))) for b in blocks]
                for m in range(top.dim(k)):
                    for ns in product(*ranges):
                        labels.append((m, blocks, tuple(ns)))
                        degrees.append(
                            top.degree(k, m)
                            + sum(bottom.degree(len(b), x) for b, x in zip(blocks, ns))
                        )
        self.labels = labels
        self.index: Dict[CompositeLabel, int] = {l: i for i, l in enumerate(labels)}
        generators = []
        for i in range(1, r):
            swap = Permutation.transposition(r, i)
            entries = []
            for col, label in enumerate(labels):
                for target, value in self.relabel(label, swap).items():
                    entries.append((self.index[target], col, value))
            generators.append(SparseMatrix.from_entries(entries, (len(labels), len(labels)), field))
        super().__init__(r, degrees, generators, field, check=False)

    def normalize(
        self,
        m_vector: Mapping[int, Any],
        k: int,
        pieces: Sequence[Tuple[Tuple[int, ...], Mapping[int, Any]]],
    ) -> Dict[CompositeLabel, Any]:
        """Rewrites m(n_1, ..., n_k) with arbitrarily ordered blocks as a combination of
        basis triples. Each piece is (letters in increasing order, vector in N).
        """
        order = sorted(range(k), key=lambda a: pieces[a][0][0])
        degrees = []
        for letters, vector in pieces:
            first = next(iter(vector), None)
            degrees.append(self.bottom.degree(len(letters), first) if first is not None else 0)
        sign = self.field.sign(0 if koszul_sign(degrees, order) > 0 else 1)
        rho = Permutation([a + 1 for a in order])
        moved = self.top.component(k).act_vector(rho, dict(m_vector))
        blocks = tuple(pieces[a][0] for a in order)
        vectors = [pieces[a][1] for a in order]
        result: Dict[CompositeLabel, Any] = {}
        for m, coefficient in moved.items():
            for combo in product(*(v.items() for v in vectors)):
                value = sign * coefficient
                for _, c in combo:
                    value *= c
                add_to(result, (m, blocks, tuple(x for x, _ in combo)), value)
        return result

    def relabel(self, label: CompositeLabel, sigma: Permutation) -> Dict[CompositeLabel, Any]:
        """Right action of σ on one basis triple: letters are renamed by σ^{-1}."""
        m, blocks, ns = label
        inverse = sigma.inverse()
        pieces = []
        for block, n_index in zip(blocks, ns):
            renamed = [inverse(letter) for letter in block]
            pi_inverse = _sorting_inverse(renamed)
            vector = self.bottom.component(len(block)).act_vector(pi_inverse, {n_index: self.field.one})
            pieces.append((tuple(sorted(renamed)), vector))
        return self.normalize({m: self.field.one}, len(blocks), pieces)


def composite_product(top: SigmaObject, bottom: SigmaObject, r: int) -> CompositeRep:
    """(M ∘ N)(r) = ⊕_k M(k) ⊗_{Σ_k} Ind(N(i_1) ⊗ ... ⊗ N(i_k))."""
    return CompositeRep(top, bottom, r)


class TensorRep(SigmaRep):
    """(M ⊗ N)(n) = ⊕_{p+q=n} Ind_{Σ_p x Σ_q}^{Σ_n} M(p) ⊗ N(q), with basis
    (letters of the M factor, m, n).
    """

    __slots__ = ("left", "right", "labels", "index")

    def __init__(self, left: SigmaObject, right: SigmaObject, n: int):
        field = left.field
        self.field = field
        self.left = left
        self.right = right
        labels: List[TensorLabel] = []
        degrees: List[int] = []
        for p in range(n + 1):
            q = n - p
            if not left.dim(p) or not right.dim(q):
                continue
            for letters in combinations(range(1, n + 1), p):
                for a in range(left.dim(p)):
                    for b in range(right.dim(q)):
                        labels.append((letters, a, b))
                        degrees.append(left.degree(p, a) + right.degree(q, b))
        self.labels = labels
        self.index: Dict[TensorLabel, int] = {l: i for i, l in enumerate(labels)}
        generators = []
        for i in range(1, n):
            swap = Permutation.transposition(n, i)
            entries = []
            for col, label in enumerate(labels):
                for target, value in self._relabel(label, swap, n).items():
                    entries.append((self.index[target], col, value))
            generators.append(SparseMatrix.from_entries(entries, (len(labels), len(labels)), field))
        super().__init__(n, degrees, generators, field, check=False)

    def _relabel(self, label: TensorLabel, sigma: Permutation, n: int) -> Dict[TensorLabel, Any]:
        letters, a, b = label
        inverse = sigma.inverse()
        others = [x for x in range(1, n + 1) if x not in letters]
        left_letters = [inverse(x) for x in letters]
        right_letters = [inverse(x) for x in others]
        left_vector = self.left.component(len(letters)).act_vector(
            _sorting_inverse(left_letters), {a: self.field.one}
        )
        right_vector = self.right.component(len(others)).act_vector(
            _sorting_inverse(right_letters), {b: self.field.one}
        )
        result: Dict[TensorLabel, Any] = {}
        new_letters = tuple(sorted(left_letters))
        for x, cx in left_vector.items():
            for y, cy in right_vector.items():
                add_to(result, (new_letters, x, y), cx * cy)
        return result


def sigma_tensor(left: SigmaObject, right: SigmaObject, n: int) -> TensorRep:
    """Arity n component of the tensor product of Σ*-objects."""
    return TensorRep(left, right, n)
