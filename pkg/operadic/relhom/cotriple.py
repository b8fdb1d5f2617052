"""This module contains the cotriple T = f_! f* on modules over A, for a morphism
f: B -> A, with its counit ε: T -> id and comultiplication δ: T -> TT.

T(N) = U(A) ⊗_{U(B)} f*N has the basis c ⊗ n of complement monomials c and basis
vectors n of N, so every map is a matrix on pairs:

* ε_N(c ⊗ n) = c · n,
* δ_N(c ⊗ n) = c ⊗ (1 ⊗ n),
* T(φ)(c ⊗ n) = c ⊗ φ(n).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum, auto, unique
from typing import Dict, List, Optional, Tuple

from operadic.exactalg import SparseMatrix
from operadic.exceptions import TruncationError
from operadic.palgebra import AlgebraMorphism, PModule, RelativeFactorization, induce_with_basis, restrict_module
from operadic.palgebra.enveloping import Key

logger = logging.getLogger(__name__)


@unique
class TruncationMode(Enum):
    """How the levels of T^k are kept finite."""

    FINITE = auto()
    PBW = auto()
    WEIGHT = auto()

    def __str__(self) -> str:
        return f"{self.name} (truncation mode) object"


@dataclass
class Application:
    """T(N) together with its basis of pairs (complement key, index in N)."""

    inner: PModule
    module: PModule
    pairs: List[Tuple[Key, int]]
    factorization: RelativeFactorization

    def __post_init__(self):
        self.position: Dict[Tuple[Key, int], int] = {pair: k for k, pair in enumerate(self.pairs)}


class Cotriple:
    """(T, ε, δ) for T = f_! f*, truncated by PBW length.

    Without an explicit PBW bound, the bound is derived from a weight window: when every
    complement generator has weight of one strict sign, a basis vector of weight w has
    PBW length at most |w| plus the largest weight of the modules involved, so the
    components of weight in [-max_weight, max_weight] are computed exactly.
    """

    def __init__(
        self,
        morphism: AlgebraMorphism,
        pbw_bound: Optional[int] = None,
        max_weight: Optional[int] = None,
        margin: int = 0,
    ):
        """
        :param morphism: f: B -> A.
        :type morphism: AlgebraMorphism
        :param pbw_bound: Explicit PBW bound.
        :type pbw_bound: int, optional
        :param max_weight: Weight window, used when no PBW bound is given.
        :type max_weight: int, optional
        :param margin: Largest absolute weight of the modules T will be applied to.
        :type margin: int
        :raises TruncationError: If the weights do not bound the levels and no PBW bound
            is given.
        """
        self.morphism = morphism
        self.source = morphism.source
        self.target = morphism.target
        self.field = self.target.field
        self.max_weight = max_weight
        self.bound, self.mode = self._resolve(pbw_bound, max_weight, margin)
        self._applied: Dict[int, Application] = {}
        logger.debug("Cotriple along %s -> %s: %s, bound %s", self.source.name, self.target.name, self.mode.name, self.bound)

    def _resolve(self, pbw_bound: Optional[int], max_weight: Optional[int], margin: int) -> Tuple[Optional[int], TruncationMode]:
        if self.target.tag != "lie":
            RelativeFactorization(self.morphism)
            return None, TruncationMode.FINITE
        factorization = RelativeFactorization(self.morphism, pbw_bound=pbw_bound)
        if not factorization.rank:
            return None, TruncationMode.FINITE
        if pbw_bound is not None:
            return pbw_bound, TruncationMode.PBW
        if max_weight is None:
            raise TruncationError(
                f"{self.target.name} over {self.source.name}: complement generators "
                f"{factorization.complement_names()} need a weight window or a PBW bound."
            )
        return max_weight + margin + 1, TruncationMode.WEIGHT

    def in_window(self, weight: int) -> bool:
        """Whether a weight is computed exactly. In PBW mode every weight is, up to
        total filtration bound.
        """
        return self.mode is not TruncationMode.WEIGHT or abs(weight) <= self.max_weight

    def apply(self, module: PModule) -> Application:
        """T(N), memoized per module object."""
        cached = self._applied.get(id(module))
        if cached is not None and cached.inner is module:
            return cached
        restricted = restrict_module(self.morphism, module)
        induced, pairs, factorization = induce_with_basis(self.morphism, restricted, self.bound, name=f"T{module.name}")
        application = Application(module, induced, pairs, factorization)
        self._applied[id(module)] = application
        return application

    def counit(self, module: PModule) -> SparseMatrix:
        """ε_N: T(N) -> N."""
        application = self.apply(module)
        one = self.field.one
        columns = [
            module.act_word(application.factorization.complement_word(key), {q: one})
            for key, q in application.pairs
        ]
        return SparseMatrix.from_columns(columns, module.dim, self.field)

    def comultiplication(self, module: PModule) -> SparseMatrix:
        """δ_N: T(N) -> T(T(N))."""
        inner = self.apply(module)
        outer = self.apply(inner.module)
        unit = inner.factorization.unit
        entries = []
        for column, (key, q) in enumerate(inner.pairs):
            middle = inner.position.get((unit, q))
            row = None if middle is None else outer.position.get((key, middle))
            if row is not None:
                entries.append((row, column, self.field.one))
        return SparseMatrix.from_entries(entries, (outer.module.dim, inner.module.dim), self.field)

    def lift(self, matrix: SparseMatrix, source: PModule, target: PModule) -> SparseMatrix:
        """T(φ): T(source) -> T(target) for φ: source -> target."""
        left = self.apply(source)
        right = self.apply(target)
        entries = []
        for column, (key, q) in enumerate(left.pairs):
            for q2, value in matrix.column(q).items():
                row = right.position.get((key, q2))
                if row is not None:
                    entries.append((row, column, value))
        return SparseMatrix.from_entries(entries, (right.module.dim, left.module.dim), self.field)

    def law_violations(self, module: PModule) -> List[str]:
        """Counit laws ε_{TN}δ_N = id = T(ε_N)δ_N and coassociativity
        δ_{TN}δ_N = T(δ_N)δ_N, compared on the vectors of T(N) where the truncated
        action is exact.
        """
        application = self.apply(module)
        tn = application.module
        delta = self.comultiplication(module)
        reliable = tn.reliable(1)
        identity = SparseMatrix.identity(tn.dim, self.field)
        checks = [
            ("ε_{TN}∘δ_N = id", self.counit(tn) @ delta, identity),
            ("T(ε_N)∘δ_N = id", self.lift(self.counit(module), tn, module) @ delta, identity),
            (
                "δ_{TN}∘δ_N = T(δ_N)∘δ_N",
                self.comultiplication(tn) @ delta,
                self.lift(delta, tn, self.apply(tn).module) @ delta,
            ),
        ]
        found = []
        for label, left, right in checks:
            if any(left.column(j) != right.column(j) for j in reliable):
                found.append(f"{label} fails on T({module.name})")
        return found


def cotriple_from_adjunction(
    morphism: AlgebraMorphism,
    pbw_bound: Optional[int] = None,
    max_weight: Optional[int] = None,
    margin: int = 0,
) -> Cotriple:
    """The cotriple of the adjunction f_! ⊣ f* between modules over B and over A.

    :raises TruncationError: If the levels are unbounded within the configuration.
    """
    return Cotriple(morphism, pbw_bound, max_weight, margin)
