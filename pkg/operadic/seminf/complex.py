"""This module contains the semi-infinite complex Hom_{U(A)}(BD(A,B,A), M) ⊗_{U(A)} BD(A,N,A)
and its homology.

With U(A) acting on the Hom side through the augmentation of the outermost bar slot,
the tensor product over U(A) becomes the tensor product of the B-side relative cochains
with coefficients in M and the N-side relative chains with trivial coefficients. Both
sides are taken normalized, so that every weight component is finite in each bar
level, and totalized in degree n = q - p with
D(h ⊗ c) = δh ⊗ c + (-1)^p h ⊗ ∂c.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple, Union

from operadic.exactalg import ChainComplex, Direction, GradedSpace, SparseMatrix
from operadic.exceptions import SemiInfiniteError, TruncationError
from operadic.palgebra import AlgebraMorphism, PModule, RightModule, adjoint_module
from operadic.relhom import Cotriple, RelativeChains, bar_simplicial, cotriple_from_adjunction, module_margin
from operadic.seminf.structure import HOM_ACTION, SemiInfiniteCertificate, SemiInfiniteStructure, validate_semiinfinite

logger = logging.getLogger(__name__)

Cell = Tuple[int, int, int]


def _side_cotriple(morphism: AlgebraMorphism, pbw_bound: Optional[int], max_weight: int, margin: int) -> Cotriple:
    """Weight truncation where the complement allows it, else the PBW bound."""
    try:
        return cotriple_from_adjunction(morphism, None, max_weight, margin)
    except TruncationError:
        if pbw_bound is None:
            raise
        return cotriple_from_adjunction(morphism, pbw_bound, None, margin)


class SemiInfiniteSides:
    """The two normalized relative complexes, memoized per weight.

    hom(w) is the B-side cochain complex Hom_{U(A)}(BD(A,B,A), M) in weight w, dual to
    M* ⊗_{U(A)} BD(A,B,A) in weight -w; chains(w) is k ⊗_{U(A)} BD(A,N,A) in weight w.
    """

    def __init__(
        self,
        structure: SemiInfiniteStructure,
        module: PModule,
        max_level: int,
        max_weight: int,
        pbw_bound: Optional[int] = None,
    ):
        """
        :raises TruncationError: If a side needs a PBW bound and none is given.
        :raises ModuleError: If M is not a module over A or is truncated.
        """
        algebra = structure.algebra
        adjoint = adjoint_module(algebra)
        margin = module_margin(adjoint, module)
        self.structure = structure
        self.module = module
        self.max_level = max_level
        self.max_weight = max_weight
        b_cotriple = _side_cotriple(structure.b_morphism, pbw_bound, max_weight, margin)
        n_cotriple = _side_cotriple(structure.n_morphism, pbw_bound, max_weight, margin)
        self.b_bar = bar_simplicial(structure.b_morphism, adjoint, max_level, cotriple=b_cotriple)
        self.n_bar = bar_simplicial(structure.n_morphism, adjoint, max_level, cotriple=n_cotriple)
        self.b_chains = RelativeChains(self.b_bar, RightModule.dual_of(module))
        self.n_chains = RelativeChains(self.n_bar, RightModule.trivial(algebra))
        self._hom: Dict[int, ChainComplex] = {}
        self._chains: Dict[int, ChainComplex] = {}
        logger.debug(
            "Semi-infinite sides of %s: B-side %s, N-side %s",
            structure.name, b_cotriple.mode.name, n_cotriple.mode.name,
        )

    @property
    def modes(self) -> Dict[str, str]:
        return {"B": self.b_bar.cotriple.mode.name.lower(), "N": self.n_bar.cotriple.mode.name.lower()}

    def hom_weights(self) -> List[int]:
        return sorted(-w for w in self.b_chains.weights() if self.b_bar.cotriple.in_window(w))

    def chain_weights(self) -> List[int]:
        return [w for w in self.n_chains.weights() if self.n_bar.cotriple.in_window(w)]

    def hom(self, weight: int) -> ChainComplex:
        cached = self._hom.get(weight)
        if cached is None:
            cached = self._hom[weight] = self.b_chains.complex(-weight, normalized=True).dual()
        return cached

    def chains(self, weight: int) -> ChainComplex:
        cached = self._chains.get(weight)
        if cached is None:
            cached = self._chains[weight] = self.n_chains.complex(weight, normalized=True)
        return cached

    def splittings(self, weight: int) -> List[Tuple[int, int]]:
        """(w1, w2) with w1 + w2 = weight and both sides nonzero."""
        chain_weights = set(self.chain_weights())
        found = []
        for w1 in self.hom_weights():
            w2 = weight - w1
            if w2 in chain_weights and self.hom(w1).degrees() and self.chains(w2).degrees():
                found.append((w1, w2))
        return found


@dataclass
class SemiInfiniteComplex:
    """One weight of the totalized complex, in degrees window[0]..window[1].

    cells[n] lists (w1, p, q) with q - p = n: Hom-side weight w1 and level p tensored
    with the N-side level q. level_truncated is set when a contributing side has a
    nonzero component at the top bar level.
    """

    structure: str
    weight: int
    window: Tuple[int, int]
    max_level: int
    complex: ChainComplex
    cells: Dict[int, List[Cell]] = dataclass_field(default_factory=dict)
    component_dims: Dict[Cell, int] = dataclass_field(default_factory=dict)
    level_truncated: bool = False

    @property
    def interior(self) -> List[int]:
        lo, hi = self.window
        return list(range(lo + 1, hi))

    @property
    def unverified(self) -> List[int]:
        lo, hi = self.window
        if self.level_truncated:
            return list(range(lo, hi + 1))
        return sorted({lo, hi})

    def euler_characteristic(self) -> int:
        return self.complex.euler_characteristic()

    def as_dict(self) -> Dict[str, Any]:
        return {
            "structure": self.structure,
            "weight": self.weight,
            "window": list(self.window),
            "max_level": self.max_level,
            "dims": {str(n): self.complex.dim(n) for n in range(self.window[0], self.window[1] + 1)},
            "components": {
                str(n): [{"hom_weight": w1, "p": p, "q": q, "dim": self.component_dims[(w1, p, q)]} for w1, p, q in cells]
                for n, cells in sorted(self.cells.items())
            },
            "level_truncated": self.level_truncated,
            "unverified": self.unverified,
            "hom_action": HOM_ACTION,
        }


def _require_certificate(structure: SemiInfiniteStructure, certificate: Optional[SemiInfiniteCertificate], bound: Optional[int], max_weight: int) -> SemiInfiniteCertificate:
    if certificate is None:
        certificate = validate_semiinfinite(structure, bound, max_weight)
    if not certificate.passed:
        first = certificate.first_failure
        raise SemiInfiniteError(
            f"{structure.name} is not a semi-infinite structure: condition {first} fails "
            f"({certificate.violations[first][0]})."
        )
    return certificate


def _totalize(sides: SemiInfiniteSides, weight: int, window: Tuple[int, int]) -> SemiInfiniteComplex:
    lo, hi = window
    top = sides.max_level
    field = sides.structure.algebra.field
    cells: Dict[int, List[Cell]] = {n: [] for n in range(lo, hi + 1)}
    sizes: Dict[Cell, Tuple[int, int]] = {}
    offsets: Dict[Cell, int] = {}
    dims: Dict[int, int] = {n: 0 for n in range(lo, hi + 1)}
    truncated = False
    for w1, w2 in sides.splittings(weight):
        hom, chains = sides.hom(w1), sides.chains(weight - w1)
        if hom.dim(top) or chains.dim(top):
            truncated = True
        for p in range(top + 1):
            for q in range(top + 1):
                n = q - p
                if not lo <= n <= hi or not hom.dim(p) or not chains.dim(q):
                    continue
                cell = (w1, p, q)
                cells[n].append(cell)
                sizes[cell] = (hom.dim(p), chains.dim(q))
                offsets[cell] = dims[n]
                dims[n] += hom.dim(p) * chains.dim(q)
    matrices: Dict[int, SparseMatrix] = {}
    for n in range(lo + 1, hi + 1):
        entries = []
        for cell in cells[n]:
            w1, p, q = cell
            a, b = sizes[cell]
            source = offsets[cell]
            hom, chains = sides.hom(w1), sides.chains(weight - w1)
            up = (w1, p + 1, q)
            if up in offsets:
                target, (_, b2) = offsets[up], sizes[up]
                for i2, i, value in hom.differential(p).entries():
                    for j in range(b):
                        entries.append((target + i2 * b2 + j, source + i * b + j, value))
            down = (w1, p, q - 1)
            if down in offsets:
                target, (_, b2) = offsets[down], sizes[down]
                sign = field.sign(p)
                for j2, j, value in chains.differential(q).entries():
                    for i in range(a):
                        entries.append((target + i * b2 + j2, source + i * b + j, sign * value))
        matrices[n] = SparseMatrix.from_entries(entries, (dims[n - 1], dims[n]), field)
    complex_ = ChainComplex(dims, matrices, field, Direction.CHAIN)
    component_dims = {cell: a * b for cell, (a, b) in sizes.items()}
    return SemiInfiniteComplex(
        sides.structure.name, weight, window, top, complex_,
        {n: c for n, c in cells.items() if c}, component_dims, truncated,
    )


def semiinfinite_complex(
    structure: SemiInfiniteStructure,
    module: PModule,
    weight: int,
    window: Tuple[int, int] = (-2, 2),
    max_level: int = 4,
    max_weight: int = 4,
    pbw_bound: Optional[int] = None,
    certificate: Optional[SemiInfiniteCertificate] = None,
    sides: Optional[SemiInfiniteSides] = None,
) -> SemiInfiniteComplex:
    """The weight component of the semi-infinite complex in a window of degrees.

    :param structure: (A, B, N).
    :type structure: SemiInfiniteStructure
    :param module: M, a module over A.
    :type module: PModule
    :param weight: The weight w.
    :type weight: int
    :param window: Degrees [n₋, n₊].
    :type window: Tuple[int, int]
    :param max_level: Top bar level on both sides.
    :type max_level: int
    :param max_weight: Weight window of both sides and of the validation.
    :type max_weight: int
    :param pbw_bound: PBW bound for a side whose complement weights are not
        sign-definite.
    :type pbw_bound: int, optional
    :param certificate: A certificate to reuse instead of validating again.
    :param sides: Side complexes to reuse across weights.
    :rtype: SemiInfiniteComplex
    :raises SemiInfiniteError: If the structure fails validation.
    :raises TruncationError: If a side is unbounded within the configuration.
    :raises ComplexError: If the totalized differential does not square to zero.
    """
    if window[0] > window[1]:
        raise SemiInfiniteError(f"Empty window {window}.")
    _require_certificate(structure, certificate, pbw_bound, max_weight)
    if sides is None:
        sides = SemiInfiniteSides(structure, module, max_level, max_weight, pbw_bound)
    result = _totalize(sides, weight, window)
    logger.debug("Semi-infinite complex of %s in weight %d: %s", structure.name, weight, result.complex)
    return result


@dataclass
class SemiInfiniteHomology:
    """Homology per weight and degree, with the degrees left unverified per weight."""

    structure: str
    module: str
    window: Tuple[int, int]
    max_level: int
    modes: Dict[str, str]
    dims: Dict[int, Dict[int, int]] = dataclass_field(default_factory=dict)
    unverified: Dict[int, List[int]] = dataclass_field(default_factory=dict)
    euler: Dict[int, int] = dataclass_field(default_factory=dict)

    def space(self, weight: int) -> GradedSpace:
        return GradedSpace(self.dims.get(weight, {}))

    def verified(self, weight: int) -> Dict[int, int]:
        flagged = set(self.unverified.get(weight, []))
        lo, hi = self.window
        return {n: self.dims.get(weight, {}).get(n, 0) for n in range(lo, hi + 1) if n not in flagged}

    def as_dict(self) -> Dict[str, Any]:
        return {
            "structure": self.structure,
            "module": self.module,
            "window": list(self.window),
            "max_level": self.max_level,
            "truncation": self.modes,
            "dims": {str(w): {str(n): d for n, d in sorted(v.items())} for w, v in sorted(self.dims.items())},
            "unverified": {str(w): v for w, v in sorted(self.unverified.items())},
            "euler_characteristic": {str(w): v for w, v in sorted(self.euler.items())},
            "hom_action": HOM_ACTION,
        }


def semiinfinite_homology(
    structure: SemiInfiniteStructure,
    module: PModule,
    weights: Union[int, Iterable[int]],
    window: Tuple[int, int] = (-2, 2),
    max_level: int = 4,
    max_weight: int = 4,
    pbw_bound: Optional[int] = None,
    progress: Optional[Callable[[List[int]], Iterable[int]]] = None,
) -> SemiInfiniteHomology:
    """Homology of the semi-infinite complex for each weight; the window edges, and
    every degree of a weight whose sides reach the top bar level, are flagged
    boundary-unverified.

    :param progress: Wraps the loop over weights, e.g. tqdm.
    :rtype: SemiInfiniteHomology
    :raises SemiInfiniteError: If the structure fails validation.
    :raises TruncationError: If a side is unbounded within the configuration.
    """
    weights = [weights] if isinstance(weights, int) else list(weights)
    certificate = _require_certificate(structure, None, pbw_bound, max_weight)
    sides = SemiInfiniteSides(structure, module, max_level, max_weight, pbw_bound)
    result = SemiInfiniteHomology(structure.name, module.name, tuple(window), max_level, sides.modes)
    for weight in (progress or iter)(weights):
        component = semiinfinite_complex(
            structure, module, weight, window, max_level, max_weight, pbw_bound, certificate, sides,
        )
        betti = component.complex.betti()
        result.dims[weight] = {n: betti.dim(n) for n in range(window[0], window[1] + 1) if betti.dim(n)}
        result.unverified[weight] = component.unverified
        result.euler[weight] = component.euler_characteristic()
    logger.info(
        "Semi-infinite homology of %s with %s: %s",
        structure.name, module.name, {w: v for w, v in result.dims.items() if v},
    )
    return result
