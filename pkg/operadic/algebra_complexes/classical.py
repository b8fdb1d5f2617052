"""This module contains the classical complexes the operadic ones are checked against:
Chevalley-Eilenberg for Lie algebras, the bar and Hochschild complexes for associative
algebras, and classical_cross_check.

The classical complexes live in degrees 1..top. Degree k of a classical complex
corresponds to degree k - 1 of the operadic one. Classical cochains in degree 0
(the coefficients themselves) have no operadic counterpart and are left out.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import combinations, product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from operadic.exactalg import ChainComplex, ComplexBuilder, Direction, SparseMatrix, Vector, add_to
from operadic.exceptions import AlgebraError, UnsupportedOperadError
from operadic.koszul_machine import koszulness_certificate
from operadic.palgebra import PAlgebra, PModule, validate_algebra
from operadic.symcore import Permutation
from operadic.algebra_complexes.operadic import OperadicChainComplex, OperadicCochainComplex

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]
# (δω)(target) as {(source label, m_in): {m_out: coefficient}}
Coboundary = Callable[[Word], Dict[Tuple[Word, int], Dict[int, Any]]]


def _wedge(factors: Sequence[int]) -> Optional[Tuple[int, Word]]:
    """Sign and sorted form of x_{f_1} ∧ ... ∧ x_{f_k}, None when it vanishes."""
    if len(set(factors)) != len(factors):
        return None
    order = sorted(range(len(factors)), key=lambda k: factors[k])
    return Permutation([k + 1 for k in order]).sign(), tuple(factors[k] for k in order)


def _require(algebra: PAlgebra, tag: str) -> None:
    if algebra.tag != tag:
        raise UnsupportedOperadError(f"{algebra.name} is a {algebra.tag} algebra, not {tag}.")
    validation = validate_algebra(algebra)
    if not validation.valid:
        raise AlgebraError(f"{algebra.name} is not a valid algebra: {validation.violations[0]}")


def _hom_complex(
    chain_bases: Dict[int, List[Word]],
    module: PModule,
    coboundary: Coboundary,
    render: Callable[[Word, int], str],
) -> ChainComplex:
    """Hom(C_•, M) with the differential given on each chain of degree k + 1."""
    field = module.field
    bases = {k: [(w, m) for w in words for m in range(module.dim)] for k, words in chain_bases.items()}
    positions = {k: {label: p for p, label in enumerate(labels)} for k, labels in bases.items()}
    matrices: Dict[int, SparseMatrix] = {}
    for k in bases:
        if k + 1 not in bases:
            continue
        entries = []
        for word in chain_bases[k + 1]:
            for (source, m_in), row in coboundary(word).items():
                column = positions[k][(source, m_in)]
                for m_out, value in row.items():
                    if value:
                        entries.append((positions[k + 1][(word, m_out)], column, value))
        matrices[k] = SparseMatrix.from_entries(entries, (len(bases[k + 1]), len(bases[k])), field)
    names = {k: [render(w, m) for w, m in labels] for k, labels in bases.items()}
    return ChainComplex({k: len(l) for k, l in bases.items()}, matrices, field, Direction.COCHAIN, names)


def _check_module(algebra: PAlgebra, module: PModule) -> None:
    if module.algebra is not algebra:
        raise AlgebraError(f"{module.name} is not a module over {algebra.name}.")
    if module.exact_below is not None:
        raise AlgebraError(f"{module.name} is truncated; cochains need a finite module.")


def chevalley_eilenberg_chains(algebra: PAlgebra, top: int) -> ChainComplex:
    """Λ^k g in degrees 1..top with
    d(x_1 ∧ ... ∧ x_k) = Σ_{p<q} (-1)^{p+q} [x_p, x_q] ∧ x_1 ... x̂_p ... x̂_q ... x_k.

    :raises UnsupportedOperadError: If the algebra is not a Lie algebra.
    """
    _require(algebra, "lie")
    one = algebra.field.one
    builder = ComplexBuilder(algebra.field)
    for k in range(1, top + 1):
        builder.extend((word, k) for word in combinations(range(algebra.dim), k))

    def differential(word: Word) -> Dict[Word, Any]:
        result: Dict[Word, Any] = {}
        for p, q in combinations(range(len(word)), 2):
            rest = [x for r, x in enumerate(word) if r not in (p, q)]
            bracket = algebra.multiply({word[p]: one}, {word[q]: one})
            for c, value in bracket.items():
                wedge = _wedge([c] + rest)
                if wedge is not None:
                    sign, target = wedge
                    add_to(result, target, algebra.field.sign(p + q) * sign * value)
        return result

    render = lambda word: "∧".join(algebra.names[i] for i in word)
    return builder.build(differential, render=render)


def chevalley_eilenberg_cochains(algebra: PAlgebra, module: PModule, top: int) -> ChainComplex:
    """Hom(Λ^k g, M) in degrees 1..top with
    (δω)(x_0, ..., x_k) = Σ_i (-1)^i x_i ω(.. x̂_i ..) + Σ_{i<j} (-1)^{i+j} ω([x_i, x_j], .. x̂_i .. x̂_j ..).
    """
    _require(algebra, "lie")
    _check_module(algebra, module)
    field = algebra.field
    one = field.one
    chain_bases = {k: list(combinations(range(algebra.dim), k)) for k in range(1, top + 1)}

    def coboundary(word: Word) -> Dict[Tuple[Word, int], Dict[int, Any]]:
        result: Dict[Tuple[Word, int], Dict[int, Any]] = {}
        for i, x in enumerate(word):
            source = word[:i] + word[i + 1:]
            action = module.action(("x", x))
            for m_in in range(module.dim):
                for m_out, value in action.column(m_in).items():
                    add_to(result.setdefault((source, m_in), {}), m_out, field.sign(i) * value)
        for i, j in combinations(range(len(word)), 2):
            rest = [x for r, x in enumerate(word) if r not in (i, j)]
            for c, value in algebra.multiply({word[i]: one}, {word[j]: one}).items():
                wedge = _wedge([c] + rest)
                if wedge is None:
                    continue
                sign, source = wedge
                for m in range(module.dim):
                    add_to(result.setdefault((source, m), {}), m, field.sign(i + j) * sign * value)
        return result

    render = lambda word, m: f"[{'∧'.join(algebra.names[i] for i in word)} -> {module.names[m]}]"
    return _hom_complex(chain_bases, module, coboundary, render)


def bar_chains(algebra: PAlgebra, top: int) -> ChainComplex:
    """A^{⊗k} in degrees 1..top with d(a_1 ⊗ ... ⊗ a_k) = Σ_i (-1)^i a_1 ⊗ .. a_i a_{i+1} .. ⊗ a_k.

    :raises UnsupportedOperadError: If the algebra is not associative.
    """
    _require(algebra, "asc")
    field = algebra.field
    one = field.one
    builder = ComplexBuilder(field)
    for k in range(1, top + 1):
        builder.extend((word, k) for word in product(range(algebra.dim), repeat=k))

    def differential(word: Word) -> Dict[Word, Any]:
        result: Dict[Word, Any] = {}
        for i in range(len(word) - 1):
            for c, value in algebra.multiply({word[i]: one}, {word[i + 1]: one}).items():
                add_to(result, word[:i] + (c,) + word[i + 2:], field.sign(i + 1) * value)
        return result

    render = lambda word: "⊗".join(algebra.names[i] for i in word)
    return builder.build(differential, render=render)


def hochschild_cochains(algebra: PAlgebra, module: PModule, top: int) -> ChainComplex:
    """Hom(A^{⊗k}, M) in degrees 1..top with
    (δf)(a_1, ..., a_{k+1}) = a_1 f(a_2, ..) + Σ_i (-1)^i f(.. a_i a_{i+1} ..) + (-1)^{k+1} f(.., a_k) a_{k+1}.
    """
    _require(algebra, "asc")
    _check_module(algebra, module)
    field = algebra.field
    one = field.one
    chain_bases = {k: list(product(range(algebra.dim), repeat=k)) for k in range(1, top + 1)}

    def coboundary(word: Word) -> Dict[Tuple[Word, int], Dict[int, Any]]:
        result: Dict[Tuple[Word, int], Dict[int, Any]] = {}
        k = len(word) - 1
        outer = [(word[1:], module.action(("l", word[0])), 1), (word[:-1], module.action(("r", word[-1])), field.sign(k + 1))]
        for source, action, sign in outer:
            for m_in in range(module.dim):
                for m_out, value in action.column(m_in).items():
                    add_to(result.setdefault((source, m_in), {}), m_out, sign * value)
        for i in range(k):
            for c, value in algebra.multiply({word[i]: one}, {word[i + 1]: one}).items():
                source = word[:i] + (c,) + word[i + 2:]
                for m in range(module.dim):
                    add_to(result.setdefault((source, m), {}), m, field.sign(i + 1) * value)
        return result

    render = lambda word, m: f"[{'⊗'.join(algebra.names[i] for i in word)} -> {module.names[m]}]"
    return _hom_complex(chain_bases, module, coboundary, render)


def classical_chains(algebra: PAlgebra, top: int) -> ChainComplex:
    """
    :raises UnsupportedOperadError: For commutative algebras (Harrison homology) and
        custom operads.
    """
    if algebra.tag == "lie":
        return chevalley_eilenberg_chains(algebra, top)
    if algebra.tag == "asc":
        return bar_chains(algebra, top)
    raise UnsupportedOperadError(f"No classical complex is available for {algebra.presentation.name} algebras.")


def classical_cochains(algebra: PAlgebra, module: PModule, top: int) -> ChainComplex:
    if algebra.tag == "lie":
        return chevalley_eilenberg_cochains(algebra, module, top)
    if algebra.tag == "asc":
        return hochschild_cochains(algebra, module, top)
    raise UnsupportedOperadError(f"No classical complex is available for {algebra.presentation.name} algebras.")


@dataclass
class CrossCheck:
    """Degreewise homology dimensions of the operadic and classical complexes, the
    classical ones already shifted down by one.
    """

    algebra: str
    tag: str
    n_max: int
    operadic: Dict[int, int]
    classical: Dict[int, int]
    operadic_cochains: Dict[int, int] = dataclass_field(default_factory=dict)
    classical_cochains: Dict[int, int] = dataclass_field(default_factory=dict)
    certificate: Optional[str] = None
    certified: Optional[bool] = None

    @property
    def mismatches(self) -> List[str]:
        found = []
        for kind, left, right in (
            ("homology", self.operadic, self.classical),
            ("cohomology", self.operadic_cochains, self.classical_cochains),
        ):
            for n in sorted(set(left) | set(right)):
                if left.get(n, 0) != right.get(n, 0):
                    found.append(f"{kind} in degree {n}: operadic {left.get(n, 0)}, classical {right.get(n, 0)}")
        return found

    @property
    def agrees(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra,
            "operad": self.tag,
            "n_max": self.n_max,
            "degree_shift": "n_operadic = n_classical - 1",
            "operadic_homology": {str(n): v for n, v in self.operadic.items()},
            "classical_homology": {str(n): v for n, v in self.classical.items()},
            "operadic_cohomology": {str(n): v for n, v in self.operadic_cochains.items()},
            "classical_cohomology": {str(n): v for n, v in self.classical_cochains.items()},
            "certificate": self.certificate,
            "certified": self.certified,
            "agrees": self.agrees,
            "mismatches": self.mismatches,
        }


def _shifted(betti: Dict[int, int], n_max: int) -> Dict[int, int]:
    return {n: betti.get(n + 1, 0) for n in range(n_max + 1)}


def classical_cross_check(
    algebra: PAlgebra,
    n_max: int,
    module: Optional[PModule] = None,
    certify: bool = True,
) -> CrossCheck:
    """Compares H^P_n(A) with the classical homology in degree n + 1, and likewise for
    cohomology with coefficients when a module is given.

    :param algebra: A lie or asc algebra.
    :type algebra: PAlgebra
    :param n_max: Top operadic degree.
    :type n_max: int
    :param module: Coefficients for the cochain comparison.
    :type module: PModule, optional
    :param certify: Record a Koszulness certificate up to arity n_max + 1.
    :type certify: bool
    :rtype: CrossCheck
    :raises UnsupportedOperadError: Outside lie and asc.
    """
    classical = classical_chains(algebra, n_max + 1).betti()
    operadic = OperadicChainComplex(algebra, n_max).complex().betti()
    check = CrossCheck(
        algebra.name, str(algebra.tag), n_max,
        {n: operadic.dim(n) for n in range(n_max + 1)},
        _shifted({d: classical.dim(d) for d in classical.degrees()}, n_max),
    )
    if module is not None:
        classical_co = classical_cochains(algebra, module, n_max + 1).betti()
        operadic_co = OperadicCochainComplex(algebra, module, n_max).complex().betti()
        check.operadic_cochains = {n: operadic_co.dim(n) for n in range(n_max + 1)}
        check.classical_cochains = _shifted({d: classical_co.dim(d) for d in classical_co.degrees()}, n_max)
    if certify:
        certificate = koszulness_certificate(algebra.presentation, max(n_max + 1, 2))
        check.certificate = certificate.label
        check.certified = certificate.verified
    if check.agrees:
        logger.info("Cross-check of %s up to degree %d agrees", algebra.name, n_max)
    else:
        logger.warning("Cross-check of %s disagrees: %s", algebra.name, "; ".join(check.mismatches))
    return check
