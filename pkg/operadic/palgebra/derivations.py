"""This module contains derivations into modules, the module of Kähler differentials
and the check that the latter represents the former.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Tuple

from operadic.exactalg import GradedSpace, Quotient, SparseMatrix, Vector, add_to, solve_kernel
from operadic.exceptions import AlgebraError, ModuleError
from operadic.palgebra.algebra import AlgebraMorphism, PAlgebra
from operadic.palgebra.enveloping import Letter, envelope
from operadic.palgebra.modules import PModule, module_homomorphisms, restrict_module

logger = logging.getLogger(__name__)

# (coefficient, letter side) of g(a, e) with e in the given slot: a acts through the letter.
INSERTIONS: Dict[Tuple[str, str, int], List[Tuple[int, str]]] = {
    ("lie", "b", 1): [(1, "x")],
    ("lie", "b", 0): [(-1, "x")],
    ("com", "m", 1): [(1, "x")],
    ("com", "m", 0): [(1, "x")],
    ("asc", "m", 1): [(1, "l")],
    ("asc", "m", 0): [(1, "r")],
    ("asc", "mop", 1): [(1, "r")],
    ("asc", "mop", 0): [(1, "l")],
}


def insertion_letters(algebra: PAlgebra, generator: str, k: int, slot: int) -> List[Tuple[int, Letter]]:
    """Letters realizing e -> g(.., a_k, ..) with e in position slot (0 or 1) of the
    binary generator g.

    :raises AlgebraError: For generators without a module interpretation.
    """
    tag = algebra.presentation.require_classical()
    try:
        return [(c, (side, k)) for c, side in INSERTIONS[(tag, generator, slot)]]
    except KeyError:
        raise AlgebraError(f"{generator} has no module interpretation over {tag}.") from None


def insertion(module: PModule, generator: str, argument: Mapping[int, Any], slot: int) -> SparseMatrix:
    """The matrix of e -> g(a, e) (slot 1) or e -> g(e, a) (slot 0) on a module."""
    matrix = SparseMatrix.zeros((module.dim, module.dim), module.field)
    for k, value in argument.items():
        for c, letter in insertion_letters(module.algebra, generator, k, slot):
            if letter in module.actions:
                matrix = matrix + module.actions[letter].scale(value * c)
    return matrix


def binary_generators(algebra: PAlgebra) -> List[Tuple[str, int, int]]:
    generators = algebra.presentation.generators
    return [(generators.names(k)[g], k, g) for k, g in algebra.operations()]


@dataclass
class DerivationSpace:
    """Basis of Der(B, E), grouped by the weight shift of each derivation."""

    source: str
    module: str
    basis: List[SparseMatrix] = dataclass_field(default_factory=list)
    shifts: List[int] = dataclass_field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def space(self) -> GradedSpace:
        dims: Dict[int, int] = {}
        for s in self.shifts:
            dims[s] = dims.get(s, 0) + 1
        return GradedSpace(dims)


def derivations(morphism: AlgebraMorphism, module: PModule, graded: bool = False) -> DerivationSpace:
    """Linear θ: B -> E with θ(g(b, b')) = g(f b, θ b') + g(θ b, f b') for every
    generator g.

    :param morphism: f: B -> A.
    :type morphism: AlgebraMorphism
    :param module: E, a module over A.
    :type module: PModule
    :param graded: Keep only weight-preserving derivations.
    :type graded: bool
    :rtype: DerivationSpace
    :raises ModuleError: If E is not a module over the target of f.
    """
    if module.algebra is not morphism.target:
        raise ModuleError(f"{module.name} is not a module over {morphism.target.name}.")
    source = morphism.source
    result = DerivationSpace(source.name, module.name)
    if not source.dim or not module.dim:
        return result
    field = source.field
    shifts = sorted({w - v for w in module.weights for v in source.weights})
    generators = [(name, k, g) for name, k, g in binary_generators(source) if k == 2]
    left = {
        (name, i): insertion(module, name, morphism.image(i), 0)
        for name, _, _ in generators for i in range(source.dim)
    }
    right = {
        (name, i): insertion(module, name, morphism.image(i), 1)
        for name, _, _ in generators for i in range(source.dim)
    }
    for shift in shifts:
        if graded and shift:
            continue
        unknowns: Dict[Tuple[int, int], int] = {}
        for e in range(module.dim):
            for i in range(source.dim):
                if module.weights[e] - source.weights[i] == shift:
                    unknowns[(e, i)] = len(unknowns)
        if not unknowns:
            continue
        rows: List[Vector] = []
        for name, k, g in generators:
            for i, j in product(range(source.dim), repeat=2):
                equations: Dict[int, Vector] = {}
                # θ(g(b_i, b_j))
                for c, value in source.apply_operation(k, g, [{i: field.one}, {j: field.one}]).items():
                    for e in range(module.dim):
                        u = unknowns.get((e, c))
                        if u is not None:
                            add_to(equations.setdefault(e, {}), u, value)
                # - g(f b_i, θ b_j) - g(θ b_i, f b_j)
                for e in range(module.dim):
                    u = unknowns.get((e, j))
                    if u is not None:
                        for e2, value in right[(name, i)].column(e).items():
                            add_to(equations.setdefault(e2, {}), u, -value)
                    u = unknowns.get((e, i))
                    if u is not None:
                        for e2, value in left[(name, j)].column(e).items():
                            add_to(equations.setdefault(e2, {}), u, -value)
                rows.extend(eq for eq in equations.values() if eq)
        index = {u: pair for pair, u in unknowns.items()}
        for solution in solve_kernel(rows, len(unknowns), field):
            entries = [(*index[u], v) for u, v in solution.items()]
            result.basis.append(SparseMatrix.from_entries(entries, (module.dim, source.dim), field))
            result.shifts.append(shift)
    logger.debug("Der(%s, %s): dimension %d", source.name, module.name, result.dim)
    return result


def kahler(algebra: PAlgebra, bound: Optional[int] = None) -> PModule:
    """Ω_A: U(A) ⊗ A modulo the U(A)-span of
    1 ⊗ g(a_i, a_j) - g(a_i, d a_j) - g(d a_i, a_j).

    For lie only U(A) up to PBW degree bound is used; the result is exact in
    filtration below bound - 1.

    :raises AlgebraError: If a Lie algebra is given without a bound.
    """
    enveloping = envelope(algebra)
    tag = algebra.tag
    if tag == "lie" and algebra.dim and bound is None:
        raise AlgebraError("Kähler differentials of a Lie algebra need a PBW bound.")
    keys = enveloping.basis(bound if tag == "lie" else None)
    keys = sorted(keys, key=lambda key: -enveloping.filtration(key))
    d = algebra.dim
    pairs = list(product(keys, range(d)))
    position = {pair: k for k, pair in enumerate(pairs)}
    field = algebra.field
    one = field.one
    relations: List[Vector] = []
    for name, k, g in binary_generators(algebra):
        if k != 2:
            continue
        for i, j in product(range(d), repeat=2):
            # 1 ⊗ g(a_i, a_j) minus the two insertions, as an element of U ⊗ A
            relation: Dict[Tuple[Any, int], Any] = {}
            for c, value in algebra.apply_operation(k, g, [{i: one}, {j: one}]).items():
                add_to(relation, (enveloping.unit, c), value)
            for c, letter in insertion_letters(algebra, name, i, 1):
                add_to(relation, (enveloping.letter_key(letter), j), -c * one)
            for c, letter in insertion_letters(algebra, name, j, 0):
                add_to(relation, (enveloping.letter_key(letter), i), -c * one)
            for u in keys:
                if bound is not None and tag == "lie" and enveloping.filtration(u) >= bound:
                    continue
                moved: Vector = {}
                for (key, c), value in relation.items():
                    for key2, v in enveloping.multiply(u, key).items():
                        p = position.get((key2, c))
                        if p is not None:
                            add_to(moved, p, value * v)
                if moved:
                    relations.append(moved)
    quotient = Quotient(len(pairs), relations, field)
    actions = {}
    for letter in enveloping.letters():
        columns = []
        for index in quotient.basis:
            key, c = pairs[index]
            moved = {}
            for key2, v in enveloping.left_multiply(letter, key).items():
                p = position.get((key2, c))
                if p is not None:
                    moved[p] = v
            columns.append(quotient.project(moved))
        actions[letter] = SparseMatrix.from_columns(columns, len(quotient), field)
    names, weights, filtration = [], [], []
    for index in quotient.basis:
        key, c = pairs[index]
        names.append(f"d{algebra.names[c]}" if key == enveloping.unit else f"{enveloping.render(key)}⊗d{algebra.names[c]}")
        weights.append(enveloping.weight(key) + algebra.weights[c])
        filtration.append(enveloping.filtration(key))
    exact_below = bound - 1 if tag == "lie" and algebra.dim else None
    logger.debug("Kähler differentials of %s: dimension %d", algebra.name, len(quotient))
    return PModule(algebra, names, weights, actions, filtration, exact_below, name=f"Ω{algebra.name}", enveloping=enveloping)


def representability(morphism: AlgebraMorphism, module: PModule, bound: Optional[int] = None) -> Tuple[int, int]:
    """dim Hom(Ω_B, f* E) and dim Der(B, E), computed independently; they agree when
    Ω_B represents derivations.
    """
    omega = kahler(morphism.source, bound)
    restricted = restrict_module(morphism, module)
    homs = module_homomorphisms(omega, restricted, graded=False)
    return len(homs), derivations(morphism, module).dim
