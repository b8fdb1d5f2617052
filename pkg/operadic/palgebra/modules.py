"""This module contains modules over algebras, stored as modules over the enveloping
algebra: one action matrix per letter of U(A).
"""
from __future__ import annotations

import logging
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from operadic.exactalg import (
    GradedSpace,
    Quotient,
    SparseMatrix,
    Vector,
    add_scaled,
    add_to,
    solve_kernel,
)
from operadic.exceptions import ModuleError
from operadic.palgebra.algebra import AlgebraMorphism, PAlgebra
from operadic.palgebra.enveloping import EnvelopingAlgebra, Key, Letter, envelope
from operadic.palgebra.factorization import RelativeFactorization

logger = logging.getLogger(__name__)


class _ActionModule:
    """Shared storage of left and right modules."""

    __slots__ = ("algebra", "enveloping", "field", "names", "weights", "filtration", "exact_below", "actions", "name")

    def __init__(
        self,
        algebra: PAlgebra,
        names: Sequence[str],
        weights: Sequence[int],
        actions: Mapping[Letter, SparseMatrix],
        filtration: Optional[Sequence[int]] = None,
        exact_below: Optional[int] = None,
        name: str = "M",
        enveloping: Optional[EnvelopingAlgebra] = None,
    ):
        """
        :param algebra: The algebra acting.
        :type algebra: PAlgebra
        :param names: Basis names.
        :type names: sequence of str
        :param weights: Weight of each basis vector.
        :type weights: sequence of int
        :param actions: Action matrix of each letter of U(A); missing letters act by 0.
        :type actions: mapping
        :param filtration: Filtration degree of each basis vector, 0 by default.
        :type filtration: sequence of int, optional
        :param exact_below: Letters act exactly on vectors of filtration below this
            bound; beyond it the action was truncated. None when exact everywhere.
        :type exact_below: int, optional
        :raises ModuleError: On unknown letters or mismatched shapes.
        """
        self.algebra = algebra
        self.enveloping = enveloping or envelope(algebra)
        self.field = algebra.field
        self.names = list(names)
        self.weights = [int(w) for w in weights]
        self.filtration = list(filtration) if filtration is not None else [0] * len(self.names)
        self.exact_below = exact_below
        self.name = name
        if len(self.weights) != len(self.names) or len(self.filtration) != len(self.names):
            raise ModuleError(f"{name}: names, weights and filtration differ in length.")
        letters = set(self.enveloping.letters())
        d = len(self.names)
        self.actions: Dict[Letter, SparseMatrix] = {}
        for letter, matrix in actions.items():
            if letter not in letters:
                raise ModuleError(f"{name}: {letter} is not a letter of U({algebra.name}).")
            if matrix.shape != (d, d):
                raise ModuleError(f"{name}: action of {letter} has shape {matrix.shape}, not {(d, d)}.")
            if not matrix.is_zero():
                self.actions[letter] = matrix

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def carrier(self) -> GradedSpace:
        dims: Dict[int, int] = {}
        for w in self.weights:
            dims[w] = dims.get(w, 0) + 1
        return GradedSpace(dims)

    def action(self, letter: Letter) -> SparseMatrix:
        matrix = self.actions.get(letter)
        if matrix is None:
            return SparseMatrix.zeros((self.dim, self.dim), self.field)
        return matrix

    def act(self, letter: Letter, vector: Mapping[int, Any]) -> Vector:
        matrix = self.actions.get(letter)
        if matrix is None:
            return {}
        return matrix.apply(vector)

    def reliable(self, steps: int = 1) -> List[int]:
        """Basis vectors on which words of the given length act exactly."""
        if self.exact_below is None:
            return list(range(self.dim))
        return [i for i in range(self.dim) if self.filtration[i] + steps <= self.exact_below]

    def weight_components(self) -> Dict[int, List[int]]:
        components: Dict[int, List[int]] = {}
        for i, w in enumerate(self.weights):
            components.setdefault(w, []).append(i)
        return dict(sorted(components.items()))

    def render(self, vector: Mapping[int, Any]) -> str:
        if not vector:
            return "0"
        return " + ".join(f"{self.field.to_text(vector[i])}*{self.names[i]}" for i in sorted(vector))

    def _weight_violations(self) -> List[str]:
        violations = []
        for letter, matrix in sorted(self.actions.items()):
            shift = self.enveloping.letter_weight(letter)
            for i, j, _ in matrix.entries():
                if self.weights[i] != self.weights[j] + shift:
                    violations.append(
                        f"{self.enveloping.letter_name(letter)} sends {self.names[j]} "
                        f"(weight {self.weights[j]}) to {self.names[i]} (weight {self.weights[i]})"
                    )
                    break
        return violations

    def _restricted_actions(self, morphism: AlgebraMorphism) -> Dict[Letter, SparseMatrix]:
        source = envelope(morphism.source)
        actions = {}
        for letter in source.letters():
            tag, k = letter
            matrix = SparseMatrix.zeros((self.dim, self.dim), self.field)
            for j, value in morphism.image(k).items():
                if (tag, j) in self.actions:
                    matrix = matrix + self.actions[(tag, j)].scale(value)
            actions[letter] = matrix
        return actions


class PModule(_ActionModule):
    """A left module: letter p acts by actions[p]; a word acts letter by letter from
    the right.
    """

    __slots__ = ()

    def act_word(self, word: Sequence[Letter], vector: Mapping[int, Any]) -> Vector:
        current = dict(vector)
        for letter in reversed(word):
            if not current:
                break
            current = self.act(letter, current)
        return current

    def act_key(self, key: Key, vector: Mapping[int, Any]) -> Vector:
        return self.act_word(self.enveloping.word(key), vector)

    def act_element(self, element: Mapping[Key, Any], vector: Mapping[int, Any]) -> Vector:
        result: Vector = {}
        for key, value in element.items():
            add_scaled(result, self.act_key(key, vector), value)
        return result

    def violations(self) -> List[str]:
        """Weight shifts and the relations p(q v) = (pq) v of U(A), on the vectors where
        both sides are computed exactly.
        """
        found = self._weight_violations()
        one = self.field.one
        enveloping = self.enveloping
        letters = enveloping.letters()
        reliable = self.reliable(2)
        for p, q in product(letters, letters):
            expected = enveloping.left_multiply(p, enveloping.letter_key(q))
            for j in reliable:
                basis = {j: one}
                if self.act(p, self.act(q, basis)) != self.act_element(expected, basis):
                    found.append(
                        f"{enveloping.letter_name(p)}({enveloping.letter_name(q)}·{self.names[j]}) "
                        f"differs from ({enveloping.letter_name(p)}{enveloping.letter_name(q)})·{self.names[j]}"
                    )
                    break
        return found

    def restricted(self, morphism: AlgebraMorphism, name: Optional[str] = None) -> PModule:
        return restrict_module(morphism, self, name)

    def __repr__(self) -> str:
        return f"PModule({self.name} over {self.algebra.name}, dim={self.dim})"


class RightModule(_ActionModule):
    """A right module: v · (p q) = (v · p) · q."""

    __slots__ = ()

    def act_word(self, word: Sequence[Letter], vector: Mapping[int, Any]) -> Vector:
        current = dict(vector)
        for letter in word:
            if not current:
                break
            current = self.act(letter, current)
        return current

    def act_key(self, key: Key, vector: Mapping[int, Any]) -> Vector:
        return self.act_word(self.enveloping.word(key), vector)

    def act_element(self, element: Mapping[Key, Any], vector: Mapping[int, Any]) -> Vector:
        result: Vector = {}
        for key, value in element.items():
            add_scaled(result, self.act_key(key, vector), value)
        return result

    def violations(self) -> List[str]:
        found = self._weight_violations()
        one = self.field.one
        enveloping = self.enveloping
        letters = enveloping.letters()
        for p, q in product(letters, letters):
            expected = enveloping.left_multiply(p, enveloping.letter_key(q))
            for j in self.reliable(2):
                basis = {j: one}
                if self.act(q, self.act(p, basis)) != self.act_element(expected, basis):
                    found.append(
                        f"({self.names[j]}·{enveloping.letter_name(p)})·{enveloping.letter_name(q)} "
                        f"differs from {self.names[j]}·({enveloping.letter_name(p)}{enveloping.letter_name(q)})"
                    )
                    break
        return found

    @classmethod
    def from_left(cls, module: PModule, name: Optional[str] = None) -> RightModule:
        """v · u = S(u) v for the anti-automorphism S of U(A)."""
        enveloping = module.enveloping
        actions = {}
        for letter in enveloping.letters():
            matrix = SparseMatrix.zeros((module.dim, module.dim), module.field)
            for key, value in enveloping.antipode_letter(letter).items():
                image = enveloping.word(key)[0]
                matrix = matrix + module.action(image).scale(value)
            actions[letter] = matrix
        return cls(
            module.algebra, module.names, module.weights, actions, module.filtration,
            module.exact_below, name or module.name, enveloping,
        )

    @classmethod
    def dual_of(cls, module: PModule, name: Optional[str] = None) -> RightModule:
        """N* with (φ · u)(n) = φ(u n).

        :raises ModuleError: If the action on N was truncated.
        """
        if module.exact_below is not None:
            raise ModuleError(f"{module.name} is truncated; its dual is not a module.")
        actions = {letter: matrix.T for letter, matrix in module.actions.items()}
        return cls(
            module.algebra, [f"{n}*" for n in module.names], [-w for w in module.weights],
            actions, name=name or f"{module.name}*", enveloping=module.enveloping,
        )

    @classmethod
    def trivial(cls, algebra: PAlgebra, weights: Sequence[int] = (0,), names: Optional[Sequence[str]] = None) -> RightModule:
        names = list(names) if names is not None else ["1"] if len(weights) == 1 else [f"t{i}" for i in range(len(weights))]
        return cls(algebra, names, weights, {}, name="k")

    def __repr__(self) -> str:
        return f"RightModule({self.name} over {self.algebra.name}, dim={self.dim})"


def trivial_module(algebra: PAlgebra, weights: Sequence[int] = (0,), names: Optional[Sequence[str]] = None) -> PModule:
    """Every letter acts by zero: the augmentation module, one copy per weight."""
    if names is None:
        names = ["1"] if len(weights) == 1 else [f"t{i}" for i in range(len(weights))]
    return PModule(algebra, names, weights, {}, name="k")


def adjoint_module(algebra: PAlgebra) -> PModule:
    """A acting on itself: ad for lie, multiplication for com, both sides for asc."""
    tag = algebra.presentation.require_classical()
    enveloping = envelope(algebra)
    d = algebra.dim
    actions = {}
    for letter in enveloping.letters():
        side, i = letter
        columns = []
        for j in range(d):
            if tag == "asc" and side == "r":
                columns.append(algebra.table("m").get((j, i), {}))
            else:
                columns.append(algebra.multiply({i: algebra.field.one}, {j: algebra.field.one}))
        actions[letter] = SparseMatrix.from_columns(columns, d, algebra.field)
    return PModule(algebra, algebra.names, algebra.weights, actions, name=algebra.name, enveloping=enveloping)


def dual_module(module: PModule, name: Optional[str] = None) -> PModule:
    """The contragredient module: (u φ)(m) = φ(S(u) m), weights negated.

    :raises ModuleError: If the action on the module was truncated.
    """
    if module.exact_below is not None:
        raise ModuleError(f"{module.name} is truncated; its dual is not a module.")
    enveloping = module.enveloping
    actions = {}
    for letter in enveloping.letters():
        matrix = SparseMatrix.zeros((module.dim, module.dim), module.field)
        for key, value in enveloping.antipode_letter(letter).items():
            matrix = matrix + module.action(enveloping.word(key)[0]).T.scale(value)
        actions[letter] = matrix
    return PModule(
        module.algebra, [f"{n}*" for n in module.names], [-w for w in module.weights], actions,
        name=name or f"{module.name}*", enveloping=enveloping,
    )


def free_module(algebra: PAlgebra, space: GradedSpace, bound: Optional[int] = None) -> PModule:
    """U(A) ⊗ M with U(A) acting by left multiplication, truncated at filtration bound.

    :param algebra: The algebra.
    :type algebra: PAlgebra
    :param space: The generating space M.
    :type space: GradedSpace
    :param bound: PBW bound; required for nonzero Lie algebras.
    :type bound: int, optional
    :return: The free module; for lie its action is exact below the bound.
    :rtype: PModule
    """
    enveloping = envelope(algebra)
    keys = enveloping.basis(bound)
    generators: List[Tuple[str, int]] = []
    for degree in space.degrees():
        labels = space.labels(degree) or [f"m{degree}_{i}" for i in range(space.dim(degree))]
        generators.extend((label, degree) for label in labels)
    position = {(key, g): k for k, (key, g) in enumerate(product(keys, range(len(generators))))}
    names, weights, filtration = [], [], []
    for key, g in position:
        label, degree = generators[g]
        names.append(label if key == enveloping.unit else f"{enveloping.render(key)}⊗{label}")
        weights.append(enveloping.weight(key) + degree)
        filtration.append(enveloping.filtration(key))
    actions = {}
    for letter in enveloping.letters():
        entries = []
        for (key, g), column in position.items():
            for target, value in enveloping.left_multiply(letter, key).items():
                row = position.get((target, g))
                if row is not None:
                    entries.append((row, column, value))
        actions[letter] = SparseMatrix.from_entries(entries, (len(position), len(position)), algebra.field)
    exact_below = bound if algebra.tag == "lie" and algebra.dim else None
    return PModule(algebra, names, weights, actions, filtration, exact_below, name="U⊗M", enveloping=enveloping)


def restrict_module(morphism: AlgebraMorphism, module: PModule, name: Optional[str] = None) -> PModule:
    """f* N: the source algebra acting through f.

    :raises ModuleError: If N is not a module over the target of f.
    """
    if module.algebra is not morphism.target:
        raise ModuleError(f"{module.name} is not a module over {morphism.target.name}.")
    return PModule(
        morphism.source, module.names, module.weights, module._restricted_actions(morphism),
        module.filtration, module.exact_below, name or f"f*{module.name}",
    )


def induce_module(
    morphism: AlgebraMorphism,
    module: PModule,
    bound: Optional[int] = None,
    name: Optional[str] = None,
) -> PModule:
    """f_! M = U(A) ⊗_{U(B)} M.

    For lie, the PBW factorization gives the basis c ⊗ m with c a complement monomial;
    vectors of total filtration at most bound are kept. For com and asc the quotient of
    U(A) ⊗ M by the relations u f(b) ⊗ m - u ⊗ b m is computed directly.

    :raises ModuleError: If M is not a module over the source of f.
    """
    if module.algebra is not morphism.source:
        raise ModuleError(f"{module.name} is not a module over {morphism.source.name}.")
    target = morphism.target
    tag = target.presentation.require_classical()
    name = name or f"f!{module.name}"
    if tag == "lie":
        return induce_with_basis(morphism, module, bound, name)[0]
    return _induce_finite(morphism, module, name)


def induce_with_basis(
    morphism: AlgebraMorphism,
    module: PModule,
    bound: Optional[int] = None,
    name: Optional[str] = None,
) -> Tuple[PModule, List[Tuple[Key, int]], RelativeFactorization]:
    """f_! M on the basis c ⊗ m of complement monomials c and basis vectors m.

    :return: The module, its basis as pairs (complement key, index in M) and the
        factorization used.
    :raises ModuleError: If a bound is needed and missing, or M is truncated below it.
    :raises UnsupportedOperadError: Where no factorization exists.
    """
    if module.algebra is not morphism.source:
        raise ModuleError(f"{module.name} is not a module over {morphism.source.name}.")
    name = name or f"f!{module.name}"
    lie = morphism.target.tag == "lie"
    if lie and bound is None and morphism.rank < morphism.target.dim:
        raise ModuleError("Induction of Lie modules needs a PBW bound.")
    factorization = RelativeFactorization(morphism, pbw_bound=bound if lie else None)
    if module.exact_below is not None and bound is not None and module.exact_below < bound:
        raise ModuleError(f"{module.name} is truncated below the requested bound {bound}.")
    keys = factorization.complement_keys(bound or 0)
    truncated = lie and factorization.rank > 0
    pairs = [
        (key, m) for key in keys for m in range(module.dim)
        if not truncated or factorization.complement_filtration(key) + module.filtration[m] <= bound
    ]
    position = {pair: k for k, pair in enumerate(pairs)}
    one = module.field.one
    actions = {}
    enveloping = envelope(morphism.target)
    for letter in enveloping.letters():
        entries = []
        for (key, m), column in position.items():
            for coefficient, head, word in factorization.left_multiply(letter, key):
                for m2, value in module.act_word(word, {m: one}).items():
                    row = position.get((head, m2))
                    if row is not None:
                        entries.append((row, column, coefficient * value))
        actions[letter] = SparseMatrix.from_entries(entries, (len(pairs), len(pairs)), module.field)
    names = [
        module.names[m] if key == factorization.unit else f"{factorization.render(key)}⊗{module.names[m]}"
        for key, m in pairs
    ]
    weights = [factorization.complement_weight(key) + module.weights[m] for key, m in pairs]
    filtration = [factorization.complement_filtration(key) + module.filtration[m] for key, m in pairs]
    exact_below = bound if truncated else module.exact_below
    induced = PModule(morphism.target, names, weights, actions, filtration, exact_below, name, enveloping)
    return induced, pairs, factorization


def _induce_finite(morphism: AlgebraMorphism, module: PModule, name: str) -> PModule:
    target = morphism.target
    enveloping = envelope(target)
    keys = enveloping.basis()
    dim = len(keys) * module.dim
    position = {(key, m): k for k, (key, m) in enumerate(product(keys, range(module.dim)))}
    one = module.field.one
    source = envelope(morphism.source)
    relations = []
    for key in keys:
        for letter in source.letters():
            tag, k = letter
            for m in range(module.dim):
                relation: Vector = {}
                for j, value in morphism.image(k).items():
                    for key2, v in enveloping.multiply(key, enveloping.letter_key((tag, j))).items():
                        add_to(relation, position[(key2, m)], value * v)
                for m2, v in module.act(letter, {m: one}).items():
                    add_to(relation, position[(key, m2)], -v)
                if relation:
                    relations.append(relation)
    quotient = Quotient(dim, relations, module.field)
    pairs = list(position)
    actions = {}
    for letter in enveloping.letters():
        columns = []
        for index in quotient.basis:
            key, m = pairs[index]
            moved = {position[(key2, m)]: v for key2, v in enveloping.left_multiply(letter, key).items()}
            columns.append(quotient.project(moved))
        actions[letter] = SparseMatrix.from_columns(columns, len(quotient), module.field)
    names, weights = [], []
    for index in quotient.basis:
        key, m = pairs[index]
        names.append(module.names[m] if key == enveloping.unit else f"{enveloping.render(key)}⊗{module.names[m]}")
        weights.append(enveloping.weight(key) + module.weights[m])
    logger.debug("Induced module %s: %d generators, dimension %d", name, dim, len(quotient))
    return PModule(target, names, weights, actions, name=name, enveloping=enveloping)


def module_homomorphisms(source: PModule, target: PModule, graded: bool = True) -> List[SparseMatrix]:
    """Basis of the module maps source -> target, as dim(target) x dim(source) matrices.

    On a truncated source the maps are defined on the vectors of filtration below the
    truncation and the equations imposed where the action is exact.

    :param graded: Restrict to weight-preserving maps.
    :type graded: bool
    :raises ModuleError: If the modules live over different algebras.
    """
    if source.algebra is not target.algebra:
        raise ModuleError(f"{source.name} and {target.name} live over different algebras.")
    unknowns: Dict[Tuple[int, int], int] = {}
    domain = source.reliable(0)
    for i in range(target.dim):
        for j in domain:
            if not graded or target.weights[i] == source.weights[j]:
                unknowns[(i, j)] = len(unknowns)
    rows: List[Vector] = []
    one = source.field.one
    for letter in source.enveloping.letters():
        for j in source.reliable(1):
            # φ(p e_j) - p φ(e_j) = 0, row by row in the target
            equations: Dict[int, Vector] = {}
            for j2, value in source.act(letter, {j: one}).items():
                for i in range(target.dim):
                    u = unknowns.get((i, j2))
                    if u is not None:
                        add_to(equations.setdefault(i, {}), u, value)
            for i in range(target.dim):
                u = unknowns.get((i, j))
                if u is None:
                    continue
                for i2, value in target.act(letter, {i: one}).items():
                    add_to(equations.setdefault(i2, {}), u, -value)
            rows.extend(eq for eq in equations.values() if eq)
    solutions = solve_kernel(rows, len(unknowns), source.field)
    index = {u: pair for pair, u in unknowns.items()}
    shape = (target.dim, source.dim)
    return [
        SparseMatrix.from_entries([(*index[u], v) for u, v in solution.items()], shape, source.field)
        for solution in solutions
    ]
