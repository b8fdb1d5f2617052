"""This module contains PAlgebra, a finite dimensional weight-graded algebra over an
operad given by structure constants, its validation and morphisms between algebras.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from operadic.exactalg import Field, GradedSpace, Rationals, Span, SparseMatrix, Vector, add_scaled, add_to
from operadic.exceptions import AlgebraError, PresentationError
from operadic.operad_core import OperadPresentation, Tree, classical_presentation
from operadic.operad_core.trees import is_leaf, leaves

logger = logging.getLogger(__name__)

Table = Dict[Tuple[int, ...], Vector]

MAIN_OPERATION = {"com": "m", "asc": "m", "lie": "b"}


class PAlgebra:
    """A P-algebra structure on k^d, concentrated in homological degree 0.

    For every generator of the presentation the algebra stores a sparse table sending a
    tuple of basis indices to the value of the operation on those basis vectors.
    """

    __slots__ = ("presentation", "names", "weights", "field", "name", "_operations")

    def __init__(
        self,
        presentation: OperadPresentation,
        names: Sequence[str],
        weights: Sequence[int],
        tables: Mapping[str, Mapping[Tuple[int, ...], Mapping[int, Any]]],
        name: str = "A",
    ):
        """
        :param presentation: The operad the algebra lives over.
        :type presentation: OperadPresentation
        :param names: Names of the basis vectors.
        :type names: sequence of str
        :param weights: Internal weight of each basis vector.
        :type weights: sequence of int
        :param tables: Per generator name, the values on tuples of basis indices.
        :type tables: mapping
        :param name: Display name.
        :type name: str
        :raises AlgebraError: On duplicate names, unknown generators or bad indices.
        """
        if len(set(names)) != len(names):
            raise AlgebraError(f"{name}: duplicate basis names in {list(names)}.")
        if len(weights) != len(names):
            raise AlgebraError(f"{name}: {len(names)} basis vectors but {len(weights)} weights.")
        self.presentation = presentation
        self.field: Field = presentation.field
        self.names: List[str] = list(names)
        self.weights: List[int] = [int(w) for w in weights]
        self.name = name
        self._operations: Dict[Tuple[int, int], Table] = {}
        d = len(self.names)
        for generator, table in tables.items():
            try:
                k, g = presentation.generators.lookup(generator)
            except PresentationError:
                raise AlgebraError(f"{name}: {presentation.name} has no generator {generator!r}.") from None
            if presentation.generators.degree(k, g):
                raise AlgebraError(f"{name}: operations of nonzero degree are not supported.")
            cleaned: Table = {}
            for inputs, value in table.items():
                if len(inputs) != k or any(i < 0 or i >= d for i in inputs):
                    raise AlgebraError(f"{name}: bad inputs {inputs} for {generator}.")
                vector = {i: v for i, v in value.items() if v}
                if any(i < 0 or i >= d for i in vector):
                    raise AlgebraError(f"{name}: value of {generator}{inputs} leaves the basis.")
                if vector:
                    cleaned[tuple(inputs)] = vector
            self._operations[(k, g)] = cleaned

    @classmethod
    def lie(
        cls,
        names: Sequence[str],
        weights: Sequence[int],
        brackets: Mapping[Tuple[int, int], Mapping[int, Any]],
        field: Field = Rationals,
        name: str = "A",
    ) -> PAlgebra:
        """A Lie algebra from the brackets of some pairs; the others follow by
        antisymmetry.

        :raises AlgebraError: If [x, x] is nonzero or a pair is given inconsistently.
        """
        table: Table = {}
        for (i, j), value in brackets.items():
            vector = {k: v for k, v in value.items() if v}
            if i == j:
                if vector:
                    raise AlgebraError(f"{name}: [{names[i]},{names[i]}] must vanish.")
                continue
            opposite = {k: -v for k, v in vector.items()}
            if table.get((i, j), vector) != vector or table.get((j, i), opposite) != opposite:
                raise AlgebraError(
                    f"{name}: [{names[i]},{names[j]}] and [{names[j]},{names[i]}] are not opposite."
                )
            if vector:
                table[(i, j)] = vector
                table[(j, i)] = opposite
        return cls(classical_presentation("lie", field), names, weights, {"b": table}, name)

    @classmethod
    def com(
        cls,
        names: Sequence[str],
        weights: Sequence[int],
        products: Mapping[Tuple[int, int], Mapping[int, Any]],
        field: Field = Rationals,
        name: str = "A",
    ) -> PAlgebra:
        """A commutative algebra; xy given for some pairs, yx by symmetry.

        :raises AlgebraError: If a pair and its swap are given different values.
        """
        table: Table = {}
        for (i, j), value in products.items():
            vector = {k: v for k, v in value.items() if v}
            for key in ((i, j), (j, i)):
                if table.get(key, vector) != vector:
                    raise AlgebraError(f"{name}: {names[i]}{names[j]} and {names[j]}{names[i]} differ.")
                if vector:
                    table[key] = vector
        return cls(classical_presentation("com", field), names, weights, {"m": table}, name)

    @classmethod
    def asc(
        cls,
        names: Sequence[str],
        weights: Sequence[int],
        products: Mapping[Tuple[int, int], Mapping[int, Any]],
        field: Field = Rationals,
        name: str = "A",
    ) -> PAlgebra:
        """An associative algebra; the opposite product is filled in."""
        table: Table = {}
        opposite: Table = {}
        for (i, j), value in products.items():
            vector = {k: v for k, v in value.items() if v}
            if vector:
                table[(i, j)] = vector
                opposite[(j, i)] = dict(vector)
        return cls(classical_presentation("asc", field), names, weights, {"m": table, "mop": opposite}, name)

    @classmethod
    def zero(cls, tag: str, field: Field = Rationals, name: str = "0") -> PAlgebra:
        """The zero algebra; its enveloping algebra is the ground field."""
        return cls(classical_presentation(tag, field), [], [], {}, name)

    @property
    def tag(self) -> Optional[str]:
        return self.presentation.tag

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def carrier(self) -> GradedSpace:
        """The underlying space graded by weight, with basis names as labels."""
        dims: Dict[int, int] = {}
        labels: Dict[int, List[str]] = {}
        for n, w in zip(self.names, self.weights):
            dims[w] = dims.get(w, 0) + 1
            labels.setdefault(w, []).append(n)
        return GradedSpace(dims, labels)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlgebraError(f"{self.name} has no basis vector {name!r}.") from None

    def generator_key(self, name: str) -> Tuple[int, int]:
        return self.presentation.generators.lookup(name)

    def table(self, generator: str) -> Table:
        return self._operations.get(self.generator_key(generator), {})

    def operations(self) -> List[Tuple[int, int]]:
        """Arity and index of every generator of the presentation."""
        generators = self.presentation.generators
        return [(k, g) for k in generators.arities() for g in range(generators.dim(k))]

    def apply_operation(self, k: int, g: int, arguments: Sequence[Mapping[int, Any]]) -> Vector:
        """Multilinear extension of a generator to arbitrary vectors."""
        table = self._operations.get((k, g), {})
        result: Vector = {}
        if not table:
            return result
        for combo in product(*(list(a.items()) for a in arguments)):
            value = table.get(tuple(i for i, _ in combo))
            if not value:
                continue
            coefficient = self.field.one
            for _, c in combo:
                coefficient *= c
            add_scaled(result, value, coefficient)
        return result

    def evaluate(self, tree: Tree, arguments: Sequence[Mapping[int, Any]]) -> Vector:
        """Value of a decorated tree, leaf ℓ receiving arguments[ℓ - 1]."""
        if is_leaf(tree):
            return dict(arguments[tree - 1])
        k, g, children = tree
        return self.apply_operation(k, g, [self.evaluate(c, arguments) for c in children])

    def evaluate_combination(self, combination: Mapping[Tree, Any], arguments: Sequence[Mapping[int, Any]]) -> Vector:
        result: Vector = {}
        for tree, coefficient in combination.items():
            add_scaled(result, self.evaluate(tree, arguments), coefficient)
        return result

    def multiply(self, x: Mapping[int, Any], y: Mapping[int, Any]) -> Vector:
        """The distinguished binary operation: the bracket for lie, the product
        otherwise.
        """
        tag = self.presentation.require_classical()
        k, g = self.generator_key(MAIN_OPERATION[tag])
        return self.apply_operation(k, g, [x, y])

    def basis_vector(self, i: int) -> Vector:
        return {i: self.field.one}

    def structure_matrix(self, generator: str) -> SparseMatrix:
        """The operation as a d x d^k matrix; column i_1 ... i_k in base d."""
        k, g = self.generator_key(generator)
        d = self.dim
        entries = []
        for inputs, value in self._operations.get((k, g), {}).items():
            column = 0
            for i in inputs:
                column = column * d + i
            entries.extend((row, column, v) for row, v in value.items())
        return SparseMatrix.from_entries(entries, (d, d ** k), self.field)

    def render(self, vector: Mapping[int, Any]) -> str:
        if not vector:
            return "0"
        terms = []
        for i in sorted(vector):
            c = self.field.to_text(vector[i])
            terms.append(self.names[i] if c == "1" else f"-{self.names[i]}" if c == "-1" else f"{c}*{self.names[i]}")
        return " + ".join(terms).replace("+ -", "- ")

    def weight_violations(self) -> List[str]:
        violations = []
        generators = self.presentation.generators
        for (k, g), table in sorted(self._operations.items()):
            name = generators.names(k)[g]
            for inputs, value in sorted(table.items()):
                expected = sum(self.weights[i] for i in inputs)
                for i in value:
                    if self.weights[i] != expected:
                        args = ",".join(self.names[j] for j in inputs)
                        violations.append(
                            f"{name}({args}) has a component {self.names[i]} of weight "
                            f"{self.weights[i]}, expected {expected}"
                        )
                        break
        return violations

    def rebased(self, columns: SparseMatrix, names: Optional[Sequence[str]] = None) -> PAlgebra:
        """The same algebra in the basis given by the columns of an invertible matrix.

        :raises AlgebraError: If the matrix is singular or mixes weights.
        """
        return _transported(self, columns, names, require_all=True)

    def subalgebra(self, vectors: Sequence[Mapping[int, Any]], names: Optional[Sequence[str]] = None, name: str = "B") -> Tuple[PAlgebra, AlgebraMorphism]:
        """The subalgebra spanned by independent weight-homogeneous vectors, with its
        inclusion.

        :raises AlgebraError: If the span is not closed under the operations.
        """
        columns = SparseMatrix.from_columns(list(vectors), self.dim, self.field)
        sub = _transported(self, columns, names, require_all=False, name=name)
        return sub, AlgebraMorphism(sub, self, columns)

    def __repr__(self) -> str:
        return f"PAlgebra({self.name} over {self.presentation.name}, dim={self.dim})"


def _transported(
    algebra: PAlgebra,
    columns: SparseMatrix,
    names: Optional[Sequence[str]],
    require_all: bool,
    name: Optional[str] = None,
) -> PAlgebra:
    vectors = columns.columns()
    span = Span(vectors, algebra.dim, algebra.field)
    if not span.is_independent or (require_all and span.rank != algebra.dim):
        raise AlgebraError(f"{algebra.name}: the new basis vectors are not independent or do not span.")
    weights = []
    for k, vector in enumerate(vectors):
        found = {algebra.weights[i] for i in vector}
        if len(found) != 1:
            raise AlgebraError(f"{algebra.name}: basis vector {k} is not weight-homogeneous.")
        weights.append(found.pop())
    names = list(names) if names is not None else [f"v{k}" for k in range(len(vectors))]
    tables: Dict[str, Dict[Tuple[int, ...], Vector]] = {}
    generators = algebra.presentation.generators
    for k, g in algebra.operations():
        table: Dict[Tuple[int, ...], Vector] = {}
        for inputs in product(range(len(vectors)), repeat=k):
            value = algebra.apply_operation(k, g, [vectors[i] for i in inputs])
            if not value:
                continue
            coords = span.coordinates(value)
            if coords is None:
                args = ",".join(names[i] for i in inputs)
                raise AlgebraError(
                    f"{algebra.name}: {generators.names(k)[g]}({args}) leaves the span."
                )
            table[inputs] = coords
        tables[generators.names(k)[g]] = table
    return PAlgebra(algebra.presentation, names, weights, tables, name or algebra.name)


@dataclass
class AlgebraValidation:
    """Result of validate_algebra: valid, or the list of violations found."""

    algebra: str
    violations: List[str] = dataclass_field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def as_dict(self) -> Dict[str, Any]:
        return {"algebra": self.algebra, "valid": self.valid, "violations": list(self.violations)}


def _equivariance_violations(algebra: PAlgebra) -> List[str]:
    trees = algebra.presentation.trees
    generators = algebra.presentation.generators
    violations = []
    d = algebra.dim
    one = algebra.field.one
    for k, g in algebra.operations():
        for i in range(1, k):
            letters = list(range(1, k + 1))
            letters[i - 1], letters[i] = letters[i], letters[i - 1]
            swapped = (k, g, tuple(letters))
            normal = trees.normalize(swapped)
            for inputs in product(range(d), repeat=k):
                arguments = [{x: one} for x in inputs]
                direct = algebra.evaluate(swapped, arguments)
                rewritten = algebra.evaluate_combination(normal, arguments)
                if direct != rewritten:
                    args = ",".join(algebra.names[x] for x in inputs)
                    violations.append(
                        f"{generators.names(k)[g]} is not compatible with s_{i} at ({args})"
                    )
                    break
    return violations


def _relation_violations(algebra: PAlgebra) -> List[str]:
    presentation = algebra.presentation
    arities = sorted({len(leaves(next(iter(r)))) for r in presentation.relations if r})
    if not arities or not algebra.dim:
        return []
    operad = presentation.operad(max(arities))
    free = operad.free
    one = algebra.field.one
    violations = []
    for n in arities:
        basis = free.basis(n)
        for vector in operad.ideals[n].basis:
            combination = {basis[i]: v for i, v in vector.items()}
            for inputs in product(range(algebra.dim), repeat=n):
                value = algebra.evaluate_combination(combination, [{x: one} for x in inputs])
                if value:
                    args = ",".join(algebra.names[x] for x in inputs)
                    violations.append(
                        f"relation {presentation.trees.render_combination(combination)} "
                        f"is {algebra.render(value)} at ({args})"
                    )
                    break
    return violations


def validate_algebra(algebra: PAlgebra) -> AlgebraValidation:
    """Checks that the evaluation map P -> End_A kills the relations: every element of
    the Σ-closed ideal in the relation arities evaluates to zero, the generators
    respect their Σ-action, and the operations add weights.

    :param algebra: The algebra.
    :type algebra: PAlgebra
    :return: The validation; violations are returned, never raised.
    :rtype: AlgebraValidation
    """
    result = AlgebraValidation(algebra.name)
    result.violations.extend(algebra.weight_violations())
    result.violations.extend(_equivariance_violations(algebra))
    result.violations.extend(_relation_violations(algebra))
    for violation in result.violations:
        logger.debug("%s: %s", algebra.name, violation)
    return result


class AlgebraMorphism:
    """A linear map f: source -> target given by a dim(target) x dim(source) matrix."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: PAlgebra, target: PAlgebra, matrix: SparseMatrix):
        """
        :raises AlgebraError: If the shapes or the operads do not match.
        """
        if matrix.shape != (target.dim, source.dim):
            raise AlgebraError(
                f"A map {source.name} -> {target.name} needs shape {(target.dim, source.dim)}, "
                f"not {matrix.shape}."
            )
        if source.presentation.name != target.presentation.name:
            raise AlgebraError(f"{source.name} and {target.name} live over different operads.")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, algebra: PAlgebra) -> AlgebraMorphism:
        return cls(algebra, algebra, SparseMatrix.identity(algebra.dim, algebra.field))

    @classmethod
    def from_zero(cls, algebra: PAlgebra) -> AlgebraMorphism:
        """The unique morphism from the zero algebra."""
        zero = PAlgebra(algebra.presentation, [], [], {}, name="0")
        return cls(zero, algebra, SparseMatrix.zeros((algebra.dim, 0), algebra.field))

    @property
    def field(self) -> Field:
        return self.target.field

    def apply(self, vector: Mapping[int, Any]) -> Vector:
        return self.matrix.apply(vector)

    def image(self, i: int) -> Vector:
        return self.matrix.column(i)

    @property
    def rank(self) -> int:
        return self.matrix.rank()

    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank == self.target.dim

    def violations(self) -> List[str]:
        """Weight preservation and f(p(x_1, ..., x_k)) = p(f x_1, ..., f x_k) on basis
        vectors, for every generator p.
        """
        source, target = self.source, self.target
        found = []
        for i, j, _ in self.matrix.entries():
            if target.weights[i] != source.weights[j]:
                found.append(
                    f"{source.names[j]} (weight {source.weights[j]}) has a component "
                    f"{target.names[i]} of weight {target.weights[i]}"
                )
        one = self.field.one
        generators = source.presentation.generators
        images = [self.image(i) for i in range(source.dim)]
        for k, g in source.operations():
            for inputs in product(range(source.dim), repeat=k):
                before = self.apply(source.apply_operation(k, g, [{x: one} for x in inputs]))
                after = target.apply_operation(k, g, [images[x] for x in inputs])
                if before != after:
                    args = ",".join(source.names[x] for x in inputs)
                    found.append(f"f does not commute with {generators.names(k)[g]} at ({args})")
        return found

    def __repr__(self) -> str:
        return f"AlgebraMorphism({self.source.name} -> {self.target.name})"


def restrict_along_operad_morphism(algebra: PAlgebra, name: Optional[str] = None) -> PAlgebra:
    """The Lie algebra of an associative algebra: [x, y] = xy - yx.

    :raises AlgebraError: If the algebra is not over asc.
    """
    if algebra.tag != "asc":
        raise AlgebraError(f"{algebra.name} is not an associative algebra.")
    table = algebra.table("m")
    brackets: Dict[Tuple[int, int], Vector] = {}
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            value = dict(table.get((i, j), {}))
            for k, v in table.get((j, i), {}).items():
                add_to(value, k, -v)
            if value:
                brackets[(i, j)] = value
    return PAlgebra.lie(algebra.names, algebra.weights, brackets, algebra.field, name or algebra.name)


def as_associative(algebra: PAlgebra, name: Optional[str] = None) -> PAlgebra:
    """A commutative algebra seen as an associative one.

    :raises AlgebraError: If the algebra is not over com.
    """
    if algebra.tag != "com":
        raise AlgebraError(f"{algebra.name} is not a commutative algebra.")
    return PAlgebra.asc(algebra.names, algebra.weights, algebra.table("m"), algebra.field, name or algebra.name)
