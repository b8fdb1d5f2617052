"""This module contains the TOML input format of the command line.

A file describes one operad, one algebra over it and optionally subalgebras, a morphism,
a module and a semi-infinite structure::

    [operad]
    tag = "lie"

    [algebra]
    name = "sl2"
    basis = ["e", "f", "h"]
    weights = [2, -2, 0]

    [algebra.brackets]
    "e,f" = { h = 1 }
    "h,e" = { e = 2 }
    "h,f" = { f = -2 }

    [subalgebras]
    b = ["f", "h"]
    n = ["e"]

    [morphism]
    source = "b"

    [module]
    kind = "trivial"

    [seminf]
    B = "b"
    N = "n"

Coefficients are integers or strings such as "1/2". A custom operad replaces the tag by
generators, actions and relations laid out as in the static presentations, and the
algebra gives one table per generator under [algebra.operations].
"""
from __future__ import annotations

import logging
import re

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from operadic.exactalg import Field, SparseMatrix
from operadic.exceptions import AlgebraError, InputError, ModuleError, OperadicException
from operadic.operad_core import CLASSICAL_TAGS, OperadPresentation, classical_presentation
from operadic.palgebra import AlgebraMorphism, PAlgebra, PModule, adjoint_module, trivial_module
from operadic.data import to_tag
from operadic.seminf import SemiInfiniteStructure

logger = logging.getLogger(__name__)

_LOCATION = re.compile(r"\(at line (\d+), column (\d+)\)")


@dataclass
class InputBundle:
    """Objects read from one input file, keyed by name."""

    source: str
    presentations: Dict[str, OperadPresentation] = dataclass_field(default_factory=dict)
    algebras: Dict[str, PAlgebra] = dataclass_field(default_factory=dict)
    morphisms: Dict[str, AlgebraMorphism] = dataclass_field(default_factory=dict)
    modules: Dict[str, PModule] = dataclass_field(default_factory=dict)
    structures: Dict[str, SemiInfiniteStructure] = dataclass_field(default_factory=dict)

    @property
    def presentation(self) -> OperadPresentation:
        return next(iter(self.presentations.values()))

    @property
    def algebra(self) -> PAlgebra:
        """
        :raises InputError: If the file has no algebra.
        """
        if not self.algebras:
            raise InputError(f"{self.source} describes no algebra.")
        return next(iter(self.algebras.values()))

    @property
    def morphism(self) -> AlgebraMorphism:
        """
        :raises InputError: If the file has no [morphism].
        """
        if not self.morphisms:
            raise InputError(f"{self.source} describes no morphism.")
        return next(iter(self.morphisms.values()))

    @property
    def module(self) -> PModule:
        """The [module], the trivial module when there is none."""
        if self.modules:
            return next(iter(self.modules.values()))
        return trivial_module(self.algebra)

    @property
    def structure(self) -> SemiInfiniteStructure:
        """
        :raises InputError: If the file has no [seminf].
        """
        if not self.structures:
            raise InputError(f"{self.source} describes no semi-infinite structure.")
        return next(iter(self.structures.values()))


class _Reader:
    def __init__(self, text: str, source: str, field: Field):
        self.text = text
        self.source = source
        self.field = field

    def locate(self, token: str) -> Tuple[int, int]:
        """Line and column of the first occurrence of token, (0, 0) if absent."""
        for number, line in enumerate(self.text.splitlines(), start=1):
            column = line.find(token)
            if column >= 0:
                return number, column + 1
        return 0, 0

    def error(self, message: str, token: Optional[str] = None) -> InputError:
        line, column = self.locate(token) if token else (0, 0)
        return InputError(f"{self.source}: {message}", line, column)

    def scalar(self, value: Any, token: str) -> Any:
        try:
            return self.field(value)
        except (OperadicException, ValueError, TypeError, ZeroDivisionError):
            raise self.error(f"{value!r} is not a scalar", token) from None

    def presentation(self, table: Mapping[str, Any]) -> OperadPresentation:
        if "tag" in table:
            tag = to_tag(str(table["tag"]))
            if tag not in CLASSICAL_TAGS:
                raise self.error(f"unknown operad tag {table['tag']!r}", str(table["tag"]))
            return classical_presentation(tag, self.field)
        if "generators" not in table:
            raise self.error("[operad] needs a tag or generators", "[operad]")
        try:
            return OperadPresentation.from_data(table, self.field)
        except OperadicException as error:
            raise self.error(str(error), "relations") from None

    def vector(self, value: Mapping[str, Any], names: List[str], token: str) -> Dict[int, Any]:
        if not isinstance(value, Mapping):
            raise self.error(f"{token} must map basis names to coefficients", token)
        vector = {}
        for name, coefficient in value.items():
            if name not in names:
                raise self.error(f"unknown basis vector {name!r}", name)
            vector[names.index(name)] = self.scalar(coefficient, name)
        return vector

    def pairs(self, table: Mapping[str, Any], names: List[str], arity: Optional[int] = 2) -> Dict[Tuple[int, ...], Dict[int, Any]]:
        values = {}
        for key, value in table.items():
            parts = [p.strip() for p in key.split(",")]
            if arity is not None and len(parts) != arity:
                raise self.error(f"{key!r} does not name {arity} basis vectors", key)
            for part in parts:
                if part not in names:
                    raise self.error(f"unknown basis vector {part!r} in {key!r}", key)
            values[tuple(names.index(p) for p in parts)] = self.vector(value, names, key)
        return values

    def algebra(self, table: Mapping[str, Any], presentation: OperadPresentation) -> PAlgebra:
        names = [str(n) for n in table.get("basis", [])]
        weights = list(table.get("weights", [0] * len(names)))
        name = str(table.get("name", "A"))
        if len(weights) != len(names):
            raise self.error(f"{len(names)} basis vectors but {len(weights)} weights", "weights")
        tag = presentation.tag
        try:
            if tag == "lie":
                return PAlgebra.lie(names, weights, self.pairs(table.get("brackets", {}), names), self.field, name)
            if tag == "com":
                return PAlgebra.com(names, weights, self.pairs(table.get("products", {}), names), self.field, name)
            if tag == "asc":
                return PAlgebra.asc(names, weights, self.pairs(table.get("products", {}), names), self.field, name)
            tables = {
                generator: self.pairs(values, names, arity=None)
                for generator, values in table.get("operations", {}).items()
            }
            return PAlgebra(presentation, names, weights, tables, name)
        except AlgebraError as error:
            raise self.error(str(error), self._offending(str(error), names)) from None

    def _offending(self, message: str, names: List[str]) -> Optional[str]:
        """A quoted pair "x,y" named in an algebra error, to locate it."""
        found = re.search(r"\[(\w+),(\w+)\]", message)
        if found:
            return f"{found.group(1)},{found.group(2)}"
        return "[algebra"

    def subalgebras(self, table: Mapping[str, Any], algebra: PAlgebra) -> Dict[str, AlgebraMorphism]:
        one = self.field.one
        morphisms = {}
        for label, names in table.items():
            try:
                vectors = [{algebra.index(str(n)): one} for n in names]
                _, morphisms[label] = algebra.subalgebra(vectors, [str(n) for n in names], name=label)
            except AlgebraError as error:
                raise self.error(str(error), label) from None
        return morphisms

    def module(self, table: Mapping[str, Any], algebra: PAlgebra) -> PModule:
        kind = str(table.get("kind", "explicit"))
        if kind == "trivial":
            return trivial_module(algebra, table.get("weights", (0,)))
        if kind == "adjoint":
            return adjoint_module(algebra)
        names = [str(n) for n in table.get("basis", [])]
        weights = list(table.get("weights", [0] * len(names)))
        actions = {}
        for key, rows in table.get("actions", {}).items():
            side, _, element = key.rpartition(":")
            try:
                letter = (side or "x", algebra.index(element))
            except AlgebraError:
                raise self.error(f"unknown basis vector {element!r}", key) from None
            matrix = [[self.scalar(v, key) for v in row] for row in rows]
            actions[letter] = SparseMatrix.from_dense(matrix, self.field)
        try:
            module = PModule(algebra, names, weights, actions, name=str(table.get("name", "M")))
        except ModuleError as error:
            raise self.error(str(error), "[module") from None
        violations = module.violations()
        if violations:
            raise self.error(f"not a module: {violations[0]}", "[module")
        return module


def parse_input(path: Union[str, Path], field: Field) -> InputBundle:
    """Reads and validates an input file; every name it references is resolved.

    :param path: The TOML file.
    :type path: str or Path
    :param field: The scalar field of the session.
    :type field: Field
    :rtype: InputBundle
    :raises InputError: On syntax errors (with line and column), unknown operads,
        invalid algebra data or dangling references.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise InputError(f"Cannot read {path}: {error.strerror}.") from None
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as error:
        location = _LOCATION.search(str(error))
        line, column = (int(location.group(1)), int(location.group(2))) if location else (0, 0)
        raise InputError(f"{path.name}: {_LOCATION.sub('', str(error)).strip()}", line, column) from None
    reader = _Reader(text, path.name, field)
    bundle = InputBundle(path.name)
    if "operad" not in data:
        raise reader.error("missing [operad] table")
    presentation = reader.presentation(data["operad"])
    bundle.presentations[presentation.name] = presentation
    if "algebra" not in data:
        return bundle
    algebra = reader.algebra(data["algebra"], presentation)
    bundle.algebras[algebra.name] = algebra
    subalgebras = reader.subalgebras(data.get("subalgebras", {}), algebra)
    if "morphism" in data:
        source = str(data["morphism"].get("source", ""))
        if source == "0":
            bundle.morphisms["0"] = AlgebraMorphism.from_zero(algebra)
        elif source in subalgebras:
            bundle.morphisms[source] = subalgebras[source]
        else:
            raise reader.error(f"[morphism] refers to unknown subalgebra {source!r}", "source")
    if "module" in data:
        module = reader.module(data["module"], algebra)
        bundle.modules[module.name] = module
    if "seminf" in data:
        table = data["seminf"]
        chosen = []
        for side in ("B", "N"):
            label = str(table.get(side, ""))
            if label == "0":
                chosen.append(AlgebraMorphism.from_zero(algebra))
            elif label in subalgebras:
                chosen.append(subalgebras[label])
            else:
                raise reader.error(f"[seminf] {side} refers to unknown subalgebra {label!r}", side)
        name = str(table.get("name", algebra.name))
        bundle.structures[name] = SemiInfiniteStructure(algebra, chosen[0], chosen[1], name)
    logger.debug("Read %s: algebra %s, %d morphisms, %d modules", path.name, algebra.name, len(bundle.morphisms), len(bundle.modules))
    return bundle
