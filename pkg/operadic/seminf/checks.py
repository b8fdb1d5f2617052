"""This module contains finite checks standing in for the resolution properties of the
two bar objects of a semi-infinite structure:

(a) every level of BD(A, B, A) is induced from a U(B)-module, with an explicit basis of
    generators 1 ⊗ y;
(b) the augmentation BD(A, B, A) -> A is exact in every certified weight and degree;
(c) every level of BD(A, N, A) is induced from a U(N)-module, with explicit generators.

K-injectivity and K-projectivity are statements about unbounded complexes and are not
claimed; the report says what was verified.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Callable, Dict, List, Optional

from operadic.exactalg import Span
from operadic.exceptions import ComplexError
from operadic.palgebra import PModule
from operadic.relhom import RelativeBar
from operadic.seminf.complex import SemiInfiniteSides

logger = logging.getLogger(__name__)

Fault = Callable[[RelativeBar], None]


@dataclass
class PropertyCheck:
    label: str
    statement: str
    holds: bool = True
    witnesses: List[str] = dataclass_field(default_factory=list)
    generators: Dict[int, List[str]] = dataclass_field(default_factory=dict)

    def fail(self, witness: str) -> None:
        self.holds = False
        self.witnesses.append(witness)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "statement": self.statement,
            "holds": self.holds,
            "witnesses": self.witnesses,
            "generators": {str(n): g for n, g in sorted(self.generators.items())},
        }


@dataclass
class ResolutionReport:
    structure: str
    max_level: int
    max_weight: int
    checks: Dict[str, PropertyCheck]

    @property
    def passed(self) -> bool:
        return all(check.holds for check in self.checks.values())

    def as_dict(self) -> Dict[str, Any]:
        return {
            "structure": self.structure,
            "max_level": self.max_level,
            "max_weight": self.max_weight,
            "passed": self.passed,
            "checks": {label: check.as_dict() for label, check in self.checks.items()},
            "not_claimed": "K-injectivity and K-projectivity of the unbounded complexes",
        }


def _induced(bar: RelativeBar, check: PropertyCheck) -> None:
    """Each level T(Y) has the generators 1 ⊗ y, and c · (1 ⊗ y) for complement
    monomials c are independent on the exact part.
    """
    cotriple = bar.cotriple
    field = cotriple.field
    for n in range(bar.simplicial.top + 1):
        application = cotriple.apply(bar.levels[n])
        module = application.module
        unit = application.factorization.unit
        generators = [k for k, (key, _) in enumerate(application.pairs) if key == unit]
        check.generators[n] = [module.names[k] for k in generators]
        reliable = set(module.reliable(0))
        translates = []
        for k, (key, y) in enumerate(application.pairs):
            if k not in reliable:
                continue
            start = application.position[(unit, y)]
            word = application.factorization.complement_word(key)
            translates.append(module.act_word(word, {start: field.one}))
        if not Span(translates, module.dim, field).is_independent:
            check.fail(f"level {n}: the translates of the generators are dependent")


def _exact(bar: RelativeBar, check: PropertyCheck) -> None:
    top = bar.simplicial.top
    for weight in bar.window():
        try:
            betti = bar.augmented_complex(weight).betti()
        except ComplexError as error:
            check.fail(f"weight {weight}: {error}")
            continue
        for n in range(-1, top):
            if betti.dim(n):
                check.fail(f"weight {weight}: homology of dimension {betti.dim(n)} in degree {n}")


def resolution_property_checks(
    structure,
    module: PModule,
    max_level: int = 3,
    max_weight: int = 4,
    pbw_bound: Optional[int] = None,
    fault: Optional[Fault] = None,
    sides: Optional[SemiInfiniteSides] = None,
) -> ResolutionReport:
    """Checks (a), (b) and (c) up to max_level in the weight window.

    :param fault: Applied to the B-side bar object before the checks; used to corrupt
        a face map on purpose.
    :type fault: Callable[[RelativeBar], None], optional
    :rtype: ResolutionReport
    :raises TruncationError: If a side is unbounded within the configuration.
    """
    if sides is None:
        sides = SemiInfiniteSides(structure, module, max_level, max_weight, pbw_bound)
    if fault is not None:
        fault(sides.b_bar)
    checks = {
        "a": PropertyCheck("a", "BD(A,B,A) is degreewise induced from U(B), hence free over U(A) relative to U(B)"),
        "b": PropertyCheck("b", "the augmentation BD(A,B,A) -> A is exact below the top level"),
        "c": PropertyCheck("c", "BD(A,N,A) is degreewise induced from U(N)"),
    }
    _induced(sides.b_bar, checks["a"])
    _exact(sides.b_bar, checks["b"])
    _induced(sides.n_bar, checks["c"])
    report = ResolutionReport(structure.name, max_level, max_weight, checks)
    if report.passed:
        logger.info("Resolution checks pass for %s up to level %d", structure.name, max_level)
    else:
        logger.warning(
            "Resolution checks fail for %s: %s",
            structure.name, {k: c.witnesses[:1] for k, c in checks.items() if not c.holds},
        )
    return report
