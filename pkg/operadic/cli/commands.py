"""This module contains the commands of the command line and their dispatch.

Every command fills a Report. Exit codes: 0 on success, 1 when a certificate or
validation is violated, 2 on input or configuration errors.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, Dict, Iterable, Optional, TypeVar

import numpy as np

from operadic.algebra_complexes import OperadicChainComplex, OperadicCochainComplex, classical_cross_check
from operadic.cli.config import SessionConfig
from operadic.cli.inputs import InputBundle, parse_input
from operadic.cli.report import DEGREE_SHIFT, Report
from operadic.data import to_tag
from operadic.exceptions import (
    FieldError,
    InputError,
    OperadicException,
    PresentationError,
    TruncationError,
    UnsupportedOperadError,
)
from operadic.koszul_machine import bracket, koszulness_certificate, random_element
from operadic.operad_core import CLASSICAL_TAGS, OperadPresentation, classical_presentation, koszul_dual_cooperad
from operadic.palgebra import RightModule, validate_algebra
from operadic.relhom import compare_with_koszul, relative_cohomology, relative_homology
from operadic.seminf import HOM_ACTION, resolution_property_checks, semiinfinite_homology, validate_semiinfinite

logger = logging.getLogger(__name__)

T = TypeVar("T")
Progress = Callable[[Iterable[T]], Iterable[T]]

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_INPUT = 2

# raised when the input or the session configuration cannot be used; any other
# OperadicException is a violated invariant of the data and exits with EXIT_VIOLATED
INPUT_ERRORS = (InputError, FieldError, PresentationError, TruncationError, UnsupportedOperadError)


def _identity(items: Iterable[T]) -> Iterable[T]:
    return items


def _bundle(config: SessionConfig, target: str) -> InputBundle:
    return parse_input(target, config.scalar_field)


def _presentation(config: SessionConfig, target: str) -> OperadPresentation:
    """A built-in tag, or the [operad] of an input file."""
    if target.endswith(".toml") or Path(target).is_file():
        return _bundle(config, target).presentation
    tag = to_tag(target)
    if tag not in CLASSICAL_TAGS:
        raise InputError(f"Unknown operad {target!r}; use com, asc, lie or an input file.")
    return classical_presentation(tag, config.scalar_field)


def _operad_dims(config: SessionConfig, target: str, report: Report, progress: Progress) -> None:
    presentation = _presentation(config, target)
    operad = presentation.operad(config.max_arity)
    dims = {n: operad.dim(n) for n in progress(range(1, config.max_arity + 1))}
    report.results["operad"] = presentation.name
    report.results["dims"] = {str(n): d for n, d in dims.items()}
    report.table("dimensions by arity", {presentation.name: dims})


def _koszul_check(config: SessionConfig, target: str, report: Report, progress: Progress) -> None:
    presentation = _presentation(config, target)
    certificate = koszulness_certificate(presentation, config.max_arity)
    report.results["certificate"] = certificate.as_dict()
    report.results["verdict"] = (
        f"acyclic up to arity {config.max_arity}" if certificate.verified else certificate.label
    )
    report.table(
        "Koszul complexes by arity",
        {
            a.arity: {"left acyclic": a.left_acyclic, "right acyclic": a.right_acyclic, "passed": a.passed}
            for a in certificate.arities
        },
    )
    if not certificate.verified:
        report.exit_code = EXIT_VIOLATED
    else:
        report.results["convolution"] = _convolution_spot_check(presentation, config)


def _convolution_spot_check(presentation: OperadPresentation, config: SessionConfig, samples: int = 3) -> dict:
    """Graded antisymmetry of the convolution bracket on seeded random elements."""
    rng = np.random.default_rng(config.seed)
    operad = presentation.operad(config.max_arity)
    cooperad = koszul_dual_cooperad(presentation, config.max_arity)
    failures = []
    for trial in range(samples):
        f = random_element(cooperad, operad, 0, seed=rng)
        g = random_element(cooperad, operad, -1, seed=rng)
        swapped = bracket(g, f).scale(f.field.sign(f.degree * g.degree))
        if not (bracket(f, g) + swapped).is_zero():
            failures.append(trial)
    if failures:
        logger.warning("Convolution bracket of %s is not antisymmetric on trials %s", presentation.name, failures)
    return {"seed": config.seed, "samples": samples, "antisymmetric": not failures}


def _check_algebra(config: SessionConfig, target: str, report: Report, progress: Progress) -> None:
    bundle = _bundle(config, target)
    violations = {}
    for algebra in bundle.algebras.values():
        violations[algebra.name] = validate_algebra(algebra).violations
        report.table(f"carrier of {algebra.name}", {"dim": dict(sorted(algebra.carrier.items()))})
    for name, morphism in bundle.morphisms.items():
        violations[f"morphism {name}"] = morphism.violations()
    for name, module in bundle.modules.items():
        violations[f"module {name}"] = module.violations()
    report.results["violations"] = violations
    report.results["valid"] = not any(violations.values())
    if not report.results["valid"]:
        report.exit_code = EXIT_VIOLATED


def _homology(config: SessionConfig, target: str, report: Report, progress: Progress) -> None:
    algebra = _bundle(config, target).algebra
    n_max = config.max_level
    betti = OperadicChainComplex(algebra, n_max).complex().betti()
    homology = {n: betti.dim(n) for n in range(n_max + 1)}
    report.results["homology"] = {str(n): d for n, d in homology.items()}
    report.results["unverified"] = [n_max]
    report.table("operadic homology", {"H_n": homology})
    _cross_check(algebra, n_max, None, report)


def _cohomology(config: SessionConfig, target: str, report: Report, progress: Progress) -> None:
    bundle = _bundle(config, target)
    algebra, module = bundle.algebra, bundle.module
    n_max = config.max_level
    betti = OperadicCochainComplex(algebra, module, n_max).complex().betti()
    cohomology = {n: betti.dim(n) for n in range(n_max + 1)}
    report.results["module"] = module.name
    report.results["cohomology"] = {str(n): d for n, d in cohomology.items()}
    report.results["unverified"] = [n_max]
    report.table(f"operadic cohomology with coefficients in {module.name}", {"H^n": cohomology})
    _cross_check(algebra, n_max, module, report)


def _cross_check(algebra, n_max: int, module, report: Report) -> None:
    try:
        check = classical_cross_check(algebra, n_max - 1, module, certify=False)
    except UnsupportedOperadError as error:
        report.notes.append(f"no classical comparison: {error}")
        return
    report.results["classical"] = check.as_dict()
    report.notes.append(DEGREE_SHIFT)
    if not check.agrees:
        report.exit_code = EXIT_VIOLATED


def _relative(config: SessionConfig, target: str, report: Report, progress: Progress, cohomological: bool) -> None:
    bundle = _bundle(config, target)
    morphism = bundle.morphism
    if cohomological:
        result = relative_cohomology(
            morphism, bundle.module, config.max_level, pbw_bound=config.pbw_bound, max_weight=config.max_weight,
        )
    else:
        coefficients = RightModule.from_left(bundle.module) if bundle.modules else RightModule.trivial(bundle.algebra)
        result = relative_homology(
            morphism, coefficients, config.max_level, pbw_bound=config.pbw_bound, max_weight=config.max_weight,
        )
    report.results["relative"] = result.as_dict()
    report.table("dimensions by weight and degree", result.dims)
    report.notes.append(f"degrees above {result.certified} are unverified ({result.mode} truncation)")


def _relative_homology(config, target, report, progress) -> None:
    _relative(config, target, report, progress, cohomological=False)


def _relative_cohomology(config, target, report, progress) -> None:
    _relative(config, target, report, progress, cohomological=True)


def _compare_koszul(config: SessionConfig, target: str, report: Report, progress: Progress) -> None:
    algebra = _bundle(config, target).algebra
    comparison = compare_with_koszul(algebra, config.max_level, config.pbw_bound, config.max_weight)
    report.results["comparison"] = comparison.as_dict()
    report.table("relative and operadic homology", {"relative": comparison.relative, "operadic": comparison.operadic})
    report.notes.append(f"trivial algebra: {comparison.reading}")
    if not comparison.agrees:
        report.exit_code = EXIT_VIOLATED


def _seminf_check(config: SessionConfig, target: str, report: Report, progress: Progress) -> None:
    bundle = _bundle(config, target)
    structure = bundle.structure
    certificate = validate_semiinfinite(structure, config.pbw_bound, config.max_weight)
    report.results["certificate"] = certificate.as_dict()
    report.table("dimensions by weight", certificate.dims)
    report.table(
        "straightening bounds (k_min, k_max)",
        {f"U(B)_{m} ⊗ U(N)_{n}": {"k_min": low, "k_max": high} for (m, n), (low, high) in sorted(certificate.continuity.items())},
    )
    report.notes.append(HOM_ACTION)
    if not certificate.passed:
        report.exit_code = EXIT_VIOLATED
        return
    checks = resolution_property_checks(
        structure, bundle.module, config.max_level, config.max_weight, config.pbw_bound,
    )
    report.results["resolution"] = checks.as_dict()
    if not checks.passed:
        report.exit_code = EXIT_VIOLATED


def _seminf_homology(config: SessionConfig, target: str, report: Report, progress: Progress) -> None:
    bundle = _bundle(config, target)
    weights = range(-config.max_weight, config.max_weight + 1)
    result = semiinfinite_homology(
        bundle.structure, bundle.module, weights, config.window, config.max_level,
        config.max_weight, config.pbw_bound, progress=progress,
    )
    report.results["homology"] = result.as_dict()
    report.table("dimensions by weight and degree", result.dims)
    report.notes.append(HOM_ACTION)
    report.notes.append("unverified degrees are listed per weight under homology.unverified")


COMMANDS: Dict[str, Callable[[SessionConfig, str, Report, Progress], None]] = {
    "check-algebra": _check_algebra,
    "operad-dims": _operad_dims,
    "koszul-check": _koszul_check,
    "homology": _homology,
    "cohomology": _cohomology,
    "relative-homology": _relative_homology,
    "relative-cohomology": _relative_cohomology,
    "compare-koszul": _compare_koszul,
    "seminf-check": _seminf_check,
    "seminf-homology": _seminf_homology,
}


def run(command: str, config: SessionConfig, target: str, progress: Optional[Progress] = None) -> Report:
    """Runs one command on a built-in operad tag or an input file.

    :param command: One of COMMANDS.
    :type command: str
    :param config: The session configuration.
    :type config: SessionConfig
    :param target: Operad tag or path of a TOML input.
    :type target: str
    :param progress: Wraps iterables of long loops, e.g. tqdm.
    :type progress: callable, optional
    :return: The report; its exit_code is 0, 1 or 2.
    :rtype: Report
    """
    report = Report(command, config.as_dict() if _field_ok(config) else dict(config._asdict()), target)
    handler = COMMANDS.get(command)
    if handler is None:
        report.results["error"] = f"unknown command {command!r}"
        report.exit_code = EXIT_INPUT
        return report
    try:
        config.validate()
        handler(config, target, report, progress or _identity)
    except INPUT_ERRORS as error:
        logger.warning("%s failed: %s", command, error)
        report.results["error"] = str(error)
        report.exit_code = EXIT_INPUT
    except OperadicException as error:
        logger.warning("%s violated: %s", command, error)
        report.results["error"] = str(error)
        report.results["violation"] = type(error).__name__
        report.exit_code = EXIT_VIOLATED
    return report


def _field_ok(config: SessionConfig) -> bool:
    try:
        config.scalar_field
    except OperadicException:
        return False
    return True
