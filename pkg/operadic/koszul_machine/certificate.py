"""This module contains koszulness_certificate, which checks arity by arity that a
quadratic presentation behaves as a Koszul operad up to a truncation.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Callable, Dict, List, Optional

from operadic.exceptions import TwistingMorphismError
from operadic.koszul_machine.bar_cobar import (
    BarConstruction,
    HomologyComparison,
    compare_bar_inclusion,
    compare_cobar_morphism,
    cobar_to_operad,
)
from operadic.koszul_machine.twisted_products import Side, TwistedCompositeProduct
from operadic.koszul_machine.twisting import TwistingMorphism, koszul_morphism
from operadic.operad_core import OperadPresentation, koszul_dual_cooperad

logger = logging.getLogger(__name__)


@dataclass
class ArityCertificate:
    """The four conditions in one arity."""

    arity: int
    left_homology: Dict[int, int]
    right_homology: Dict[int, int]
    bar_inclusion: HomologyComparison
    cobar_projection: HomologyComparison

    @property
    def left_acyclic(self) -> bool:
        return not any(self.left_homology.values())

    @property
    def right_acyclic(self) -> bool:
        return not any(self.right_homology.values())

    @property
    def acyclic(self) -> bool:
        return self.left_acyclic and self.right_acyclic

    @property
    def passed(self) -> bool:
        return (
            self.acyclic
            and self.bar_inclusion.isomorphism
            and self.cobar_projection.isomorphism
        )

    def failed_conditions(self) -> List[str]:
        failed = []
        if not self.left_acyclic:
            failed.append("left Koszul complex is not acyclic")
        if not self.right_acyclic:
            failed.append("right Koszul complex is not acyclic")
        if not self.bar_inclusion.isomorphism:
            failed.append("P^¡ -> Bar(P) is not a homology isomorphism")
        if not self.cobar_projection.isomorphism:
            failed.append("Cobar(P^¡) -> P is not a homology isomorphism")
        return failed

    def as_dict(self) -> Dict[str, Any]:
        return {
            "arity": self.arity,
            "acyclic": self.acyclic,
            "left_homology": {str(d): n for d, n in sorted(self.left_homology.items()) if n},
            "right_homology": {str(d): n for d, n in sorted(self.right_homology.items()) if n},
            "bar_inclusion": self.bar_inclusion.as_dict(),
            "cobar_projection": self.cobar_projection.as_dict(),
        }


@dataclass
class KoszulnessCertificate:
    """Outcome of the arity-truncated Koszulness checks of a presentation."""

    name: str
    max_arity: int
    maurer_cartan: bool
    koszul_dual_dims: Dict[int, int]
    operad_dims: Dict[int, int]
    arities: List[ArityCertificate] = dataclass_field(default_factory=list)
    message: str = ""

    @property
    def verified(self) -> bool:
        return self.maurer_cartan and all(a.passed for a in self.arities)

    @property
    def label(self) -> str:
        if not self.maurer_cartan:
            return "presentation is not quadratic-consistent: κ ⋆ κ ≠ 0"
        failed = [a.arity for a in self.arities if not a.passed]
        if failed:
            return f"fails in arity {failed[0]}"
        return f"verified up to arity {self.max_arity}"

    def as_dict(self) -> Dict[str, Any]:
        return {
            "operad": self.name,
            "max_arity": self.max_arity,
            "maurer_cartan": self.maurer_cartan,
            "verified": self.verified,
            "label": self.label,
            "operad_dims": {str(n): d for n, d in self.operad_dims.items()},
            "koszul_dual_dims": {str(n): d for n, d in self.koszul_dual_dims.items()},
            "arities": [a.as_dict() for a in self.arities],
            "message": self.message,
        }


def koszulness_certificate(
    presentation: OperadPresentation,
    max_arity: int,
    progress: Optional[Callable[[int], None]] = None,
) -> KoszulnessCertificate:
    """Builds P = 𝔽(E)/(R), its Koszul dual C and κ: C -> P, checks the Maurer-Cartan
    equation and, for every arity 2..max_arity, the homology of P ∘_κ C and C ∘_κ P,
    the inclusion C -> Bar(P) and the projection Cobar(C) -> P.

    :param presentation: A quadratic presentation.
    :type presentation: OperadPresentation
    :param max_arity: The truncation.
    :type max_arity: int
    :param progress: Called with each arity once it is done.
    :type progress: callable, optional
    :return: The certificate; failures are reported, never raised.
    :rtype: KoszulnessCertificate
    """
    presentation.field.check_arity(max_arity)
    operad = presentation.operad(max_arity)
    cooperad = koszul_dual_cooperad(presentation, max_arity)
    certificate = KoszulnessCertificate(
        name=presentation.name,
        max_arity=max_arity,
        maurer_cartan=True,
        koszul_dual_dims=cooperad.dims(),
        operad_dims=operad.dims(),
    )
    try:
        kappa: TwistingMorphism = koszul_morphism(cooperad, operad)
    except TwistingMorphismError as error:
        certificate.maurer_cartan = False
        certificate.message = str(error)
        logger.warning("%s: %s", presentation.name, error)
        return certificate
    bar_construction = BarConstruction(operad, max_arity)
    projection = cobar_to_operad(cooperad, operad, max_arity)
    for n in range(2, max_arity + 1):
        left = TwistedCompositeProduct(kappa, Side.LEFT, n).complex().betti()
        right = TwistedCompositeProduct(kappa, Side.RIGHT, n).complex().betti()
        arity = ArityCertificate(
            arity=n,
            left_homology=left.as_dict(),
            right_homology=right.as_dict(),
            bar_inclusion=compare_bar_inclusion(cooperad, bar_construction, n),
            cobar_projection=compare_cobar_morphism(projection, n),
        )
        certificate.arities.append(arity)
        for failure in arity.failed_conditions():
            logger.warning("%s arity %d: %s", presentation.name, n, failure)
        if progress is not None:
            progress(n)
    logger.info("%s: %s", presentation.name, certificate.label)
    return certificate
