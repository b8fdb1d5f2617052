from operadic.seminf.checks import PropertyCheck, ResolutionReport, resolution_property_checks
from operadic.seminf.complex import (
    SemiInfiniteComplex,
    SemiInfiniteHomology,
    SemiInfiniteSides,
    semiinfinite_complex,
    semiinfinite_homology,
)
from operadic.seminf.structure import (
    CONDITIONS,
    HOM_ACTION,
    SemiInfiniteCertificate,
    SemiInfiniteStructure,
    validate_semiinfinite,
)

__all__ = [
    "CONDITIONS",
    "HOM_ACTION",
    "PropertyCheck",
    "ResolutionReport",
    "SemiInfiniteCertificate",
    "SemiInfiniteComplex",
    "SemiInfiniteHomology",
    "SemiInfiniteSides",
    "SemiInfiniteStructure",
    "resolution_property_checks",
    "semiinfinite_complex",
    "semiinfinite_homology",
    "validate_semiinfinite",
]
