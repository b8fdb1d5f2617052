from operadic.palgebra.algebra import (
    AlgebraMorphism,
    AlgebraValidation,
    PAlgebra,
    as_associative,
    restrict_along_operad_morphism,
    validate_algebra,
)
from operadic.palgebra.derivations import (
    DerivationSpace,
    derivations,
    insertion,
    insertion_letters,
    kahler,
    representability,
)
from operadic.palgebra.enveloping import (
    AscEnveloping,
    ComEnveloping,
    EnvelopingAlgebra,
    LieEnveloping,
    TruncatedAssocAlgebra,
    envelope,
    enveloping_algebra,
)
from operadic.palgebra.factorization import RelativeFactorization
from operadic.palgebra.modules import (
    PModule,
    RightModule,
    adjoint_module,
    dual_module,
    free_module,
    induce_module,
    induce_with_basis,
    module_homomorphisms,
    restrict_module,
    trivial_module,
)

__all__ = [
    "AlgebraMorphism",
    "AlgebraValidation",
    "AscEnveloping",
    "ComEnveloping",
    "DerivationSpace",
    "EnvelopingAlgebra",
    "LieEnveloping",
    "PAlgebra",
    "PModule",
    "RelativeFactorization",
    "RightModule",
    "TruncatedAssocAlgebra",
    "adjoint_module",
    "as_associative",
    "derivations",
    "dual_module",
    "envelope",
    "enveloping_algebra",
    "free_module",
    "induce_module",
    "induce_with_basis",
    "insertion",
    "insertion_letters",
    "kahler",
    "module_homomorphisms",
    "representability",
    "restrict_along_operad_morphism",
    "restrict_module",
    "trivial_module",
    "validate_algebra",
]
