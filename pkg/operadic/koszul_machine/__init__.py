from operadic.koszul_machine.bar_cobar import (
    BarConstruction,
    CobarConstruction,
    CobarMorphism,
    HomologyComparison,
    bar,
    bar_inclusion,
    cobar,
    cobar_to_operad,
    compare_bar_inclusion,
    compare_cobar_morphism,
    counit,
)
from operadic.koszul_machine.certificate import (
    ArityCertificate,
    KoszulnessCertificate,
    koszulness_certificate,
)
from operadic.koszul_machine.convolution import (
    ConvolutionElement,
    bracket,
    derivative,
    prelie_star,
    random_element,
)
from operadic.koszul_machine.twisted_products import (
    Side,
    TwistedCompositeProduct,
    twisted_composite,
)
from operadic.koszul_machine.twisting import TwistingMorphism, bar_morphism, koszul_morphism

__all__ = [
    "ArityCertificate",
    "BarConstruction",
    "CobarConstruction",
    "CobarMorphism",
    "ConvolutionElement",
    "HomologyComparison",
    "KoszulnessCertificate",
    "Side",
    "TwistedCompositeProduct",
    "TwistingMorphism",
    "bar",
    "bar_inclusion",
    "bar_morphism",
    "bracket",
    "cobar",
    "cobar_to_operad",
    "compare_bar_inclusion",
    "compare_cobar_morphism",
    "counit",
    "derivative",
    "koszul_morphism",
    "koszulness_certificate",
    "prelie_star",
    "random_element",
    "twisted_composite",
]
