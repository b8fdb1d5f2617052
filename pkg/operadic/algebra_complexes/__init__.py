from operadic.algebra_complexes.classical import (
    CrossCheck,
    bar_chains,
    chevalley_eilenberg_chains,
    chevalley_eilenberg_cochains,
    classical_chains,
    classical_cochains,
    classical_cross_check,
    hochschild_cochains,
)
from operadic.algebra_complexes.operadic import (
    OperadicChainComplex,
    OperadicCochainComplex,
    chain_complex,
    cochain_complex,
    koszul_data,
)

__all__ = [
    "CrossCheck",
    "OperadicChainComplex",
    "OperadicCochainComplex",
    "bar_chains",
    "chain_complex",
    "chevalley_eilenberg_chains",
    "chevalley_eilenberg_cochains",
    "classical_chains",
    "classical_cochains",
    "classical_cross_check",
    "cochain_complex",
    "hochschild_cochains",
    "koszul_data",
]
