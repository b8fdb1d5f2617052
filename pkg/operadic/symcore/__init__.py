from operadic.symcore.permutation import (
    Permutation,
    all_permutations,
    koszul_sign,
    set_partitions,
    shuffles,
)
from operadic.symcore.sigma_rep import (
    Coinvariants,
    InducedRep,
    SigmaRep,
    coinvariants,
    induce,
)

__all__ = [
    "Coinvariants",
    "InducedRep",
    "Permutation",
    "SigmaRep",
    "all_permutations",
    "coinvariants",
    "induce",
    "koszul_sign",
    "set_partitions",
    "shuffles",
]
