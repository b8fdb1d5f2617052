from operadic.operad_core.cooperad import TruncatedCooperad, cofree_cooperad
from operadic.operad_core.koszul_dual import KoszulDualCooperad, koszul_dual_cooperad
from operadic.operad_core.operad import (
    FreeOperad,
    QuotientOperad,
    TreeOperad,
    TruncatedOperad,
    block_permutation,
    free_operad,
    quotient_operad,
    sigma_closure,
)
from operadic.operad_core.presentation import (
    CLASSICAL_TAGS,
    OperadPresentation,
    classical_presentation,
    quotient_presentation,
)
from operadic.operad_core.sigma_object import (
    CompositeRep,
    SigmaObject,
    TensorRep,
    composite_product,
    sigma_tensor,
)
from operadic.operad_core.trees import Cut, DecoratedTrees, TopDecomposition, Tree

__all__ = [
    "CLASSICAL_TAGS",
    "CompositeRep",
    "Cut",
    "DecoratedTrees",
    "FreeOperad",
    "KoszulDualCooperad",
    "OperadPresentation",
    "QuotientOperad",
    "SigmaObject",
    "TensorRep",
    "TopDecomposition",
    "Tree",
    "TreeOperad",
    "TruncatedCooperad",
    "TruncatedOperad",
    "block_permutation",
    "classical_presentation",
    "cofree_cooperad",
    "composite_product",
    "free_operad",
    "koszul_dual_cooperad",
    "quotient_operad",
    "quotient_presentation",
    "sigma_closure",
    "sigma_tensor",
]
