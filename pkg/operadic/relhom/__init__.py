from operadic.relhom.bar import RelativeBar, bar_simplicial, module_margin
from operadic.relhom.cotriple import Application, Cotriple, TruncationMode, cotriple_from_adjunction
from operadic.relhom.relative import (
    KoszulComparison,
    RelativeChains,
    RelativeHomology,
    compare_with_koszul,
    relative_cohomology,
    relative_homology,
)
from operadic.relhom.simplicial import SimplicialModule

__all__ = [
    "Application",
    "Cotriple",
    "KoszulComparison",
    "RelativeBar",
    "RelativeChains",
    "RelativeHomology",
    "SimplicialModule",
    "TruncationMode",
    "bar_simplicial",
    "compare_with_koszul",
    "cotriple_from_adjunction",
    "module_margin",
    "relative_cohomology",
    "relative_homology",
]
