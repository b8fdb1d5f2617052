"""operadic module init.
"""
import logging

import operadic.exceptions as exceptions
import operadic.exactalg as exactalg
import operadic.symcore as symcore
import operadic.data as data
import operadic.operad_core as operad_core
import operadic.koszul_machine as koszul_machine
import operadic.palgebra as palgebra
import operadic.algebra_complexes as algebra_complexes
import operadic.relhom as relhom
import operadic.seminf as seminf
import operadic.cli as cli
from operadic.exactalg import ChainComplex, Field, Rationals, SparseMatrix
from operadic.exceptions import OperadicException
from operadic.operad_core import OperadPresentation, classical_presentation
from operadic.palgebra import AlgebraMorphism, PAlgebra, PModule, RightModule

__logger = logging.getLogger("operadic")
__stream_handler = logging.StreamHandler()
__formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
__stream_handler.setFormatter(__formatter)
__logger.addHandler(__stream_handler)

__all__ = [
    "AlgebraMorphism",
    "ChainComplex",
    "Field",
    "OperadPresentation",
    "OperadicException",
    "PAlgebra",
    "PModule",
    "Rationals",
    "RightModule",
    "SparseMatrix",
    "algebra_complexes",
    "classical_presentation",
    "cli",
    "data",
    "exactalg",
    "exceptions",
    "koszul_machine",
    "operad_core",
    "palgebra",
    "relhom",
    "seminf",
    "symcore",
]
