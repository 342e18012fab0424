"""Petrov-Galerkin solvers (LS, DLS, BG) for Symm's integral equation."""

from ._symm_pg import *  # noqa: F401,F403
from ._symm_pg import (
    AliasingError,
    BoundaryCurve,
    FourierVector,
    MethodKind,
    OperatorAssembly,
    SingularSystemError,
    SymmError,
    TruncationError,
    assemble_operator,
    solve,
)

__version__ = "0.1.0"
