"""Exact-arithmetic toolkit for Hermitian Jacobi forms over the Gaussian integers."""

from .errors import (DecompositionError, FormatError, HJFError, InsufficientPrecision, SupportError,
                     UnsupportedRange)
from .gaussian import GaussRat, HalfLattice, Rep, representatives
from .hermitian import (ComponentVector, HermitianExpansion, assemble, build_index1_2mod4,
                        build_ker_pi1_2mod4, build_named, extract, order_vanishing, restrict,
                        taylor_chi, theta_hermitian, u_raise)
from .jacobi import JacobiExpansion, theta_classical, theta_constants
from .modular import SpaceBasis, delta, dims, eisenstein, membership
from .qseries import DEFAULT_PREC, QSeries, eta_power

__version__ = "0.1.0"

__all__ = [
    "ComponentVector", "DEFAULT_PREC", "DecompositionError", "FormatError", "GaussRat", "HJFError",
    "HalfLattice", "HermitianExpansion", "InsufficientPrecision", "JacobiExpansion", "QSeries", "Rep",
    "SpaceBasis", "SupportError", "UnsupportedRange", "assemble", "build_index1_2mod4",
    "build_ker_pi1_2mod4", "build_named", "delta", "dims", "eisenstein", "eta_power", "extract",
    "membership", "order_vanishing", "representatives", "restrict", "taylor_chi", "theta_classical",
    "theta_constants", "theta_hermitian", "u_raise",
]
