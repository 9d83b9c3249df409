"""Exact mould calculus: moulds, flexion operators, Fay relations and their
correction moulds."""

from .exactalg import Poly, RatFun, Scalar, mpq
from .kernels import BACKEND
from .mouldcore import Mould, MouldA
from .library import build_That01, build_U, build_U1

__version__ = "0.1.0"

__all__ = ["BACKEND", "Mould", "MouldA", "Poly", "RatFun", "Scalar", "build_That01",
           "build_U", "build_U1", "mpq"]
