"""Exact computations with representations of triangular matrix algebras over Frobenius cores."""
from __future__ import annotations

from .cartan import CartanDatum, classify, named
from .config import SessionConfig
from .exactla import GF, QQ, Matrix
from .triangalg import (TriangularAlgebra, build_generalized_path_algebra, build_gls,
                        build_path_algebra_over_core)
from .repcat import Representation, injective, projective, simple_top

__all__ = ["CartanDatum", "classify", "named", "SessionConfig", "GF", "QQ", "Matrix",
           "TriangularAlgebra", "build_gls", "build_path_algebra_over_core",
           "build_generalized_path_algebra", "Representation", "projective", "injective",
           "simple_top"]
