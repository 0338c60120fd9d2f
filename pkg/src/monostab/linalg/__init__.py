"""Exact sparse linear algebra over Z, Q and prime fields."""

from ._backend import BACKEND
from .homology import ChainComplex, ChainComplexError, HomologyResult, betti_number, homology
from .matrix import GF, QQ, ZZ, FieldScalarSpec, IntMatrix, Ring, block, hstack, vstack
from .rank import rank
from .snf import determinant, invariant_factors, is_smith_form, smith_normal_form

__all__ = [
    "BACKEND",
    "ChainComplex",
    "ChainComplexError",
    "FieldScalarSpec",
    "GF",
    "HomologyResult",
    "IntMatrix",
    "QQ",
    "Ring",
    "ZZ",
    "betti_number",
    "block",
    "determinant",
    "homology",
    "hstack",
    "invariant_factors",
    "is_smith_form",
    "rank",
    "smith_normal_form",
    "vstack",
]
