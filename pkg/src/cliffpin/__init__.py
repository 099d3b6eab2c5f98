"""Exact computations with real Clifford algebras, their irreducible real
representations, Lipschitz groups and pinor-bundle obstructions."""

from .blades import CliffordElement, Signature, parse_element
from .classify import ClassRecord, classify, emit_tables
from .kernels import BACKEND
from .reps import MatrixRep, build_irrep

__all__ = [
    "BACKEND",
    "ClassRecord",
    "CliffordElement",
    "MatrixRep",
    "Signature",
    "build_irrep",
    "classify",
    "emit_tables",
    "parse_element",
]
