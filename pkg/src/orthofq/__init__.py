"""Bilinear and quadratic forms, orthogonal groups and Clifford algebras over GF(p^k)."""

from __future__ import annotations

from .errors import BudgetExceeded, OrthoError, PreconditionError
from .forms import BilinearForm, FormClass, QuadraticForm, TypeTag, classify, equivalence_witness
from .gf import FieldElement, FieldSpec, make_field
from .groups import Isometry, enumerate_group, group_order
from .linalg import Matrix, Vector

__all__ = [
    "BilinearForm",
    "BudgetExceeded",
    "FieldElement",
    "FieldSpec",
    "FormClass",
    "Isometry",
    "Matrix",
    "OrthoError",
    "PreconditionError",
    "QuadraticForm",
    "TypeTag",
    "Vector",
    "classify",
    "enumerate_group",
    "equivalence_witness",
    "group_order",
    "make_field",
]

__version__ = "0.1.0"
