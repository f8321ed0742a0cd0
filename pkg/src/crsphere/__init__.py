"""Numeric verification of equivariant CR minimal immersions of S^3 into CP^n."""

from .algebra import PolyVector, ReducedPolynomial, apply_field, derive, hermitian_pair, reduce
from .families import (
    FamilyParams,
    berger_params,
    constant_curvature_case,
    family_lift,
    minimal_t,
    phi1_lift,
    recover_integers,
)
from .frames import invariants, rotate_frame, structure_matrix
from .fubini_study import ImmersionLift, cr_data, second_fundamental_form
from .intrinsic import classify, curvature

__version__ = "0.1.0"

__all__ = [
    "PolyVector", "ReducedPolynomial", "apply_field", "derive", "hermitian_pair", "reduce",
    "FamilyParams", "berger_params", "constant_curvature_case", "family_lift", "minimal_t",
    "phi1_lift", "recover_integers", "invariants", "rotate_frame", "structure_matrix",
    "ImmersionLift", "cr_data", "second_fundamental_form", "classify", "curvature",
]
