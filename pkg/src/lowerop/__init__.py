"""Exact calculus of degree-nonincreasing linear operators on polynomials.

Operators are stored by their canonical coefficients ``a_v(x)`` in
``J = sum a_v(x)/v! D^v``; everything is exact (rationals, plus at most one
quadratic surd per computation).
"""

from .errors import LowerOpError
from .functional import (
    MomentFunctional,
    fn_affine,
    fn_derive,
    fn_left_mul,
    fn_pair,
    fn_transpose_apply,
    fn_transpose_apply_distributional,
)
from .mps import (
    MPS,
    DualTable,
    General,
    Orthogonal,
    TwoOrtho,
    mps_dual_table,
    mps_fixed_point_check,
    mps_generate,
)
from .operator import (
    BUILDERS,
    LoweringProfile,
    OperatorJ,
    op_apply,
    op_compose,
    op_from_images,
    op_images,
    op_invert,
    op_lowering_order,
)
from .polyalg import Fraction, Poly, Surd, X, sqrt

__version__ = "0.1.0"

__all__ = [
    "BUILDERS",
    "DualTable",
    "Fraction",
    "General",
    "LowerOpError",
    "LoweringProfile",
    "MPS",
    "MomentFunctional",
    "OperatorJ",
    "Orthogonal",
    "Poly",
    "Surd",
    "TwoOrtho",
    "X",
    "fn_affine",
    "fn_derive",
    "fn_left_mul",
    "fn_pair",
    "fn_transpose_apply",
    "fn_transpose_apply_distributional",
    "mps_dual_table",
    "mps_fixed_point_check",
    "mps_generate",
    "op_apply",
    "op_compose",
    "op_from_images",
    "op_images",
    "op_invert",
    "op_lowering_order",
    "sqrt",
]
