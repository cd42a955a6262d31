"""Bounds on the lowest zero of L-function families by symmetry type.

The library computes, for each random-matrix symmetry type (U, O, Sp, SO+,
SO-), the closed-form upper bound on the height of the lowest normalized
zero of an attached family, the lower bound on the proportion of members
with a small first zero, and the explicit optimal test functions behind the
height bound.  Every closed form is cross-checked against an independent
brute-force Rayleigh-quotient oracle.
"""

from .bounds import (
    family_height_bound,
    height_bound,
    height_bound_result,
    orthogonal_asymptotic,
)
from .proportion import (
    beta_pole,
    beta_threshold,
    proportion_bound,
    proportion_bound_limit,
    sym_power_proportion,
    sym_power_proportion_signed,
)
from .rayleigh import minimize as oracle_minimize
from .rayleigh import sqrt_quotient as oracle_sqrt_quotient
from .solver import (
    BoundResult,
    EquationContext,
    build_context,
    minimal_quotient,
    smallest_root,
    tan_ratio,
    tan_ratio_fixed_point,
    tan_ratio_inverse,
)
from .symmetry import FamilySpec, Symmetry, family_params
from .testfunction import PiecewiseTestFunction, reconstruct, residuals

__version__ = "0.1.0"

__all__ = [
    "Symmetry",
    "FamilySpec",
    "family_params",
    "BoundResult",
    "EquationContext",
    "build_context",
    "minimal_quotient",
    "smallest_root",
    "tan_ratio",
    "tan_ratio_fixed_point",
    "tan_ratio_inverse",
    "height_bound",
    "height_bound_result",
    "family_height_bound",
    "orthogonal_asymptotic",
    "proportion_bound",
    "proportion_bound_limit",
    "beta_pole",
    "beta_threshold",
    "sym_power_proportion",
    "sym_power_proportion_signed",
    "oracle_minimize",
    "oracle_sqrt_quotient",
    "PiecewiseTestFunction",
    "reconstruct",
    "residuals",
    "__version__",
]
