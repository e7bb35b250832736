"""Separable expanding and collapsing motions of scale-invariant elastic spheres."""

from .constitutive import (
    MaterialModel,
    PolynomialShear,
    QuadraticShear,
    TwoInvariantShear,
    find_u0,
    make_shear,
    validate_model,
)
from .dynamics import collapse_time_quadrature, integrate
from .eigensolver import eigenvalue_solve, picard_solve, verify_solution
from .errors import (
    BracketFailure,
    CoercivityError,
    ConstitutiveError,
    DivergenceError,
    DomainError,
    InsufficientShear,
    MaxIterationsError,
    RegimeError,
    SepMotionError,
    StepUnderflow,
    TubeViolation,
)
from .motion import assemble, sample
from .operators import RadialGrid, apply_L, apply_L_inverse

__all__ = [
    "MaterialModel",
    "PolynomialShear",
    "QuadraticShear",
    "TwoInvariantShear",
    "find_u0",
    "make_shear",
    "validate_model",
    "collapse_time_quadrature",
    "integrate",
    "eigenvalue_solve",
    "picard_solve",
    "verify_solution",
    "BracketFailure",
    "CoercivityError",
    "ConstitutiveError",
    "DivergenceError",
    "DomainError",
    "InsufficientShear",
    "MaxIterationsError",
    "RegimeError",
    "SepMotionError",
    "StepUnderflow",
    "TubeViolation",
    "assemble",
    "sample",
    "RadialGrid",
    "apply_L",
    "apply_L_inverse",
]
