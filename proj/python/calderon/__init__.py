"""Hilbert transform matrices of planar domains and curve reconstruction."""

from ._core import (
    InvalidInput,
    NumericalFailure,
    ReconstructionResult,
    SubspaceBasis,
    align,
    boundary_coeffs,
    build_hilbert_matrix,
    dtn_from_hilbert,
    evaluate,
    is_simple,
    near_fixed_subspace,
    normalize_scale,
    objective_and_gradient,
    quadratic_residual,
    reconstruct,
    residual_norm,
    speed_deviation,
)

__all__ = [
    "InvalidInput",
    "NumericalFailure",
    "ReconstructionResult",
    "SubspaceBasis",
    "align",
    "boundary_coeffs",
    "build_hilbert_matrix",
    "dtn_from_hilbert",
    "evaluate",
    "is_simple",
    "near_fixed_subspace",
    "normalize_scale",
    "objective_and_gradient",
    "quadratic_residual",
    "reconstruct",
    "residual_norm",
    "speed_deviation",
]
