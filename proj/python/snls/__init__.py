"""Rational travelling waves of the NLS with Levy phase noise."""

from ._core import (
    CoefficientSet,
    DegenerateModelError,
    FormatError,
    LevyPath,
    ModelParams,
    PoleError,
    StepSizeError,
    UnreliableQuadratureError,
    coefficient_distance,
    compute_balance,
    eval_psi,
    eval_u,
    evolve,
    generate_system,
    make_case,
    momentum,
    sample_path,
    solve,
    verify_case,
)

__all__ = [
    "CoefficientSet",
    "DegenerateModelError",
    "FormatError",
    "LevyPath",
    "ModelParams",
    "PoleError",
    "StepSizeError",
    "UnreliableQuadratureError",
    "coefficient_distance",
    "compute_balance",
    "eval_psi",
    "eval_u",
    "evolve",
    "generate_system",
    "make_case",
    "momentum",
    "sample_path",
    "solve",
    "verify_case",
]
