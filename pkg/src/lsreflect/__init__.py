"""Least-squares affine reflection fitting via a symmetric eigenproblem."""

from .linalg import ConvergenceError, EigenDecomposition, jacobi_eigen, outer_product, symmetrize
from .oracle import OracleResult, grid_search_fit
from .reflection import (
    CenteredPairs,
    DegenerateInput,
    FitResult,
    Hyperplane,
    PointSet,
    canonicalize,
    center_pairs,
    combined_centroid,
    covariance_matrices,
    fit_reflection,
    objective,
    reflect_point,
    reflect_points,
)
from .symmetry import SymmetryConfig, SymmetryResult, detect_best_symmetry, detect_symmetry

__all__ = [
    "CenteredPairs",
    "ConvergenceError",
    "DegenerateInput",
    "EigenDecomposition",
    "FitResult",
    "Hyperplane",
    "OracleResult",
    "PointSet",
    "SymmetryConfig",
    "SymmetryResult",
    "canonicalize",
    "center_pairs",
    "combined_centroid",
    "covariance_matrices",
    "detect_best_symmetry",
    "detect_symmetry",
    "fit_reflection",
    "grid_search_fit",
    "jacobi_eigen",
    "objective",
    "outer_product",
    "reflect_point",
    "reflect_points",
    "symmetrize",
]
