"""Approximate mirror-symmetry plane of a single point cloud.

ICP-style alternation: reflect the cloud through the current plane, match each
reflected point to its nearest neighbour in the original cloud, then refit the
plane to those correspondences with :func:`fit_reflection`. Each half-step can
only lower the matched objective, so the recorded history is non-increasing.
The search is local; :func:`detect_best_symmetry` tries every principal axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import jacobi_eigen, symmetrize
from .reflection import Hyperplane, PointSet, _pointset, canonicalize, fit_reflection, objective, reflect_points

_ZERO_FLOOR = 64 * np.finfo(float).eps


@dataclass(frozen=True)
class SymmetryConfig:
    """``init`` is a principal-axis index (0 = largest variance) or a plane."""

    max_iterations: int = 50
    convergence_tol: float = 1e-10
    init: int | Hyperplane = 0

    def __post_init__(self):
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ValueError(f"max_iterations must be a positive integer, got {self.max_iterations}")
        if not self.convergence_tol > 0:
            raise ValueError(f"convergence_tol must be > 0, got {self.convergence_tol}")
        if not isinstance(self.init, Hyperplane) and (
            isinstance(self.init, bool) or not isinstance(self.init, (int, np.integer)) or self.init < 0
        ):
            raise ValueError(f"init must be a non-negative axis index or a Hyperplane, got {self.init!r}")


@dataclass(frozen=True)
class SymmetryResult:
    plane: Hyperplane
    objective_history: list[float] = field(default_factory=list)
    iterations: int = 0
    converged: bool = False

    @property
    def objective(self) -> float:
        return self.objective_history[-1]


def principal_axes(pts: np.ndarray) -> np.ndarray:
    """Rows are principal directions of the cloud, largest variance first."""
    centered = pts - pts.mean(axis=0)
    cov = symmetrize(centered.T @ centered / pts.shape[0])
    return jacobi_eigen(cov).eigenvectors[::-1]


def pca_plane(pts: np.ndarray, axis: int) -> Hyperplane:
    axes = principal_axes(pts)
    if axis >= axes.shape[0]:
        raise ValueError(f"principal axis {axis} out of range for D={axes.shape[0]}")
    n = axes[axis]
    return canonicalize(Hyperplane(n, float(pts.mean(axis=0) @ n)))


def nearest_neighbors(queries: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Index of the closest row of ``pts`` for each query; ties go to the lower index."""
    d2 = np.sum((queries[:, None, :] - pts[None, :, :]) ** 2, axis=2)
    return np.argmin(d2, axis=1)


def detect_symmetry(S, cfg: SymmetryConfig | None = None) -> SymmetryResult:
    """Refine a symmetry plane of ``S`` starting from ``cfg.init``.

    Stops when the relative objective decrease falls below
    ``cfg.convergence_tol``, when the objective is zero to rounding, or after
    ``cfg.max_iterations`` refits.
    """
    cfg = cfg or SymmetryConfig()
    S = _pointset(S)
    if S.m < 2:
        raise ValueError("symmetry detection needs at least 2 points")
    if S.dim not in (2, 3):
        raise ValueError(f"symmetry detection supports D in {{2, 3}}, got {S.dim}")
    pts = S.points
    if isinstance(cfg.init, Hyperplane):
        if cfg.init.dim != S.dim:
            raise ValueError(f"init plane dimension {cfg.init.dim} != {S.dim}")
        plane = cfg.init
    else:
        plane = pca_plane(pts, int(cfg.init))

    floor = S.m * (_ZERO_FLOOR * S.scale()) ** 2
    history: list[float] = []
    matched = pts[nearest_neighbors(reflect_points(plane, pts), pts)]
    prev = objective(plane, pts, matched)
    converged = False
    for _ in range(cfg.max_iterations):
        fit = fit_reflection(pts, matched)
        plane, cur = fit.plane, fit.objective
        history.append(cur)
        if cur <= floor or prev - cur < cfg.convergence_tol * prev:
            converged = True
            break
        prev = cur
        matched = pts[nearest_neighbors(reflect_points(plane, pts), pts)]
    return SymmetryResult(plane, history, len(history), converged)


def detect_best_symmetry(S, max_iterations: int = 50, convergence_tol: float = 1e-10) -> SymmetryResult:
    """Run :func:`detect_symmetry` from every principal axis; lowest objective wins."""
    S = _pointset(S)
    best = None
    for k in range(S.dim):
        cfg = SymmetryConfig(max_iterations, convergence_tol, k)
        res = detect_symmetry(S, cfg)
        if best is None or res.objective < best.objective:
            best = res
    return best
