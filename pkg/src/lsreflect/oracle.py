"""Brute-force reference fit: try many unit normals, keep the best.

Only one hemisphere of normals is sampled since (n, d) and (-n, -d) give the
same reflection. For each sampled normal the offset is d = c.n with c the
combined centroid, which is optimal for that normal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .reflection import Hyperplane, PointSet, _check_pair, _pointset, canonicalize

_CHUNK = 512


@dataclass(frozen=True)
class OracleResult:
    plane: Hyperplane
    objective: float
    samples: int


def half_circle_normals(resolution: int) -> np.ndarray:
    theta = np.arange(resolution) * math.pi / resolution
    return np.column_stack([np.cos(theta), np.sin(theta)])


def fibonacci_hemisphere(resolution: int) -> np.ndarray:
    """``resolution`` near-uniform unit vectors with positive z."""
    i = np.arange(resolution, dtype=np.float64)
    z = 1.0 - (i + 0.5) / resolution
    r = np.sqrt(1.0 - z * z)
    phi = i * math.pi * (3.0 - math.sqrt(5.0))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def sample_normals(dim: int, resolution: int) -> np.ndarray:
    if dim == 2:
        return half_circle_normals(resolution)
    if dim == 3:
        return fibonacci_hemisphere(resolution)
    raise ValueError(f"grid search supports D in {{2, 3}}, got {dim}")


def objectives_for_normals(normals: np.ndarray, P: PointSet, Q: PointSet) -> np.ndarray:
    """Objective of every sampled normal (offset through the combined centroid)."""
    p, q = P.points, Q.points
    c = (p.sum(axis=0) + q.sum(axis=0)) / (2 * P.m)
    out = np.empty(normals.shape[0])
    for start in range(0, normals.shape[0], _CHUNK):
        n = normals[start:start + _CHUNK]           # (k, D)
        d = n @ c                                   # (k,)
        s = p @ n.T - d                             # (m, k)
        refl = p[None, :, :] - 2.0 * s.T[:, :, None] * n[:, None, :]
        r = refl - q[None, :, :]
        out[start:start + _CHUNK] = np.sum(r * r, axis=(1, 2))
    return out


def grid_search_fit(P, Q, resolution: int) -> OracleResult:
    """Best sampled plane; ties go to the lowest sample index.

    D=2 uses normals at angles k*pi/resolution, D=3 a Fibonacci lattice of
    ``resolution`` points on the upper hemisphere.
    """
    P, Q = _pointset(P), _pointset(Q)
    _check_pair(P, Q)
    if int(resolution) != resolution or resolution < 8:
        raise ValueError(f"resolution must be an integer >= 8, got {resolution}")
    normals = sample_normals(P.dim, int(resolution))
    objs = objectives_for_normals(normals, P, Q)
    k = int(np.argmin(objs))
    c = (P.points.sum(axis=0) + Q.points.sum(axis=0)) / (2 * P.m)
    n = normals[k]
    plane = canonicalize(Hyperplane(n, float(c @ n)))
    return OracleResult(plane, float(objs[k]), normals.shape[0])
