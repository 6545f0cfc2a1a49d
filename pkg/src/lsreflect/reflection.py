"""Least-squares affine reflection between two corresponding point sets.

Given P = {p_i} and Q = {q_i} in R^D, find the unit normal n and offset d of
the hyperplane n.p = d minimising

    sum_i || p_i - 2 (p_i.n - d) n - q_i ||^2.

The optimal offset puts the combined centroid c of all 2m points on the
plane (d = c.n). With x_i = p_i - c and y_i = q_i - c, the normal is the
eigenvector of the smallest eigenvalue of A = (B + B^T) / 2, where
B = sum_i x_i y_i^T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import EigenDecomposition, as_vector, jacobi_eigen, symmetrize

SIGN_TOL = 1e-9
GAP_TOL = 1e-9


class DegenerateInput(ValueError):
    """A vanishes, so every unit normal is an equally good fit."""


@dataclass(frozen=True)
class PointSet:
    """m points in R^D stored as an (m, D) array."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError(f"points must be an (m, D) array, got shape {pts.shape}")
        m, dim = pts.shape
        if m < 1:
            raise ValueError("point set is empty")
        if dim < 2:
            raise ValueError(f"points must have dimension >= 2, got {dim}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point set has non-finite coordinates")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.m

    def scale(self) -> float:
        return float(np.max(np.abs(self.points)))


def _pointset(x) -> PointSet:
    return x if isinstance(x, PointSet) else PointSet(x)


def _check_pair(P: PointSet, Q: PointSet) -> None:
    if P.m != Q.m:
        raise ValueError(f"point count mismatch: {P.m} vs {Q.m}")
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")


@dataclass(frozen=True)
class Hyperplane:
    """The plane ``normal . p = offset``.

    No unit-length check happens here; :func:`canonicalize` produces the unit,
    sign-fixed form that fitted planes are reported in.
    """

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        object.__setattr__(self, "normal", as_vector(self.normal, "normal"))
        offset = float(self.offset)
        if not np.isfinite(offset):
            raise ValueError("offset must be finite")
        object.__setattr__(self, "offset", offset)

    @property
    def dim(self) -> int:
        return self.normal.size

    def is_canonical(self) -> bool:
        if abs(np.linalg.norm(self.normal) - 1.0) > 1e-12:
            return False
        big = np.flatnonzero(np.abs(self.normal) > SIGN_TOL)
        return big.size > 0 and self.normal[big[0]] > 0


def canonicalize(plane: Hyperplane) -> Hyperplane:
    """Unit normal whose first component above 1e-9 in magnitude is positive."""
    norm = float(np.linalg.norm(plane.normal))
    if norm == 0.0:
        raise ValueError("cannot canonicalize a plane with zero normal")
    n = plane.normal / norm
    d = plane.offset / norm
    big = np.flatnonzero(np.abs(n) > SIGN_TOL)
    # a unit vector always has a component >= 1/sqrt(D) in magnitude
    if n[big[0]] < 0:
        n, d = -n, -d
    return Hyperplane(n, d)


def reflect_point(plane: Hyperplane, p) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    if p.shape != plane.normal.shape:
        raise ValueError(f"dimension mismatch: point {p.shape} vs plane {plane.dim}")
    n = plane.normal
    return p - 2.0 * (p @ n - plane.offset) * n


def reflect_points(plane: Hyperplane, pts) -> np.ndarray:
    """Row-wise :func:`reflect_point` for an (m, D) array."""
    pts = np.asarray(pts, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != plane.dim:
        raise ValueError(f"dimension mismatch: points {pts.shape} vs plane {plane.dim}")
    n = plane.normal
    return pts - 2.0 * np.outer(pts @ n - plane.offset, n)


def objective(plane: Hyperplane, P, Q) -> float:
    P, Q = _pointset(P), _pointset(Q)
    _check_pair(P, Q)
    if plane.dim != P.dim:
        raise ValueError(f"dimension mismatch: plane {plane.dim} vs points {P.dim}")
    r = reflect_points(plane, P.points) - Q.points
    return float(np.sum(r * r))


def combined_centroid(P, Q) -> np.ndarray:
    P, Q = _pointset(P), _pointset(Q)
    _check_pair(P, Q)
    c = (P.points.sum(axis=0) + Q.points.sum(axis=0)) / (2 * P.m)
    c.setflags(write=False)
    return c


@dataclass(frozen=True)
class CenteredPairs:
    centroid: np.ndarray
    xs: np.ndarray
    ys: np.ndarray

    @property
    def m(self) -> int:
        return self.xs.shape[0]


def center_pairs(P, Q) -> CenteredPairs:
    P, Q = _pointset(P), _pointset(Q)
    c = combined_centroid(P, Q)
    xs = P.points - c
    ys = Q.points - c
    xs.setflags(write=False)
    ys.setflags(write=False)
    return CenteredPairs(c, xs, ys)


def covariance_matrices(cp: CenteredPairs) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(B, A)`` with ``B = sum_i x_i y_i^T`` and A its symmetric part."""
    dim = cp.xs.shape[1]
    b = np.zeros((dim, dim))
    for x, y in zip(cp.xs, cp.ys):
        b += np.outer(x, y)
    return b, symmetrize(b)


@dataclass(frozen=True)
class FitResult:
    plane: Hyperplane
    eigenvalues: np.ndarray
    objective: float
    degenerate: bool
    centroid: np.ndarray
    eigen: EigenDecomposition | None = None

    @property
    def normal(self) -> np.ndarray:
        return self.plane.normal

    @property
    def offset(self) -> float:
        return self.plane.offset


def is_degenerate(eigenvalues) -> bool:
    ev = np.asarray(eigenvalues)
    return bool(ev[1] - ev[0] <= GAP_TOL * max(1.0, abs(ev[-1])))


def _vanishing(a: np.ndarray, cp: CenteredPairs, P: PointSet, Q: PointSet) -> bool:
    # A built from rounding-level centred vectors counts as zero
    scale = max(P.scale(), Q.scale())
    return not np.any(a) or float(np.max(np.abs(a))) <= cp.m * (1e-12 * scale) ** 2


def fit_reflection(P, Q) -> FitResult:
    """Best-fit affine reflection taking P onto Q in the least-squares sense.

    Raises:
        ValueError: on size or dimension mismatch.
        DegenerateInput: if A vanishes (all x_i or all y_i are zero).
        ConvergenceError: propagated from the eigen solver.
    """
    P, Q = _pointset(P), _pointset(Q)
    _check_pair(P, Q)
    cp = center_pairs(P, Q)
    _, a = covariance_matrices(cp)
    if _vanishing(a, cp, P, Q):
        raise DegenerateInput("covariance vanishes; every plane through the centroid fits")
    eig = jacobi_eigen(a)
    plane = canonicalize(Hyperplane(eig.eigenvectors[0], 0.0))
    plane = Hyperplane(plane.normal, float(cp.centroid @ plane.normal))
    return FitResult(
        plane=plane,
        eigenvalues=eig.eigenvalues,
        objective=objective(plane, P, Q),
        degenerate=is_degenerate(eig.eigenvalues),
        centroid=cp.centroid,
        eigen=eig,
    )
