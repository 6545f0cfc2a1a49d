"""Small dense linear algebra: outer products, symmetrization, cyclic Jacobi.

Vectors and matrices are plain float64 numpy arrays. The eigen solver works on
nested Python lists internally, which is faster than numpy element access for
the D <= 8 matrices this package deals with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_SWEEPS = 100
OFF_TOL = 1e-13


class ConvergenceError(RuntimeError):
    """Jacobi iteration ran out of sweeps; ``off_norm`` is the residual."""

    def __init__(self, off_norm: float, sweeps: int):
        super().__init__(
            f"Jacobi failed to converge after {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )
        self.off_norm = off_norm
        self.sweeps = sweeps


def as_vector(x, name: str = "vector") -> np.ndarray:
    v = np.array(x, dtype=np.float64)
    if v.ndim != 1 or v.size < 1:
        raise ValueError(f"{name} must be a non-empty 1-D array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite components")
    v.setflags(write=False)
    return v


def as_square(a, name: str = "matrix") -> np.ndarray:
    m = np.array(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def outer_product(x, y) -> np.ndarray:
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.size} vs {y.size}")
    return np.outer(x, y)


def symmetrize(b) -> np.ndarray:
    """Return ``(B + B^T) / 2``, exactly symmetric bit for bit."""
    b = as_square(b, "B")
    # (x + y) / 2 is commutative in IEEE arithmetic, so a[i, j] == a[j, i].
    return (b + b.T) / 2.0


def frobenius(a) -> float:
    return float(math.sqrt(float(np.sum(np.square(a)))))


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues; ``eigenvectors[k]`` (a row) pairs with ``eigenvalues[k]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v.T * self.eigenvalues) @ v


def _off_norm(a: list[list[float]], n: int) -> float:
    s = 0.0
    for i in range(n):
        row = a[i]
        for j in range(i + 1, n):
            s += row[j] * row[j]
    return math.sqrt(2.0 * s)


def jacobi_eigen(a, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Pairs (p, q) are visited in row order. Iteration stops once the
    off-diagonal Frobenius norm drops to ``OFF_TOL * ||A||_F``.

    Raises:
        ValueError: if ``a`` is not square, finite and exactly symmetric.
        ConvergenceError: if ``max_sweeps`` sweeps do not reach the tolerance.
    """
    arr = as_square(a, "A")
    if not np.array_equal(arr, arr.T):
        raise ValueError("A must be exactly symmetric; call symmetrize() first")
    n = arr.shape[0]
    m = arr.tolist()
    v = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    tol = OFF_TOL * frobenius(arr)

    sweeps = 0
    off = _off_norm(m, n)
    while off > tol:
        if sweeps >= max_sweeps:
            raise ConvergenceError(off, sweeps)
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p][q]
                if apq == 0.0:
                    continue
                theta = (m[q][q] - m[p][p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J with J the (p, q) plane rotation
                for k in range(n):
                    mkp = m[k][p]
                    mkq = m[k][q]
                    m[k][p] = c * mkp - s * mkq
                    m[k][q] = s * mkp + c * mkq
                for k in range(n):
                    mpk = m[p][k]
                    mqk = m[q][k]
                    m[p][k] = c * mpk - s * mqk
                    m[q][k] = s * mpk + c * mqk
                m[p][q] = m[q][p] = 0.0
                for k in range(n):
                    vkp = v[k][p]
                    vkq = v[k][q]
                    v[k][p] = c * vkp - s * vkq
                    v[k][q] = s * vkp + c * vkq
        off = _off_norm(m, n)

    diag = [m[i][i] for i in range(n)]
    order = sorted(range(n), key=diag.__getitem__)  # stable: ties keep column order
    values = np.array([diag[k] for k in order])
    vectors = np.array([[v[i][k] for i in range(n)] for k in order])
    return EigenDecomposition(values, vectors, sweeps)
