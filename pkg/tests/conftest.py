import numpy as np
import pytest

from lsreflect import Hyperplane, canonicalize, reflect_points


def random_plane(rng, dim):
    n = rng.standard_normal(dim)
    return canonicalize(Hyperplane(n, rng.uniform(-0.5, 0.5) * np.linalg.norm(n)))


def random_instance(rng, dim, m, sigma=0.0):
    """P uniform in [-1, 1]^dim, Q its reflection through a random plane plus noise."""
    P = rng.uniform(-1.0, 1.0, size=(m, dim))
    plane = random_plane(rng, dim)
    Q = reflect_points(plane, P) + sigma * rng.standard_normal((m, dim))
    return P, Q, plane


def scale_of(P, Q):
    return max(float(np.max(np.abs(P))), float(np.max(np.abs(Q))))


def random_rotation(rng, dim):
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def symmetric_cloud(rng, dim, half):
    """``half`` random points plus their mirror images through a random plane."""
    plane = random_plane(rng, dim)
    H = rng.uniform(-1.0, 1.0, size=(half, dim))
    return np.vstack([H, reflect_points(plane, H)]), plane


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
