"""
Wendland spherical basis function psi(r) = (1 - r)_+^4 (4 r + 1) and its
scaled versions Psi_delta(x, y) = delta^-2 psi(|x - y| / delta).

The spectrum is the terminating series
    Psi_n = pi/7 3F2(-n, n + 1, 5/2; 4, 9/2; delta^2 / 4),
whose alternating terms cancel catastrophically in double precision, so it is
summed in mpmath with enough digits to cover the largest term.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy.spatial import cKDTree

from src.core.exceptions import DomainError
from src.geometry.domains import as_points

logger = logging.getLogger(__name__)

GUARD_DIGITS = 20


def wendland_profile(u) -> np.ndarray:
    """psi(u) with support [0, 1]."""
    u = np.asarray(u, dtype=float)
    v = np.clip(1.0 - u, 0.0, None)
    return v ** 4 * (4.0 * u + 1.0)


def wendland_profile_derivative(u) -> np.ndarray:
    """psi'(u) = -20 u (1 - u)^3 on [0, 1]."""
    u = np.asarray(u, dtype=float)
    v = np.clip(1.0 - u, 0.0, None)
    return -20.0 * u * v ** 3


def neighbor_pairs(A: np.ndarray, B: np.ndarray, radius: float):
    """Index pairs (i, j) with |A_i - B_j| <= radius and their distances."""
    lists = cKDTree(B).query_ball_tree(cKDTree(A), radius)
    j = np.repeat(np.arange(len(lists)), [len(item) for item in lists])
    i = np.fromiter((k for item in lists for k in item), dtype=int, count=j.shape[0])
    r = np.linalg.norm(A[i] - B[j], axis=1) if j.shape[0] else np.zeros(0)
    return i, j, r


def _check_delta(delta: float) -> None:
    if not 0.0 < delta <= 2.0:
        raise DomainError(f"Wendland scale must lie in (0, 2], got {delta}")


def wendland_spatial(delta: float, x, y) -> np.ndarray:
    """Psi_delta(x, y) for paired rows of x and y (either may be a single point)."""
    _check_delta(delta)
    r = np.linalg.norm(as_points(x) - as_points(y), axis=1)
    return wendland_profile(r / delta) / (delta * delta)


def _hypergeometric_terms_log_max(n: int, z: float) -> float:
    """log10 of the largest term magnitude of the terminating series."""
    log_term, best = 0.0, 0.0
    for j in range(n):
        ratio = abs((-n + j) * (n + 1 + j) * (2.5 + j)) / ((4 + j) * (4.5 + j) * (j + 1)) * z
        if ratio == 0.0:
            break
        log_term += math.log10(ratio)
        best = max(best, log_term)
    return best


def _wendland_coefficient(n: int, delta: float) -> float:
    z = delta * delta / 4.0
    digits = int(_hypergeometric_terms_log_max(n, z)) + GUARD_DIGITS
    with mpmath.workdps(digits):
        zm = mpmath.mpf(z)
        term = mpmath.mpf(1)
        total = mpmath.mpf(1)
        for j in range(n):
            term *= mpmath.mpf((-n + j) * (n + 1 + j)) * (mpmath.mpf(5) / 2 + j) * zm
            term /= (4 + j) * (mpmath.mpf(9) / 2 + j) * (j + 1)
            total += term
        return float(mpmath.pi / 7 * total)


@lru_cache(maxsize=64)
def _wendland_coeffs_cached(delta: float, N: int) -> tuple:
    return tuple(_wendland_coefficient(n, delta) for n in range(N + 1))


@dataclass(frozen=True)
class WendlandSpectrum:
    """Addition-theorem coefficients Psi_n of Psi_delta up to degree N."""

    delta: float
    max_degree: int
    coeffs: np.ndarray

    def extend(self, N: int) -> "WendlandSpectrum":
        return wendland_coeffs(self.delta, N)


def wendland_coeffs(delta: float, N: int) -> WendlandSpectrum:
    _check_delta(delta)
    if N < 0:
        raise DomainError("degree must be non-negative")
    coeffs = np.array(_wendland_coeffs_cached(float(delta), int(N)))
    coeffs.setflags(write=False)
    return WendlandSpectrum(float(delta), int(N), coeffs)


@dataclass(frozen=True)
class WendlandKernel:
    """Scaled Wendland kernel with support radius delta."""

    delta: float

    def __post_init__(self):
        _check_delta(self.delta)

    def __call__(self, x, y) -> np.ndarray:
        return wendland_spatial(self.delta, x, y)

    def spectrum(self, N: int) -> WendlandSpectrum:
        return wendland_coeffs(self.delta, N)

    def matrix(self, X, Y=None) -> np.ndarray:
        """Dense kernel matrix [Psi_delta(x_i, y_j)], assembled from neighbor pairs."""
        X = as_points(X)
        Y = X if Y is None else as_points(Y)
        out = np.zeros((X.shape[0], Y.shape[0]))
        i, j, r = neighbor_pairs(X, Y, self.delta)
        out[i, j] = wendland_profile(r / self.delta) / self.delta ** 2
        return out

    def evaluate(self, centers, alphas, points) -> np.ndarray:
        """sum_i alpha_i Psi_delta(center_i, y) at each point y."""
        centers = as_points(centers)
        points = as_points(points)
        out = np.zeros(points.shape[0])
        if centers.shape[0] == 0:
            return out
        i, j, r = neighbor_pairs(centers, points, self.delta)
        values = np.asarray(alphas, dtype=float)[i] * wendland_profile(r / self.delta)
        np.add.at(out, j, values / self.delta ** 2)
        return out

    def gradient(self, center, points) -> np.ndarray:
        """Surface gradient in y of Psi_delta(center, y), shape (P, 3)."""
        c = np.asarray(center, dtype=float).reshape(3)
        pts = as_points(points)
        diff = pts - c
        r = np.linalg.norm(diff, axis=1)
        # d/dy |y - c| projected to the tangent plane; psi'(0) = 0 keeps r -> 0 finite
        safe_r = np.where(r > 0.0, r, 1.0)
        scale = wendland_profile_derivative(r / self.delta) / (self.delta ** 3 * safe_r)
        tangential = diff - np.sum(diff * pts, axis=1)[:, None] * pts
        return scale[:, None] * tangential
