"""
Real orthonormal spherical harmonics Y_{n,k} and their surface gradients.

Coefficients of degree <= N are stored flat with index n^2 + n + k,
k = -n..n; k > 0 are cosine modes and k < 0 sine modes.
"""
import math
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from src.core.exceptions import DomainError
from src.geometry.domains import as_points
from src.spectral.legendre import legendre_columns

SQRT2 = math.sqrt(2.0)


def num_coeffs(N: int) -> int:
    return (N + 1) * (N + 1)


def flat_index(n: int, k: int) -> int:
    if abs(k) > n:
        raise DomainError(f"order |k| must not exceed degree n, got n={n}, k={k}")
    return n * n + n + k


@lru_cache(maxsize=32)
def degree_of_index(N: int) -> np.ndarray:
    """Degree n of every flat coefficient index up to degree N."""
    degrees = np.repeat(np.arange(N + 1), 2 * np.arange(N + 1) + 1)
    degrees.setflags(write=False)
    return degrees


@lru_cache(maxsize=32)
def order_of_index(N: int) -> np.ndarray:
    orders = np.concatenate([np.arange(-n, n + 1) for n in range(N + 1)])
    orders.setflags(write=False)
    return orders


def spherical_coordinates(points) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """cos(theta), sin(theta) and longitude of unit vectors."""
    pts = as_points(points)
    t = np.clip(pts[:, 2], -1.0, 1.0)
    s = np.hypot(pts[:, 0], pts[:, 1])
    phi = np.arctan2(pts[:, 1], pts[:, 0])
    return t, s, phi


def local_frame(t: np.ndarray, s: np.ndarray, phi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Unit tangent vectors e_theta and e_phi."""
    cp, sp = np.cos(phi), np.sin(phi)
    e_theta = np.column_stack([t * cp, t * sp, -s])
    e_phi = np.column_stack([-sp, cp, np.zeros_like(t)])
    return e_theta, e_phi


def ylm_matrix(points, N: int) -> np.ndarray:
    """Matrix (P, (N+1)^2) of Y_{n,k} evaluated at every point."""
    t, s, phi = spherical_coordinates(points)
    out = np.empty((t.shape[0], num_coeffs(N)))
    for col in legendre_columns(t, s, N):
        n = np.arange(col.m, N + 1)
        plus = n * n + n + col.m
        if col.m == 0:
            out[:, plus] = col.lam.T
            continue
        minus = n * n + n - col.m
        out[:, plus] = SQRT2 * col.lam.T * np.cos(col.m * phi)[:, None]
        out[:, minus] = SQRT2 * col.lam.T * np.sin(col.m * phi)[:, None]
    return out


def grad_ylm_matrix(points, N: int) -> np.ndarray:
    """Surface gradients of all Y_{n,k}, shape (P, (N+1)^2, 3)."""
    t, s, phi = spherical_coordinates(points)
    e_theta, e_phi = local_frame(t, s, phi)
    d_theta = np.zeros((t.shape[0], num_coeffs(N)))
    d_phi = np.zeros_like(d_theta)
    for col in legendre_columns(t, s, N, derivatives=True):
        n = np.arange(col.m, N + 1)
        plus = n * n + n + col.m
        if col.m == 0:
            d_theta[:, plus] = col.dlam.T
            continue
        minus = n * n + n - col.m
        cm = np.cos(col.m * phi)[:, None]
        sm = np.sin(col.m * phi)[:, None]
        d_theta[:, plus] = SQRT2 * col.dlam.T * cm
        d_theta[:, minus] = SQRT2 * col.dlam.T * sm
        d_phi[:, plus] = -SQRT2 * col.m * col.mu.T * sm
        d_phi[:, minus] = SQRT2 * col.m * col.mu.T * cm
    return d_theta[:, :, None] * e_theta[:, None, :] + d_phi[:, :, None] * e_phi[:, None, :]


def evaluate_series(
    coeffs: np.ndarray, N: int, points, derivatives: bool = False
) -> Tuple[np.ndarray, Optional[np.ndarray], Optional[np.ndarray]]:
    """
    Sum a flat coefficient vector at points without forming the full basis
    matrix. With derivatives, also returns d/dtheta and (1/sin theta) d/dphi.
    """
    t, s, phi = spherical_coordinates(points)
    value = np.zeros(t.shape[0])
    d_theta = np.zeros_like(value) if derivatives else None
    d_phi = np.zeros_like(value) if derivatives else None

    for col in legendre_columns(t, s, N, derivatives=derivatives):
        m = col.m
        n = np.arange(m, N + 1)
        a = coeffs[n * n + n + m]
        if m == 0:
            value += a @ col.lam
            if derivatives:
                d_theta += a @ col.dlam
            continue
        b = coeffs[n * n + n - m]
        cm, sm = np.cos(m * phi), np.sin(m * phi)
        value += SQRT2 * ((a @ col.lam) * cm + (b @ col.lam) * sm)
        if derivatives:
            d_theta += SQRT2 * ((a @ col.dlam) * cm + (b @ col.dlam) * sm)
            d_phi += SQRT2 * m * ((b @ col.mu) * cm - (a @ col.mu) * sm)
    return value, d_theta, d_phi


def _unit_coeffs(n: int, k: int) -> np.ndarray:
    coeffs = np.zeros(num_coeffs(n))
    coeffs[flat_index(n, k)] = 1.0
    return coeffs


def ylm_eval(n: int, k: int, points) -> np.ndarray:
    """Y_{n,k} at one or more points."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    value, _, _ = evaluate_series(_unit_coeffs(n, k), n, points)
    return value


def grad_ylm(n: int, k: int, points) -> np.ndarray:
    """Surface gradient of Y_{n,k}, shape (P, 3)."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    _, d_theta, d_phi = evaluate_series(_unit_coeffs(n, k), n, points, derivatives=True)
    e_theta, e_phi = local_frame(*spherical_coordinates(points))
    return d_theta[:, None] * e_theta + d_phi[:, None] * e_phi
