"""
Fundamental solution of the Laplace-Beltrami operator and its C^1
regularization on a cap of polar radius rho.

    G(t)     = ln(1 - t) / (4 pi) + (1 - ln 2) / (4 pi)
    G^rho(t) = (1 - t) / (4 pi rho) + (ln rho - ln 2) / (4 pi)   for t > 1 - rho
             = G(t)                                              otherwise
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import DomainError
from src.geometry.domains import as_points, unit_vector
from src.spectral.legendre import legendre_all

logger = logging.getLogger(__name__)

FOUR_PI = 4.0 * math.pi
SINGULAR_TOL = 1e-14


def _check_rho(rho: float) -> None:
    if not 0.0 < rho < 2.0:
        raise DomainError(f"regularization rho must lie in (0, 2), got {rho}")


def green_profile(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if np.any(t > 1.0 - SINGULAR_TOL):
        raise DomainError("singular: fundamental solution evaluated at coincident points")
    return (np.log(1.0 - t) + 1.0 - math.log(2.0)) / FOUR_PI


def reg_green_profile(rho: float, t) -> np.ndarray:
    _check_rho(rho)
    t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    inner = t > 1.0 - rho
    one_minus = np.where(inner, rho, 1.0 - t)
    outer_value = (np.log(one_minus) + 1.0 - math.log(2.0)) / FOUR_PI
    inner_value = (1.0 - t) / (FOUR_PI * rho) + (math.log(rho) - math.log(2.0)) / FOUR_PI
    return np.where(inner, inner_value, outer_value)


def reg_green_profile_derivative(rho: float, t) -> np.ndarray:
    """d G^rho / dt; continuous across t = 1 - rho."""
    _check_rho(rho)
    t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
    inner = t > 1.0 - rho
    return np.where(inner, -1.0 / (FOUR_PI * rho), -1.0 / (FOUR_PI * np.where(inner, 1.0, 1.0 - t)))


def reg_green_laplacian_profile(rho: float, t) -> np.ndarray:
    """Laplace-Beltrami image of G^rho(x.y) as a function of t = x.y."""
    _check_rho(rho)
    t = np.asarray(t, dtype=float)
    return np.where(t > 1.0 - rho, t / (2.0 * math.pi * rho), -1.0 / FOUR_PI)


def green_spatial(x, y) -> np.ndarray:
    t = np.sum(as_points(x) * as_points(y), axis=1)
    return green_profile(t)


def reg_green_spatial(rho: float, x, y) -> np.ndarray:
    t = np.sum(as_points(x) * as_points(y), axis=1)
    return reg_green_profile(rho, t)


def reg_green_gradient(rho: float, center, points) -> np.ndarray:
    """Surface gradient in y of G^rho(center . y): g'(t) (center - t y)."""
    c = np.asarray(center, dtype=float).reshape(3)
    pts = as_points(points)
    t = pts @ c
    return reg_green_profile_derivative(rho, t)[:, None] * (c[None, :] - t[:, None] * pts)


def _cap_legendre_integrals(a: float, N: int) -> np.ndarray:
    """Q_m = int_a^1 P_m(t) dt for m = 0..N + 1."""
    P = legendre_all(a, N + 2)
    Q = np.empty(N + 2)
    Q[0] = 1.0 - a
    m = np.arange(1, N + 2)
    Q[1:] = (P[m - 1] - P[m + 1]) / (2.0 * m + 1.0)
    return Q


def green_coeffs(N: int) -> np.ndarray:
    """Addition-theorem coefficients of G: 0 and -1 / (n (n + 1))."""
    n = np.arange(N + 1, dtype=float)
    out = np.zeros(N + 1)
    out[1:] = -1.0 / (n[1:] * (n[1:] + 1.0))
    return out


def reg_green_coeffs_array(rho: float, N: int) -> np.ndarray:
    """
    Coefficients of G^rho from its piecewise Laplacian: for n >= 1,
    -n(n+1) G_n = Q_n / 2 + ((n + 1) Q_{n+1} + n Q_{n-1}) / (rho (2n + 1)),
    with Q_m the cap integrals of P_m over [1 - rho, 1]; G_0 = rho / 4.
    """
    _check_rho(rho)
    Q = _cap_legendre_integrals(1.0 - rho, N)
    out = np.empty(N + 1)
    out[0] = rho / 4.0
    if N >= 1:
        n = np.arange(1, N + 1, dtype=float)
        idx = np.arange(1, N + 1)
        bracket = 0.5 * Q[idx] + ((n + 1.0) * Q[idx + 1] + n * Q[idx - 1]) / (rho * (2.0 * n + 1.0))
        out[1:] = -bracket / (n * (n + 1.0))
    return out


@dataclass(frozen=True)
class RegularizedGreen:
    """Spectrum of the regularized fundamental solution up to degree N."""

    rho: float
    max_degree: int
    coeffs: np.ndarray


def reg_green_coeffs(rho: float, N: int) -> RegularizedGreen:
    coeffs = reg_green_coeffs_array(rho, N)
    coeffs.setflags(write=False)
    return RegularizedGreen(float(rho), int(N), coeffs)


@dataclass(frozen=True)
class GreenDifferenceAtom:
    """G^rho(x, .) - G^rho(xbar, .); its Laplacian lives in the two rho-caps."""

    x: np.ndarray
    xbar: np.ndarray
    rho: float

    def __post_init__(self):
        _check_rho(self.rho)
        object.__setattr__(self, "x", unit_vector(self.x))
        object.__setattr__(self, "xbar", unit_vector(self.xbar))

    def value(self, points) -> np.ndarray:
        pts = as_points(points)
        return reg_green_profile(self.rho, pts @ self.x) - reg_green_profile(self.rho, pts @ self.xbar)

    def gradient(self, points) -> np.ndarray:
        return reg_green_gradient(self.rho, self.x, points) - reg_green_gradient(self.rho, self.xbar, points)

    def laplacian(self, points) -> np.ndarray:
        return green_diff_laplacian(self, points)


def green_diff_laplacian(atom: GreenDifferenceAtom, points) -> np.ndarray:
    """Closed-form Laplace-Beltrami image; exactly zero outside both caps."""
    pts = as_points(points)
    return reg_green_laplacian_profile(atom.rho, pts @ atom.x) - reg_green_laplacian_profile(atom.rho, pts @ atom.xbar)
