"""
Neumann problem on a spherical cap: u harmonic in the cap with prescribed
outward normal derivative on its boundary circle.

In a frame where the cap center is e3 and the cap has angular radius theta0,
the functions

    (tan(theta/2) / tan(theta0/2))^k (cos k phi, sin k phi),   k >= 1,

are Laplace-Beltrami harmonic and regular on the open cap. Their normal
derivative on the boundary is (k / sin theta0) (cos k phi, sin k phi), so the
collocation system is a Fourier fit of the boundary data.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import linalg

from src.core.exceptions import ConvergenceError, DomainError
from src.geometry.domains import SphericalCap, as_points, rotation_to_pole
from src.kernels.green import GreenDifferenceAtom
from src.spectral.harmonics import local_frame

logger = logging.getLogger(__name__)

FLUX_TOL = 1e-8
RESIDUAL_TOL = 1e-3
DEFAULT_BOUNDARY_POINTS = 256
DEFAULT_MAX_ORDER = 64

# (boundary points, outward unit normals) -> normal derivative values
NormalData = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _local_coordinates(points: np.ndarray, rotation: np.ndarray):
    local = points @ rotation.T
    s = np.hypot(local[:, 0], local[:, 1])
    t = np.clip(local[:, 2], -1.0, 1.0)
    phi = np.arctan2(local[:, 1], local[:, 0])
    # tan(theta / 2) without dividing by sin(theta)
    half_tan = s / (1.0 + t)
    return t, s, phi, half_tan


@dataclass(frozen=True)
class NeumannSolution:
    """u = sum_k (a_k cos k phi + b_k sin k phi) (tan(theta/2) / tan(theta0/2))^k."""

    cap: SphericalCap
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray
    net_flux: float
    boundary_residual: float
    data_scale: float = 0.0

    @property
    def max_order(self) -> int:
        return self.cos_coeffs.shape[0]

    @property
    def rotation(self) -> np.ndarray:
        return rotation_to_pole(self.cap.center)

    @property
    def boundary_tan(self) -> float:
        return math.tan(0.5 * self.cap.angular_radius)

    def value(self, points) -> np.ndarray:
        pts = as_points(points)
        _, _, phi, half_tan = _local_coordinates(pts, self.rotation)
        ratio = half_tan / self.boundary_tan
        out = np.zeros(pts.shape[0])
        power = np.ones_like(ratio)
        for k in range(1, self.max_order + 1):
            power = power * ratio
            out += power * (self.cos_coeffs[k - 1] * np.cos(k * phi) + self.sin_coeffs[k - 1] * np.sin(k * phi))
        return out

    def gradient(self, points) -> np.ndarray:
        """Surface gradient, shape (P, 3); regular at the cap center."""
        pts = as_points(points)
        R = self.rotation
        t, s, phi, half_tan = _local_coordinates(pts, R)
        e_theta, e_phi = local_frame(t, s, phi)
        T0 = self.boundary_tan
        d_theta = np.zeros(pts.shape[0])
        d_phi = np.zeros(pts.shape[0])
        # g_k = k tan^(k-1)(theta/2) / ((1 + cos theta) T0^k) serves both components
        power = 1.0 / ((1.0 + t) * T0)
        ratio = half_tan / T0
        for k in range(1, self.max_order + 1):
            g = k * power
            a, b = self.cos_coeffs[k - 1], self.sin_coeffs[k - 1]
            ck, sk = np.cos(k * phi), np.sin(k * phi)
            d_theta += g * (a * ck + b * sk)
            d_phi += g * (b * ck - a * sk)
            power = power * ratio
        return (d_theta[:, None] * e_theta + d_phi[:, None] * e_phi) @ R

    def laplacian_residual(self, samples, step: float = 1e-3) -> float:
        """
        Largest finite-difference Laplace-Beltrami value at the samples, using
        the 0-homogeneous extension to R^3 and a 7-point stencil.
        """
        pts = as_points(samples)
        center = self.value(pts)
        total = -6.0 * center
        for axis in range(3):
            for sign in (1.0, -1.0):
                shifted = pts.copy()
                shifted[:, axis] += sign * step
                shifted /= np.linalg.norm(shifted, axis=1)[:, None]
                total = total + self.value(shifted)
        return float(np.max(np.abs(total))) / step ** 2


def boundary_frame(cap: SphericalCap, count: int):
    """Equispaced boundary points, their local longitudes and outward normals."""
    R = rotation_to_pole(cap.center)
    theta0 = cap.angular_radius
    phi = 2.0 * np.pi * np.arange(count) / count
    t = np.full(count, math.cos(theta0))
    s = np.full(count, math.sin(theta0))
    local = np.column_stack([s * np.cos(phi), s * np.sin(phi), t])
    e_theta, _ = local_frame(t, s, phi)
    return local @ R, phi, e_theta @ R


def solve_neumann_cap(
    normal_data: NormalData,
    cap: SphericalCap,
    boundary_points: int = DEFAULT_BOUNDARY_POINTS,
    max_order: int = DEFAULT_MAX_ORDER,
) -> NeumannSolution:
    """Least-squares collocation of the outward normal derivative on the cap boundary."""
    if boundary_points < 8:
        raise DomainError("at least 8 boundary collocation points are required")
    if not 1 <= max_order <= boundary_points // 2 - 1:
        raise DomainError(f"max_order must lie in [1, {boundary_points // 2 - 1}], got {max_order}")

    points, phi, normals = boundary_frame(cap, boundary_points)
    data = np.asarray(normal_data(points, normals), dtype=float)
    theta0 = cap.angular_radius
    circumference = 2.0 * np.pi * math.sin(theta0)
    scale = float(np.max(np.abs(data))) if data.size else 0.0

    net_flux = float(np.mean(data)) * circumference
    if abs(net_flux) > FLUX_TOL * max(1.0, scale * circumference):
        raise DomainError(f"nonzero net flux {net_flux:.3e} through the cap boundary")

    if scale == 0.0:
        zeros = np.zeros(max_order)
        return NeumannSolution(cap, zeros, zeros.copy(), net_flux, 0.0, 0.0)

    k = np.arange(1, max_order + 1)
    angles = np.outer(phi, k)
    system = np.hstack([np.cos(angles), np.sin(angles)]) * (np.concatenate([k, k]) / math.sin(theta0))[None, :]
    solution, *_ = linalg.lstsq(system, data)
    residual = float(np.max(np.abs(system @ solution - data))) / scale
    if not np.isfinite(residual) or residual > RESIDUAL_TOL:
        raise ConvergenceError(
            f"Neumann boundary fit did not converge: relative residual {residual:.2e} with {max_order} orders"
            f" (limit {RESIDUAL_TOL:.0e}; raise the order or the boundary points)"
        )
    logger.debug(f"Neumann cap solve: flux={net_flux:.2e}, boundary residual={residual:.2e}")
    return NeumannSolution(cap, solution[:max_order], solution[max_order:], net_flux, residual, scale)


def green_normal_data(atoms: Sequence[GreenDifferenceAtom], coefficients: Sequence[float]) -> NormalData:
    """nu . grad of sum_l c_l G^rho_{x_l, xbar}."""

    def data(points: np.ndarray, normals: np.ndarray) -> np.ndarray:
        out = np.zeros(points.shape[0])
        for atom, c in zip(atoms, coefficients):
            out += c * np.sum(atom.gradient(points) * normals, axis=1)
        return out

    return data


def neumann_cap_solve(
    x,
    xbar,
    rho: float,
    sigma_c: SphericalCap,
    boundary_points: int = DEFAULT_BOUNDARY_POINTS,
    max_order: int = DEFAULT_MAX_ORDER,
) -> NeumannSolution:
    """N^rho_{x,xbar}: harmonic in sigma_c with the normal derivative of G^rho_{x,xbar}."""
    atom = GreenDifferenceAtom(np.asarray(x, dtype=float), np.asarray(xbar, dtype=float), rho)
    return solve_neumann_cap(green_normal_data([atom], [1.0]), sigma_c, boundary_points, max_order)
