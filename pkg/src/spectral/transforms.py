"""
Analysis and synthesis between grid samples and spectral fields.

Analysis runs on Gauss grids (Gauss-Legendre latitudes, equispaced
longitudes) and is separable: longitude sums per latitude, then Legendre sums.
"""
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np
from scipy.special import roots_legendre

from src.core.exceptions import DomainError
from src.spectral.fields import SpectralScalarField, SpectralVectorField
from src.spectral.harmonics import (
    SQRT2,
    degree_of_index,
    evaluate_series,
    local_frame,
    num_coeffs,
    spherical_coordinates,
)
from src.spectral.legendre import legendre_columns


@dataclass(frozen=True)
class GaussGrid:
    """Gauss-Legendre latitudes times equispaced longitudes, latitude-major order."""

    nlat: int
    nlon: int

    def __post_init__(self):
        if self.nlat < 1 or self.nlon < 1:
            raise DomainError("grid needs at least one latitude and one longitude")

    @classmethod
    def for_degree(cls, N: int, vector: bool = False, oversampling: float = 1.0) -> "GaussGrid":
        """Smallest grid that integrates degree-N products exactly, optionally oversampled."""
        nlat = N + 2 if vector else N + 1
        nlon = 2 * N + 3 if vector else 2 * N + 1
        return cls(int(math.ceil(oversampling * nlat)), int(math.ceil(oversampling * nlon)))

    @cached_property
    def _latitudes(self) -> Tuple[np.ndarray, np.ndarray]:
        t, w = roots_legendre(self.nlat)
        return np.asarray(t), np.asarray(w)

    @property
    def t(self) -> np.ndarray:
        return self._latitudes[0]

    @property
    def lat_weights(self) -> np.ndarray:
        return self._latitudes[1]

    @property
    def phi(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.nlon) / self.nlon

    @cached_property
    def points(self) -> np.ndarray:
        s = np.sqrt(1.0 - self.t ** 2)
        x = np.outer(s, np.cos(self.phi))
        y = np.outer(s, np.sin(self.phi))
        z = np.repeat(self.t[:, None], self.nlon, axis=1)
        return np.column_stack([x.ravel(), y.ravel(), z.ravel()])

    @cached_property
    def weights(self) -> np.ndarray:
        return np.repeat(self.lat_weights, self.nlon) * (2.0 * np.pi / self.nlon)

    @property
    def size(self) -> int:
        return self.nlat * self.nlon

    def frame(self) -> Tuple[np.ndarray, np.ndarray]:
        return local_frame(*spherical_coordinates(self.points))

    def check_degree(self, N: int, vector: bool = False) -> None:
        need_lat, need_lon = (N + 2, 2 * N + 3) if vector else (N + 1, 2 * N + 1)
        if self.nlat < need_lat or self.nlon < need_lon:
            raise DomainError(
                f"grid {self.nlat}x{self.nlon} too small for degree {N}; need at least {need_lat}x{need_lon}"
            )

    def _fourier(self, values: np.ndarray, N: int) -> Tuple[np.ndarray, np.ndarray]:
        """Per-latitude cosine and sine sums for m = 0..N, shapes (nlat, N + 1)."""
        grid_values = np.asarray(values, dtype=float).reshape(self.nlat, self.nlon)
        mphi = np.outer(np.arange(N + 1), self.phi)
        dphi = 2.0 * np.pi / self.nlon
        return grid_values @ np.cos(mphi).T * dphi, grid_values @ np.sin(mphi).T * dphi


def analyze(values, grid: GaussGrid, N: int) -> SpectralScalarField:
    """Spherical harmonic coefficients of grid samples up to degree N."""
    grid.check_degree(N)
    values = np.asarray(values, dtype=float)
    if values.shape != (grid.size,):
        raise DomainError(f"expected {grid.size} samples, got {values.shape}")

    cos_sums, sin_sums = grid._fourier(values, N)
    w = grid.lat_weights
    s = np.sqrt(1.0 - grid.t ** 2)
    coeffs = np.zeros(num_coeffs(N))
    for col in legendre_columns(grid.t, s, N):
        m = col.m
        n = np.arange(m, N + 1)
        weighted = col.lam * w
        if m == 0:
            coeffs[n * n + n] = weighted @ cos_sums[:, 0]
        else:
            coeffs[n * n + n + m] = SQRT2 * (weighted @ cos_sums[:, m])
            coeffs[n * n + n - m] = SQRT2 * (weighted @ sin_sums[:, m])
    return SpectralScalarField(N, coeffs)


def project_vector(samples, grid: GaussGrid, N: int) -> SpectralVectorField:
    """
    Orthogonal projection of sampled 3-vectors onto the b+, b-, c families.

    With a = <F.eta, Y>, g = <F, grad Y> and h = <F, eta x grad Y>:
    plus = -(n a + g) / n, minus = ((n + 1) a - g) / (n + 1), df = h / sqrt(n(n + 1)).
    """
    grid.check_degree(N, vector=True)
    F = np.asarray(samples, dtype=float)
    if F.shape != (grid.size, 3):
        raise DomainError(f"expected samples of shape ({grid.size}, 3), got {F.shape}")

    pts = grid.points
    e_theta, e_phi = grid.frame()
    radial = np.sum(F * pts, axis=1)
    f_theta = np.sum(F * e_theta, axis=1)
    f_phi = np.sum(F * e_phi, axis=1)

    a = analyze(radial, grid, N).coeffs
    ct, st = grid._fourier(f_theta, N)
    cp, sp = grid._fourier(f_phi, N)

    g = np.zeros(num_coeffs(N))
    h = np.zeros(num_coeffs(N))
    w = grid.lat_weights
    s = np.sqrt(1.0 - grid.t ** 2)
    for col in legendre_columns(grid.t, s, N, derivatives=True):
        m = col.m
        n = np.arange(m, N + 1)
        plus_idx = n * n + n + m
        dl = col.dlam * w
        if m == 0:
            g[plus_idx] = dl @ ct[:, 0]
            h[plus_idx] = dl @ cp[:, 0]
            continue
        minus_idx = n * n + n - m
        mu = col.mu * w * m
        g[plus_idx] = SQRT2 * (dl @ ct[:, m] - mu @ sp[:, m])
        g[minus_idx] = SQRT2 * (dl @ st[:, m] + mu @ cp[:, m])
        h[plus_idx] = SQRT2 * (dl @ cp[:, m] + mu @ st[:, m])
        h[minus_idx] = SQRT2 * (dl @ sp[:, m] - mu @ ct[:, m])

    n = degree_of_index(N).astype(float)
    safe_n = np.where(n > 0, n, 1.0)
    plus = np.where(n > 0, -(n * a + g) / safe_n, 0.0)
    minus = ((n + 1.0) * a - g) / (n + 1.0)
    df = np.where(n > 0, h / np.sqrt(safe_n * (safe_n + 1.0)), 0.0)
    return SpectralVectorField(N, plus, minus, df)


def synthesize(field: SpectralScalarField, points) -> np.ndarray:
    value, _, _ = evaluate_series(field.coeffs, field.max_degree, points)
    return value


def synthesize_gradient(field: SpectralScalarField, points) -> np.ndarray:
    """Surface gradient of a spectral scalar field, shape (P, 3)."""
    _, d_theta, d_phi = evaluate_series(field.coeffs, field.max_degree, points, derivatives=True)
    e_theta, e_phi = local_frame(*spherical_coordinates(points))
    return d_theta[:, None] * e_theta + d_phi[:, None] * e_phi


def synthesize_vector(field: SpectralVectorField, points) -> np.ndarray:
    """
    Evaluate sum plus b+ + minus b- + df c as A eta + grad B + eta x grad C.
    """
    N = field.max_degree
    n = degree_of_index(N).astype(float)
    radial = (-n * field.plus + (n + 1.0) * field.minus) / (2.0 * n + 1.0)
    potential = -(field.plus + field.minus) / (2.0 * n + 1.0)
    safe_n = np.where(n > 0, n, 1.0)
    toroidal = np.where(n > 0, field.df / np.sqrt(safe_n * (safe_n + 1.0)), 0.0)

    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    e_theta, e_phi = local_frame(*spherical_coordinates(pts))
    A, _, _ = evaluate_series(radial, N, pts)
    _, B_theta, B_phi = evaluate_series(potential, N, pts, derivatives=True)
    _, C_theta, C_phi = evaluate_series(toroidal, N, pts, derivatives=True)

    return (
        A[:, None] * pts
        + (B_theta - C_phi)[:, None] * e_theta
        + (B_phi + C_theta)[:, None] * e_phi
    )
