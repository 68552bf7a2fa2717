"""
Reference vector field supported in the cap {x . e3 > a}:

    f(x) = Q(x) (3 (x . d) x - d),
    Q(x) = (t - a)^3 (t - 1)^2 (phi - 2 pi)^3 sin(2 phi) phi^3   for t > a, else 0,

with t = x . e3 and phi the longitude in [0, 2 pi).
"""
import math
from typing import Sequence

import numpy as np

from src.core.exceptions import DomainError
from src.geometry.domains import as_points
from src.potentials.hardy import hardy_hodge_decompose
from src.spectral.fields import SpectralVectorField
from src.spectral.transforms import GaussGrid

DEFAULT_A = 0.9
DEFAULT_D = (0.0, 0.6, 0.8)


def test_field_profile(points, a: float = DEFAULT_A) -> np.ndarray:
    """Q at each point."""
    if not -1.0 < a < 1.0:
        raise DomainError(f"support parameter a must lie in (-1, 1), got {a}")
    pts = as_points(points)
    t = pts[:, 2]
    phi = np.mod(np.arctan2(pts[:, 1], pts[:, 0]), 2.0 * math.pi)
    q = (t - a) ** 3 * (t - 1.0) ** 2 * (phi - 2.0 * math.pi) ** 3 * np.sin(2.0 * phi) * phi ** 3
    return np.where(t > a, q, 0.0)


def test_field_eval(points, a: float = DEFAULT_A, d: Sequence[float] = DEFAULT_D) -> np.ndarray:
    pts = as_points(points)
    d = np.asarray(d, dtype=float).reshape(3)
    direction = 3.0 * (pts @ d)[:, None] * pts - d[None, :]
    return test_field_profile(pts, a)[:, None] * direction


def test_field_spectral(
    N: int,
    a: float = DEFAULT_A,
    d: Sequence[float] = DEFAULT_D,
    oversampling: float = 2.0,
) -> SpectralVectorField:
    """Hardy-Hodge coefficients of the field up to degree N on an oversampled Gauss grid."""
    grid = GaussGrid.for_degree(N, vector=True, oversampling=oversampling)
    return hardy_hodge_decompose(test_field_eval(grid.points, a, d), grid, N)


def magnitude_grid(nlat: int = 181, nlon: int = 360, a: float = DEFAULT_A, d: Sequence[float] = DEFAULT_D) -> np.ndarray:
    """Rows (latitude deg, longitude deg, |f|) on an equiangular grid."""
    lat = np.linspace(-90.0, 90.0, nlat)
    lon = np.linspace(0.0, 360.0, nlon, endpoint=False)
    LAT, LON = np.meshgrid(np.radians(lat), np.radians(lon), indexing="ij")
    pts = np.column_stack([
        (np.cos(LAT) * np.cos(LON)).ravel(),
        (np.cos(LAT) * np.sin(LON)).ravel(),
        np.sin(LAT).ravel(),
    ])
    magnitude = np.linalg.norm(test_field_eval(pts, a, d), axis=1)
    return np.column_stack([np.degrees(LAT).ravel(), np.degrees(LON).ravel(), magnitude])


# keep pytest from collecting these when imported into test modules
for _func in (test_field_profile, test_field_eval, test_field_spectral):
    _func.__test__ = False
del _func
