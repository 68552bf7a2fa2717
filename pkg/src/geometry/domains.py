"""
Unit vectors, spherical caps, their complements and Euclidean balls on the sphere.

All distances are chordal (Euclidean in R^3). A cap C_rho(c) is the open set
{y : c.y > 1 - rho}; its angular radius is arccos(1 - rho).
"""
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from src.core.exceptions import DomainError

UNIT_TOL = 1e-14


def unit_vector(x, y=None, z=None) -> np.ndarray:
    """Return a normalized 3-vector from components or an array-like."""
    if y is None and z is None:
        v = np.asarray(x, dtype=float).reshape(3)
    else:
        v = np.array([x, y, z], dtype=float)
    norm = np.linalg.norm(v)
    if not np.isfinite(norm) or norm == 0.0:
        raise DomainError("cannot normalize a zero or non-finite vector")
    return v / norm


def as_points(points) -> np.ndarray:
    """View input as an (M, 3) float array without normalizing."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, 3)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise DomainError(f"expected points of shape (M, 3), got {arr.shape}")
    return arr


def normalize_rows(points) -> np.ndarray:
    arr = as_points(points)
    norms = np.linalg.norm(arr, axis=1)
    if np.any(norms == 0.0):
        raise DomainError("cannot normalize zero vectors")
    return arr / norms[:, None]


def angle_between(points, center: np.ndarray) -> np.ndarray:
    """Geodesic angle between each point and a unit center, stable near 0 and pi."""
    pts = as_points(points)
    cross = np.linalg.norm(np.cross(pts, center), axis=1)
    dot = pts @ center
    return np.arctan2(cross, dot)


def cap_angular_radius(rho: float) -> float:
    return float(np.arccos(np.clip(1.0 - rho, -1.0, 1.0)))


def rotation_to_pole(center) -> np.ndarray:
    """Orthogonal matrix R with R @ center = e3."""
    w = unit_vector(center)
    if w[2] > 1.0 - UNIT_TOL:
        return np.eye(3)
    if w[2] < -1.0 + UNIT_TOL:
        return np.diag([1.0, -1.0, -1.0])
    helper = np.array([0.0, 0.0, 1.0])
    u = np.cross(helper, w)
    u /= np.linalg.norm(u)
    v = np.cross(w, u)
    return np.vstack([u, v, w])


@dataclass(frozen=True)
class SphericalCap:
    """Open cap {y : center.y > 1 - polar_radius}."""

    center: np.ndarray
    polar_radius: float

    def __post_init__(self):
        if not 0.0 < self.polar_radius < 2.0:
            raise DomainError(f"polar radius must lie in (0, 2), got {self.polar_radius}")
        object.__setattr__(self, "center", unit_vector(self.center))

    @property
    def angular_radius(self) -> float:
        return cap_angular_radius(self.polar_radius)

    @property
    def area(self) -> float:
        return 2.0 * np.pi * self.polar_radius

    def contains(self, points) -> np.ndarray:
        return as_points(points) @ self.center > 1.0 - self.polar_radius

    def contains_cap(self, points, rho: float) -> np.ndarray:
        """True where the cap C_rho(x) lies inside this cap."""
        return angle_between(points, self.center) + cap_angular_radius(rho) <= self.angular_radius

    def complement(self) -> "CapComplement":
        return CapComplement(self)

    def boundary_points(self, count: int) -> np.ndarray:
        """Equispaced points on the boundary circle."""
        theta0 = self.angular_radius
        phi = 2.0 * np.pi * np.arange(count) / count
        local = np.column_stack([
            np.sin(theta0) * np.cos(phi),
            np.sin(theta0) * np.sin(phi),
            np.full(count, np.cos(theta0)),
        ])
        return local @ rotation_to_pole(self.center)


@dataclass(frozen=True)
class CapComplement:
    """Closed complement of a spherical cap."""

    cap: SphericalCap

    @property
    def area(self) -> float:
        return 4.0 * np.pi - self.cap.area

    def contains(self, points) -> np.ndarray:
        return ~self.cap.contains(points)

    def contains_cap(self, points, rho: float) -> np.ndarray:
        return angle_between(points, self.cap.center) - cap_angular_radius(rho) >= self.cap.angular_radius

    def complement(self) -> SphericalCap:
        return self.cap


@dataclass(frozen=True)
class FullSphere:
    """The whole sphere as a domain."""

    area: float = field(default=4.0 * np.pi, init=False)

    def contains(self, points) -> np.ndarray:
        return np.ones(as_points(points).shape[0], dtype=bool)

    def contains_cap(self, points, rho: float) -> np.ndarray:
        return np.ones(as_points(points).shape[0], dtype=bool)


Domain = Union[SphericalCap, CapComplement, FullSphere]


@dataclass(frozen=True)
class EuclideanSphereBall:
    """Intersection of the Euclidean ball B_r(center) with the sphere."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        if not 0.0 < self.radius < 2.0:
            raise DomainError(f"ball radius must lie in (0, 2), got {self.radius}")
        object.__setattr__(self, "center", unit_vector(self.center))

    def contains(self, points) -> np.ndarray:
        return np.linalg.norm(as_points(points) - self.center, axis=1) < self.radius

    def equivalent_cap(self) -> SphericalCap:
        return SphericalCap(self.center, self.radius ** 2 / 2.0)
