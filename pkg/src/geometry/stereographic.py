"""
Stereographic projection from an arbitrary pole, scaled so the great circle
orthogonal to the pole maps to the unit circle.
"""
import numpy as np

from src.core.exceptions import DomainError
from src.geometry.domains import as_points, rotation_to_pole, unit_vector

POLE_TOL = 1e-14


def stereographic(points, pole) -> np.ndarray:
    """Planar images (M, 2) of points under projection from `pole`."""
    rotation = rotation_to_pole(unit_vector(pole))
    local = as_points(points) @ rotation.T
    denom = 1.0 - local[:, 2]
    if np.any(denom <= POLE_TOL):
        raise DomainError("projection undefined at pole")
    return local[:, :2] / denom[:, None]


def inverse_stereographic(planar, pole) -> np.ndarray:
    """Points on the sphere whose projection from `pole` is `planar`."""
    xy = np.atleast_2d(np.asarray(planar, dtype=float))
    r2 = np.sum(xy * xy, axis=1)
    local = np.column_stack([2.0 * xy[:, 0], 2.0 * xy[:, 1], r2 - 1.0]) / (r2 + 1.0)[:, None]
    return local @ rotation_to_pole(unit_vector(pole))
