"""Sphere geometry: domains, point sets and projections."""

from .domains import (
    CapComplement,
    Domain,
    EuclideanSphereBall,
    FullSphere,
    SphericalCap,
    angle_between,
    rotation_to_pole,
    unit_vector,
)
from .points import (
    HierarchicalPointSets,
    PointSet,
    build_hierarchy,
    calibrate_count,
    filter_ball_interior,
    filter_cap_interior,
    fibonacci_lattice,
    generate_points,
    level_one_count,
    mesh_width,
    read_points_csv,
    separation,
    write_points_csv,
)
from .stereographic import inverse_stereographic, stereographic

__all__ = [
    "CapComplement",
    "Domain",
    "EuclideanSphereBall",
    "FullSphere",
    "SphericalCap",
    "angle_between",
    "rotation_to_pole",
    "unit_vector",
    "HierarchicalPointSets",
    "PointSet",
    "build_hierarchy",
    "calibrate_count",
    "filter_ball_interior",
    "filter_cap_interior",
    "fibonacci_lattice",
    "generate_points",
    "level_one_count",
    "mesh_width",
    "read_points_csv",
    "separation",
    "write_points_csv",
    "inverse_stereographic",
    "stereographic",
]
