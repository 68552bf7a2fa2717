"""
Point sets on the unit sphere: Fibonacci lattices, mesh width, separation,
domain filters and nested hierarchies.
"""
import csv
import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from scipy.spatial import cKDTree

from src.config import settings
from src.core.exceptions import DomainError
from src.geometry.domains import Domain, FullSphere, as_points

logger = logging.getLogger(__name__)

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))
LEVEL_ONE_MESH_WIDTH = 0.174


def fibonacci_lattice(count: int) -> np.ndarray:
    """Spherical Fibonacci spiral with `count` nodes, z stratified at cell midpoints."""
    i = np.arange(count, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / count
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = GOLDEN_ANGLE * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


class PointSet:
    """Immutable set of distinct unit vectors with cached geometry."""

    def __init__(self, points):
        arr = np.array(as_points(points), dtype=float)
        arr.setflags(write=False)
        self.points = arr

    def __len__(self) -> int:
        return self.points.shape[0]

    def __repr__(self) -> str:
        return f"PointSet(size={len(self)})"

    @cached_property
    def tree(self) -> cKDTree:
        return cKDTree(self.points)

    @cached_property
    def separation(self) -> float:
        """Half the minimal pairwise distance; +inf for a single point."""
        return separation(self)

    @cached_property
    def mesh_width(self) -> float:
        """Mesh width relative to the whole sphere."""
        return mesh_width(self, FullSphere())

    def subset(self, mask: np.ndarray) -> "PointSet":
        return PointSet(self.points[np.asarray(mask, dtype=bool)])


def generate_points(count: int) -> PointSet:
    """Quasi-uniform nodes on the sphere."""
    if count < 1:
        raise DomainError(f"point count must be positive, got {count}")
    return PointSet(fibonacci_lattice(count))


def separation(X: PointSet) -> float:
    """q_X: half of the minimal pairwise Euclidean distance."""
    if len(X) < 2:
        if len(X) == 1:
            return math.inf
        raise DomainError("separation needs at least two points")
    distances, _ = X.tree.query(X.points, k=2)
    q = 0.5 * float(distances[:, 1].min())
    if q <= 0.0:
        raise DomainError("point set contains duplicate nodes")
    return q


def mesh_width(X: PointSet, domain: Optional[Domain] = None, samples: Optional[int] = None) -> float:
    """
    h_{X, domain}: supremum over the domain of the distance to the nearest node
    of X inside the domain, estimated on a dense Fibonacci sample grid.
    """
    domain = domain or FullSphere()
    samples = samples or max(1000, settings.sample_factor * len(X))
    if samples < 1000:
        raise DomainError(f"at least 1000 samples are required, got {samples}")

    nodes = X.points[domain.contains(X.points)]
    if nodes.shape[0] == 0:
        raise DomainError("empty intersection: domain contains no node of X")

    grid = fibonacci_lattice(samples)
    grid = grid[domain.contains(grid)]
    if grid.shape[0] == 0:
        return 0.0
    distances, _ = cKDTree(nodes).query(grid, k=1)
    return float(distances.max())


def filter_cap_interior(X: PointSet, sigma_c: Domain, rho: float) -> PointSet:
    """Keep x with C_rho(x) contained in sigma_c."""
    if not 0.0 < rho < 2.0:
        raise DomainError(f"rho must lie in (0, 2), got {rho}")
    if len(X) == 0:
        return X
    return X.subset(sigma_c.contains_cap(X.points, rho))


def filter_ball_interior(X: PointSet, sigma_c: Domain, delta: float) -> PointSet:
    """Keep x with B_delta(x) intersected with the sphere contained in sigma_c."""
    if not 0.0 < delta < 2.0:
        raise DomainError(f"delta must lie in (0, 2), got {delta}")
    return filter_cap_interior(X, sigma_c, delta * delta / 2.0)


def calibrate_count(target_h: float, domain: Optional[Domain] = None, candidates: int = 120) -> int:
    """Fibonacci node count whose mesh width is closest to target_h."""
    if target_h <= 0.0:
        raise DomainError("target mesh width must be positive")
    # rough start; the candidate grid spans a factor of 9 around it
    guess = max(2, int(round((2.2 / target_h) ** 2)))
    lo, hi = max(2, guess // 3), max(guess * 3, 10)
    grid = np.unique(np.geomspace(lo, hi, candidates).astype(int))

    best_count, best_gap = guess, math.inf
    for count in grid:
        h = mesh_width(generate_points(int(count)), domain)
        gap = abs(h - target_h)
        if gap < best_gap:
            best_count, best_gap = int(count), gap
    logger.debug(f"Calibrated Fibonacci count {best_count} for target mesh width {target_h}")
    return best_count


@lru_cache(maxsize=None)
def level_one_count(target_h: float = LEVEL_ONE_MESH_WIDTH) -> int:
    """Default level-1 size: the Fibonacci count calibrated to target_h."""
    return calibrate_count(target_h)


@dataclass(frozen=True)
class HierarchicalPointSets:
    """Nested-scale node sets with mesh widths shrinking by about gamma per level."""

    levels: List[PointSet]
    gamma: float
    c1: float
    c2: float

    def __len__(self) -> int:
        return len(self.levels)

    def __getitem__(self, index: int) -> PointSet:
        return self.levels[index]

    @property
    def counts(self) -> List[int]:
        return [len(level) for level in self.levels]

    @property
    def mesh_widths(self) -> List[float]:
        """Level scales h_n."""
        return [level.mesh_width for level in self.levels]

    def verify(self) -> None:
        widths = self.mesh_widths
        for n, level in enumerate(self.levels):
            h, q = widths[n], level.separation
            if not (q <= h <= self.c2 * q):
                raise DomainError(f"level {n + 1}: quasi-uniformity q <= h <= c2 q violated (h={h:.4g}, q={q:.4g})")
        for n in range(len(widths) - 1):
            ratio = widths[n + 1] / widths[n]
            if not (self.c1 * self.gamma <= ratio <= self.gamma):
                raise DomainError(f"levels {n + 1}->{n + 2}: mesh width ratio {ratio:.4g} outside [c1*gamma, gamma]")


def build_hierarchy(
    count_1: int,
    levels: int,
    gamma: float = 0.5,
    c1: float = 0.5,
    c2: float = 4.0,
    max_growth: float = 1.5,
) -> HierarchicalPointSets:
    """
    Level n holds ceil(count_1 / gamma^(2n-2)) Fibonacci nodes. A level whose
    mesh width misses h_{n+1} <= gamma h_n is densified in 1% steps (at most
    by max_growth) before the hierarchy is verified.
    """
    if levels < 1:
        raise DomainError("a hierarchy needs at least one level")
    if not (0.0 < gamma < 1.0 and 0.0 < c1 < 1.0 and c2 >= 1.0):
        raise DomainError("need gamma, c1 in (0, 1) and c2 >= 1")

    sets: List[PointSet] = [generate_points(count_1)]
    for n in range(2, levels + 1):
        nominal = math.ceil(count_1 / gamma ** (2 * n - 2))
        bound = gamma * sets[-1].mesh_width
        count = nominal
        candidate = generate_points(count)
        while candidate.mesh_width > bound and count < max_growth * nominal:
            count = int(math.ceil(count * 1.01))
            candidate = generate_points(count)
        if count != nominal:
            logger.info(f"Level {n} densified from {nominal} to {count} nodes")
        sets.append(candidate)

    hierarchy = HierarchicalPointSets(sets, gamma, c1, c2)
    hierarchy.verify()
    return hierarchy


def write_points_csv(X: Union[PointSet, np.ndarray], path: Path) -> Path:
    """One `x,y,z` line per point, 17 significant digits."""
    pts = X.points if isinstance(X, PointSet) else as_points(X)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        for p in pts:
            writer.writerow([f"{v:.17g}" for v in p])
    return path


def read_points_csv(path: Path) -> PointSet:
    rows = []
    with Path(path).open(newline="") as handle:
        for row in csv.reader(handle):
            if not row or row[0].startswith("#"):
                continue
            rows.append([float(v) for v in row[:3]])
    return PointSet(np.array(rows))


