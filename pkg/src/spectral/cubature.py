"""
Positive-weight cubature rules with certified polynomial exactness.
"""
import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
from scipy.optimize import nnls
from scipy.special import roots_legendre

from src.core.exceptions import DomainError, MeshTooCoarseError
from src.geometry.domains import CapComplement, SphericalCap, as_points, rotation_to_pole
from src.geometry.points import PointSet
from src.spectral.harmonics import num_coeffs, ylm_matrix
from src.spectral.transforms import GaussGrid

logger = logging.getLogger(__name__)

MOMENT_TOL = 1e-8
MASS_TOL = 1e-10
FOUR_PI = 4.0 * math.pi


def moment_residuals(nodes: np.ndarray, weights: np.ndarray, L: int) -> np.ndarray:
    """Q(Y_{n,k}) - integral of Y_{n,k} for all n <= L."""
    moments = ylm_matrix(nodes, L).T @ weights
    moments[0] -= math.sqrt(FOUR_PI)
    return moments


@dataclass(frozen=True)
class CubatureRule:
    """Nodes, positive weights and the degree L up to which the rule is exact."""

    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int

    def __post_init__(self):
        nodes = as_points(self.nodes)
        weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (nodes.shape[0],):
            raise DomainError("one weight per node is required")
        if np.any(weights <= 0.0):
            raise DomainError("cubature weights must be positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return self.nodes.shape[0]

    def certify(self) -> float:
        """Verify exactness through degree L; returns the largest moment residual."""
        residuals = moment_residuals(self.nodes, self.weights, self.exactness_degree)
        mass_error = abs(self.weights.sum() - FOUR_PI)
        worst = float(np.max(np.abs(residuals[1:]))) if residuals.shape[0] > 1 else 0.0
        if mass_error > MASS_TOL * FOUR_PI or worst > MOMENT_TOL:
            raise MeshTooCoarseError(
                f"rule is not exact to degree {self.exactness_degree}: "
                f"mass error {mass_error:.3e}, moment residual {worst:.3e}"
            )
        return worst

    def apply(self, values) -> float:
        return apply(self, values)


def apply(rule: Union[CubatureRule, "DomainQuadrature"], values) -> float:
    """Weighted sum of node values."""
    values = np.asarray(values, dtype=float)
    if values.shape[0] != rule.weights.shape[0]:
        raise DomainError(f"expected {rule.weights.shape[0]} values, got {values.shape[0]}")
    return float(np.tensordot(rule.weights, values, axes=(0, 0)))


def gauss_product_rule(L: int) -> CubatureRule:
    """ceil((L + 1) / 2) Gauss-Legendre latitudes times L + 1 longitudes."""
    if L < 0:
        raise DomainError("exactness degree must be non-negative")
    grid = GaussGrid(max(1, math.ceil((L + 1) / 2)), L + 1)
    rule = CubatureRule(grid.points, grid.weights, L)
    rule.certify()
    return rule


def scattered_weights(X: PointSet, L: int) -> CubatureRule:
    """
    Positive weights on scattered nodes exact through degree L.

    First tries the least-norm correction of the equal-area weights; if that
    produces a non-positive weight, falls back to non-negative least squares
    and drops nodes whose weight vanishes.
    """
    nodes = X.points
    if nodes.shape[0] < num_coeffs(L):
        raise MeshTooCoarseError(f"mesh too coarse for L={L}: need at least {num_coeffs(L)} nodes, got {len(X)}")

    A = ylm_matrix(nodes, L).T
    b = np.zeros(num_coeffs(L))
    b[0] = math.sqrt(FOUR_PI)

    w0 = np.full(nodes.shape[0], FOUR_PI / nodes.shape[0])
    correction, *_ = np.linalg.lstsq(A, b - A @ w0, rcond=None)
    weights = w0 + correction

    if np.min(weights) <= 0.0:
        logger.debug(f"Least-norm weights not positive for L={L}; falling back to NNLS")
        weights, _ = nnls(A, b, maxiter=50 * nodes.shape[0])

    keep = weights > 0.0
    if not np.any(keep):
        raise MeshTooCoarseError(f"mesh too coarse for L={L}: all weights vanished")
    rule = CubatureRule(nodes[keep], weights[keep], L)
    try:
        rule.certify()
    except MeshTooCoarseError as exc:
        raise MeshTooCoarseError(f"mesh too coarse for L={L}: {exc}") from exc
    return rule


@dataclass(frozen=True)
class DomainQuadrature:
    """Quadrature over a cap or cap complement; no exactness certificate."""

    nodes: np.ndarray
    weights: np.ndarray

    def apply(self, values) -> float:
        return apply(self, values)


def cap_product_rule(domain: Union[SphericalCap, CapComplement], n_t: int, n_phi: int) -> DomainQuadrature:
    """Gauss-Legendre in cos(theta) times trapezoid in phi, in the frame of the cap center."""
    if isinstance(domain, CapComplement):
        cap, lo, hi = domain.cap, -1.0, 1.0 - domain.cap.polar_radius
    else:
        cap, lo, hi = domain, 1.0 - domain.polar_radius, 1.0
    x, w = roots_legendre(n_t)
    t = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    wt = 0.5 * (hi - lo) * w
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    s = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
    local = np.column_stack([
        np.outer(s, np.cos(phi)).ravel(),
        np.outer(s, np.sin(phi)).ravel(),
        np.repeat(t, n_phi),
    ])
    nodes = local @ rotation_to_pole(cap.center)
    weights = np.repeat(wt, n_phi) * (2.0 * np.pi / n_phi)
    return DomainQuadrature(nodes, weights)


def write_rule_csv(rule: CubatureRule, path: Path) -> Path:
    """`x,y,z,w` per node after a `# L=<degree>` header comment."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        handle.write(f"# L={rule.exactness_degree}\n")
        writer = csv.writer(handle)
        for p, w in zip(rule.nodes, rule.weights):
            writer.writerow([f"{v:.17g}" for v in (*p, w)])
    return path
