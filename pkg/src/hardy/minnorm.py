"""
Norm-minimizing vector field generated by a fitted dictionary element.

With f = sum c_l a_l, the Hardy part B+ f + B- tau_ptm(f) equals
sum c_l grad G_l - sum c_i eta Psi_i. Adding the divergence-free tangential
field

    f_df = -sum c_l grad G_l       on Sigma,
         = -sum c_l grad N_l       on Sigma^c,

where N solves the Neumann problem on Sigma^c, yields a field that vanishes
on Sigma.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from src.geometry.domains import SphericalCap, angle_between, as_points
from src.geometry.points import fibonacci_lattice
from src.hardy.dictionary import AtomKind, Dictionary
from src.hardy.fitting import FitResult
from src.hardy.neumann import (
    DEFAULT_BOUNDARY_POINTS,
    DEFAULT_MAX_ORDER,
    NeumannSolution,
    green_normal_data,
    solve_neumann_cap,
)
from src.kernels.green import GreenDifferenceAtom
from src.kernels.wendland import WendlandKernel
from src.potentials.hardy import hardy_combination
from src.spectral.cubature import DomainQuadrature, cap_product_rule
from src.spectral.transforms import synthesize_vector

logger = logging.getLogger(__name__)


@dataclass
class MinNormField:
    """Evaluator for the assembled field and its two orthogonal parts."""

    sigma_c: SphericalCap
    green_atoms: List[GreenDifferenceAtom]
    green_coeffs: np.ndarray
    wendland: Dict[float, Tuple[np.ndarray, np.ndarray]]
    neumann: NeumannSolution
    diagnostics: Dict[str, float] = field(default_factory=dict)

    def green_gradient(self, points) -> np.ndarray:
        pts = as_points(points)
        out = np.zeros_like(pts)
        for atom, c in zip(self.green_atoms, self.green_coeffs):
            out += c * atom.gradient(pts)
        return out

    def wendland_part(self, points) -> np.ndarray:
        """-eta sum c_i Psi_i."""
        pts = as_points(points)
        values = np.zeros(pts.shape[0])
        for delta, (centers, coeffs) in self.wendland.items():
            values += WendlandKernel(delta).evaluate(centers, coeffs, pts)
        return -values[:, None] * pts

    def hardy_part(self, points) -> np.ndarray:
        """B+ f + B- tau_ptm(f) in closed form."""
        return self.green_gradient(points) + self.wendland_part(points)

    def df_part(self, points) -> np.ndarray:
        pts = as_points(points)
        out = -self.green_gradient(pts)
        inside = self.sigma_c.contains(pts)
        if np.any(inside):
            out[inside] = -self.neumann.gradient(pts[inside])
        return out

    def evaluate(self, points) -> np.ndarray:
        """Zero on Sigma; Hardy part minus grad N on Sigma^c."""
        pts = as_points(points)
        out = np.zeros_like(pts)
        inside = self.sigma_c.contains(pts)
        if np.any(inside):
            p = pts[inside]
            out[inside] = self.hardy_part(p) - self.neumann.gradient(p)
        return out


def _squared_norm(rule: DomainQuadrature, vectors: np.ndarray) -> float:
    return float(rule.weights @ np.sum(vectors * vectors, axis=1))


def minnorm_assemble(
    fit: FitResult,
    dictionary: Dictionary,
    boundary_points: int = DEFAULT_BOUNDARY_POINTS,
    max_order: int = DEFAULT_MAX_ORDER,
    quadrature: Tuple[int, int] = (200, 400),
    samples: int = 4000,
) -> MinNormField:
    """Assemble the min-norm field and its diagnostics."""
    sigma_c = dictionary.sigma_c
    green_atoms, green_coeffs = [], []
    wendland: Dict[float, Tuple[list, list]] = {}
    for atom, c in zip(dictionary.atoms, fit.coefficients):
        if atom.kind is AtomKind.GREEN:
            green_atoms.append(GreenDifferenceAtom(atom.center, atom.xbar, atom.scale))
            green_coeffs.append(float(c))
        else:
            centers, coeffs = wendland.setdefault(atom.scale, ([], []))
            centers.append(atom.center)
            coeffs.append(float(c))

    neumann = solve_neumann_cap(green_normal_data(green_atoms, green_coeffs), sigma_c, boundary_points, max_order)
    result = MinNormField(
        sigma_c,
        green_atoms,
        np.asarray(green_coeffs),
        {delta: (np.asarray(c), np.asarray(w)) for delta, (c, w) in wendland.items()},
        neumann,
    )

    n_t, n_phi = quadrature
    inner = cap_product_rule(sigma_c, n_t, n_phi)
    outer = cap_product_rule(sigma_c.complement(), n_t, n_phi)
    hardy_in = result.hardy_part(inner.nodes)
    neumann_in = neumann.gradient(inner.nodes)
    green_out = result.green_gradient(outer.nodes)
    hardy_out = green_out + result.wendland_part(outer.nodes)

    total_sq = _squared_norm(inner, hardy_in - neumann_in)
    hardy_sq = _squared_norm(inner, hardy_in) + _squared_norm(outer, hardy_out)
    df_sq = _squared_norm(inner, neumann_in) + _squared_norm(outer, green_out)
    field_norm = math.sqrt(total_sq)

    grid = fibonacci_lattice(samples)
    sigma_samples = grid[~sigma_c.contains(grid)]
    spectral = hardy_combination(dictionary.combine(fit.coefficients), dictionary.combine(fit.coefficients, minus=True))
    residual = synthesize_vector(spectral, sigma_samples) + result.df_part(sigma_samples)
    sigma_sup = float(np.max(np.linalg.norm(residual, axis=1))) if sigma_samples.shape[0] else 0.0

    interior = grid[angle_between(grid, sigma_c.center) <= 0.7 * sigma_c.angular_radius]
    laplacian = neumann.laplacian_residual(interior) if interior.shape[0] and neumann.data_scale > 0.0 else 0.0

    result.diagnostics = {
        "field_norm": field_norm,
        "hardy_norm": math.sqrt(hardy_sq),
        "df_norm": math.sqrt(df_sq),
        "pythagoras_gap": abs(total_sq - hardy_sq - df_sq) / total_sq if total_sq > 0.0 else 0.0,
        "sigma_sup": sigma_sup,
        "sigma_relative": sigma_sup / field_norm if field_norm > 0.0 else 0.0,
        "closed_form_sigma_sup": float(np.max(np.linalg.norm(result.evaluate(sigma_samples), axis=1)))
        if sigma_samples.shape[0] else 0.0,
        "boundary_residual": neumann.boundary_residual,
        "net_flux": neumann.net_flux,
        "laplacian_residual": laplacian / neumann.data_scale if neumann.data_scale > 0.0 else 0.0,
    }
    logger.info(
        f"Min-norm field: norm={field_norm:.4e}, Sigma residual={result.diagnostics['sigma_relative']:.2e}, "
        f"Pythagoras gap={result.diagnostics['pythagoras_gap']:.2e}"
    )
    return result
