"""
Hardy operators B+ and B- and the Hardy-Hodge split of vector fields.

    B+ = eta (K - I/2) + grad S,    B- = eta (K + I/2) + grad S

so that B+ Y_{n,k} = b+_{n,k} and B- Y_{n,k} = b-_{n,k}.
"""
import logging
from typing import Dict

import numpy as np

from src.spectral.fields import SpectralScalarField, SpectralVectorField
from src.spectral.transforms import GaussGrid, project_vector

logger = logging.getLogger(__name__)


def apply_Bplus(f: SpectralScalarField) -> SpectralVectorField:
    """Constants are annihilated."""
    zeros = np.zeros_like(f.coeffs)
    plus = f.coeffs.copy()
    plus[0] = 0.0
    return SpectralVectorField(f.max_degree, plus, zeros, zeros)


def apply_Bminus(f: SpectralScalarField) -> SpectralVectorField:
    zeros = np.zeros_like(f.coeffs)
    return SpectralVectorField(f.max_degree, zeros, f.coeffs.copy(), zeros)


def hardy_combination(f_plus: SpectralScalarField, f_minus: SpectralScalarField) -> SpectralVectorField:
    """B+ f_plus + B- f_minus."""
    N = max(f_plus.max_degree, f_minus.max_degree)
    plus = f_plus.truncate(N).coeffs.copy()
    plus[0] = 0.0
    return SpectralVectorField(N, plus, f_minus.truncate(N).coeffs, np.zeros_like(plus))


def multiplier_tables(N: int) -> Dict[str, np.ndarray]:
    """Squared-norm multipliers of B+ (n >= 1) and B- (n >= 0)."""
    n = np.arange(N + 1, dtype=float)
    plus = n / (2.0 * n + 1.0)
    plus[0] = np.nan
    return {"plus": plus, "minus": (n + 1.0) / (2.0 * n + 1.0)}


def hardy_hodge_decompose(samples, grid: GaussGrid, N: int) -> SpectralVectorField:
    """Split sampled vectors into H+, H- and divergence-free tangential legs."""
    field = project_vector(samples, grid, N)
    energies = field.leg_energies()
    logger.debug(
        f"Hardy-Hodge split at degree {N}: plus={energies['plus']:.4e} "
        f"minus={energies['minus']:.4e} df={energies['df']:.4e}"
    )
    return field


def tau_ptm_of_localized(f_plus: SpectralScalarField, field: SpectralVectorField) -> SpectralScalarField:
    """
    For a field supported in the cap complement, tau_ptm(f_plus) is the B-
    potential of that same field. f_plus only fixes the truncation degree.
    """
    return field.minus_potential.truncate(f_plus.max_degree)
