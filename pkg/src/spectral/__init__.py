"""Spherical harmonics, spectral fields, transforms and cubature."""

from .legendre import legendre_all, legendre_columns
from .harmonics import (
    degree_of_index,
    flat_index,
    grad_ylm,
    grad_ylm_matrix,
    num_coeffs,
    order_of_index,
    ylm_eval,
    ylm_matrix,
)
from .fields import (
    SpectralScalarField,
    SpectralVectorField,
    laplace_beltrami,
    per_degree,
    read_scalar_json,
    sobolev_norm,
    write_field_json,
    zonal_convolve,
)
from .transforms import (
    GaussGrid,
    analyze,
    project_vector,
    synthesize,
    synthesize_gradient,
    synthesize_vector,
)
from .cubature import (
    CubatureRule,
    DomainQuadrature,
    apply,
    cap_product_rule,
    gauss_product_rule,
    scattered_weights,
    write_rule_csv,
)

__all__ = [
    "legendre_all",
    "legendre_columns",
    "degree_of_index",
    "flat_index",
    "grad_ylm",
    "grad_ylm_matrix",
    "num_coeffs",
    "order_of_index",
    "ylm_eval",
    "ylm_matrix",
    "SpectralScalarField",
    "SpectralVectorField",
    "laplace_beltrami",
    "per_degree",
    "read_scalar_json",
    "sobolev_norm",
    "write_field_json",
    "zonal_convolve",
    "GaussGrid",
    "analyze",
    "project_vector",
    "synthesize",
    "synthesize_gradient",
    "synthesize_vector",
    "CubatureRule",
    "DomainQuadrature",
    "apply",
    "cap_product_rule",
    "gauss_product_rule",
    "scattered_weights",
    "write_rule_csv",
]
