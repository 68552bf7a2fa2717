"""Wendland and regularized Green kernels with their spectra."""

from .zonal import legendre_transform, radial_legendre_transform, zonal_synthesis
from .wendland import (
    WendlandKernel,
    WendlandSpectrum,
    neighbor_pairs,
    wendland_coeffs,
    wendland_profile,
    wendland_spatial,
)
from .green import (
    GreenDifferenceAtom,
    RegularizedGreen,
    green_coeffs,
    green_diff_laplacian,
    green_profile,
    green_spatial,
    reg_green_coeffs,
    reg_green_gradient,
    reg_green_laplacian_profile,
    reg_green_profile,
    reg_green_profile_derivative,
    reg_green_spatial,
)

__all__ = [
    "legendre_transform",
    "radial_legendre_transform",
    "zonal_synthesis",
    "WendlandKernel",
    "WendlandSpectrum",
    "neighbor_pairs",
    "wendland_coeffs",
    "wendland_profile",
    "wendland_spatial",
    "GreenDifferenceAtom",
    "RegularizedGreen",
    "green_coeffs",
    "green_diff_laplacian",
    "green_profile",
    "green_spatial",
    "reg_green_coeffs",
    "reg_green_gradient",
    "reg_green_laplacian_profile",
    "reg_green_profile",
    "reg_green_profile_derivative",
    "reg_green_spatial",
]
