"""Wendland interpolation and multiscale residual correction."""

from .multiscale import (
    InterpolationModel,
    MultiscaleModel,
    field_sampler,
    interpolate,
    l2_error,
    lebesgue_ratio,
    model_spectral,
    multiscale_fit,
    native_inner_product,
    native_norm,
)

__all__ = [
    "InterpolationModel",
    "MultiscaleModel",
    "field_sampler",
    "interpolate",
    "l2_error",
    "lebesgue_ratio",
    "model_spectral",
    "multiscale_fit",
    "native_inner_product",
    "native_norm",
]
