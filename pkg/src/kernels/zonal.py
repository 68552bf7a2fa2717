"""
Zonal kernels F(x.y) and their addition-theorem coefficients

    F(x.y) = sum_n F_n (2n + 1) / (4 pi) P_n(x.y),   F_n = 2 pi int F(t) P_n(t) dt.
"""
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.special import roots_legendre

from src.spectral.legendre import legendre_all


def legendre_transform(
    profile: Callable[[np.ndarray], np.ndarray],
    N: int,
    breakpoints: Optional[Iterable[float]] = None,
    nodes: int = 200,
) -> np.ndarray:
    """
    Coefficients F_0..F_N by Gauss-Legendre quadrature in t, piecewise
    between the given breakpoints.
    """
    cuts = sorted({-1.0, 1.0, *[b for b in (breakpoints or []) if -1.0 < b < 1.0]})
    x, w = roots_legendre(nodes)
    out = np.zeros(N + 1)
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        t = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        weights = 0.5 * (hi - lo) * w * profile(t)
        out += legendre_all(t, N) @ weights
    return 2.0 * np.pi * out


def radial_legendre_transform(
    profile_r: Callable[[np.ndarray], np.ndarray],
    N: int,
    support: float,
    nodes: int = 200,
) -> np.ndarray:
    """
    Coefficients of a kernel given as a function of chordal distance r with
    support [0, support]. Substituting t = 1 - r^2/2 keeps polynomial profiles
    polynomial, so Gauss nodes in r integrate them exactly.
    """
    x, w = roots_legendre(nodes)
    r = 0.5 * support * (x + 1.0)
    weights = 0.5 * support * w * profile_r(r) * r
    return 2.0 * np.pi * (legendre_all(1.0 - 0.5 * r * r, N) @ weights)


def zonal_synthesis(coeffs, t) -> np.ndarray:
    """sum_n coeffs_n (2n + 1) / (4 pi) P_n(t)."""
    coeffs = np.asarray(coeffs, dtype=float)
    N = coeffs.shape[0] - 1
    n = np.arange(N + 1)
    scaled = coeffs * (2.0 * n + 1.0) / (4.0 * np.pi)
    return scaled @ legendre_all(np.asarray(t, dtype=float), N)
