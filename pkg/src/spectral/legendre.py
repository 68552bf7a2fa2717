"""
Legendre polynomials and fully normalized associated Legendre functions.

lam[n, m] is normalized so that Y_{n,0} = lam[n, 0] and
Y_{n,+-m} = sqrt(2) lam[n, m] (cos m phi, sin m phi) are orthonormal on the
sphere; no Condon-Shortley phase. mu[n, m] = lam[n, m] / sin(theta) is produced
by the same recurrence from a sin^(m-1) seed, so it stays finite at the poles.
"""
import math
from typing import Iterator, NamedTuple, Optional

import numpy as np

from src.core.exceptions import DomainError


def legendre_all(t, N: int) -> np.ndarray:
    """
    P_0(t) .. P_N(t) by the three-term recurrence.

    Returns shape (N + 1,) for scalar t and (N + 1, len(t)) for arrays.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(np.abs(t_arr) > 1.0 + 1e-12):
        raise DomainError("Legendre argument outside [-1, 1]")
    if N < 0:
        raise DomainError("degree must be non-negative")
    scalar = t_arr.ndim == 0
    t_arr = np.clip(np.atleast_1d(t_arr), -1.0, 1.0)

    out = np.empty((N + 1,) + t_arr.shape)
    out[0] = 1.0
    if N >= 1:
        out[1] = t_arr
    for n in range(2, N + 1):
        out[n] = ((2 * n - 1) * t_arr * out[n - 1] - (n - 1) * out[n - 2]) / n
    return out[:, 0] if scalar else out


class LegendreColumn(NamedTuple):
    """Normalized functions of fixed order m for degrees n = m..N."""

    m: int
    lam: np.ndarray
    dlam: Optional[np.ndarray]
    mu: Optional[np.ndarray]


def _recur(t: np.ndarray, m: int, N: int, seed: np.ndarray) -> np.ndarray:
    out = np.empty((N - m + 1,) + t.shape)
    out[0] = seed
    if N > m:
        out[1] = math.sqrt(2 * m + 3) * t * seed
    for n in range(m + 2, N + 1):
        a = math.sqrt((4.0 * n * n - 1.0) / (n * n - m * m))
        b = math.sqrt(((n - 1.0) ** 2 - m * m) / (4.0 * (n - 1.0) ** 2 - 1.0))
        out[n - m] = a * (t * out[n - m - 1] - b * out[n - m - 2])
    return out


def _theta_derivative(t: np.ndarray, m: int, N: int, mu: np.ndarray) -> np.ndarray:
    """d lam / d theta for order m >= 1 from mu columns."""
    out = np.empty_like(mu)
    for n in range(m, N + 1):
        value = n * t * mu[n - m]
        if n > m:
            e = math.sqrt((n * n - m * m) * (2.0 * n + 1.0) / (2.0 * n - 1.0))
            value = value - e * mu[n - m - 1]
        out[n - m] = value
    return out


def legendre_columns(t, s, N: int, derivatives: bool = False) -> Iterator[LegendreColumn]:
    """
    Yield normalized associated Legendre columns for m = 0..N.

    t = cos(theta) and s = sin(theta) >= 0 are passed separately so callers can
    supply an accurate sin near the poles.
    """
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)

    c_m = 1.0 / math.sqrt(4.0 * math.pi)
    s_pow_prev = np.ones_like(t)  # s^(m-1)
    mu_next = None

    for m in range(N + 1):
        if m == 0:
            lam = _recur(t, 0, N, np.full(t.shape, c_m))
            dlam = mu = None
            if derivatives:
                if N >= 1:
                    mu_next = _recur(t, 1, N, np.full(t.shape, c_m * math.sqrt(1.5)))
                    # d lam_n^0 / d theta = -sqrt(n(n+1)) lam_n^1
                    n = np.arange(1, N + 1).reshape((-1,) + (1,) * t.ndim)
                    dlam = np.zeros_like(lam)
                    dlam[1:] = -np.sqrt(n * (n + 1.0)) * mu_next * s
                else:
                    dlam = np.zeros_like(lam)
            yield LegendreColumn(0, lam, dlam, mu)
            continue

        c_m *= math.sqrt((2.0 * m + 1.0) / (2.0 * m))
        if m > 1:
            s_pow_prev = s_pow_prev * s
        if derivatives and m == 1 and mu_next is not None:
            mu = mu_next
        else:
            mu = _recur(t, m, N, c_m * s_pow_prev)
        lam = mu * s
        dlam = _theta_derivative(t, m, N, mu) if derivatives else None
        yield LegendreColumn(m, lam, dlam, mu if derivatives else None)
