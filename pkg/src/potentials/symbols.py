"""
Layer potentials and related operators as per-degree spectral multipliers.

    S:   -1 / (2n + 1)
    K:    1 / (4n + 2)
    K +/- I/2:  1 / (4n + 2) +/- 1/2
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.core.exceptions import DomainError
from src.spectral.fields import SpectralScalarField

Multiplier = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class OperatorSymbol:
    """A rotation-invariant operator given by its multiplier lambda_n."""

    name: str
    multiplier: Multiplier

    def table(self, N: int) -> np.ndarray:
        """lambda_0 .. lambda_N."""
        return np.asarray(self.multiplier(np.arange(N + 1, dtype=float)), dtype=float)

    def __matmul__(self, other: "OperatorSymbol") -> "OperatorSymbol":
        return compose(self, other)


def compose(*symbols: OperatorSymbol) -> OperatorSymbol:
    """Product of multipliers; applying the result equals applying each in turn."""
    if not symbols:
        raise DomainError("compose needs at least one symbol")

    def multiplier(n: np.ndarray) -> np.ndarray:
        out = np.ones_like(n)
        for symbol in symbols:
            out = out * symbol.multiplier(n)
        return out

    return OperatorSymbol("*".join(symbol.name for symbol in symbols), multiplier)


S = OperatorSymbol("S", lambda n: -1.0 / (2.0 * n + 1.0))
# only defined on band-limited fields
S_INV = OperatorSymbol("S_inv", lambda n: -(2.0 * n + 1.0))
K = OperatorSymbol("K", lambda n: 1.0 / (4.0 * n + 2.0))
K_PLUS_HALF = OperatorSymbol("K_plus_half", lambda n: 1.0 / (4.0 * n + 2.0) + 0.5)
K_MINUS_HALF = OperatorSymbol("K_minus_half", lambda n: 1.0 / (4.0 * n + 2.0) - 0.5)
LAPLACE_BELTRAMI = OperatorSymbol("laplace_beltrami", lambda n: -n * (n + 1.0))


def neg_lb_plus_quarter_pow(s: float) -> OperatorSymbol:
    """(-Delta + 1/4)^(s/2), whose multiplier is (n + 1/2)^s."""
    return OperatorSymbol(f"neg_lb_plus_quarter_pow({s:g})", lambda n: (n + 0.5) ** s)


SYMBOLS = {
    symbol.name: symbol
    for symbol in (S, S_INV, K, K_PLUS_HALF, K_MINUS_HALF, LAPLACE_BELTRAMI)
}


def get_symbol(name: str) -> OperatorSymbol:
    try:
        return SYMBOLS[name]
    except KeyError:
        raise DomainError(f"unknown operator symbol {name!r}; expected one of {sorted(SYMBOLS)}") from None


def apply_symbol(op: OperatorSymbol, f: SpectralScalarField) -> SpectralScalarField:
    return f.scale_per_degree(op.table(f.max_degree))
