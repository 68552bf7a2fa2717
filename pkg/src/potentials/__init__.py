"""Spectral layer potentials and Hardy operators."""

from .symbols import (
    K,
    K_MINUS_HALF,
    K_PLUS_HALF,
    LAPLACE_BELTRAMI,
    S,
    S_INV,
    SYMBOLS,
    OperatorSymbol,
    apply_symbol,
    compose,
    get_symbol,
    neg_lb_plus_quarter_pow,
)
from .hardy import (
    apply_Bminus,
    apply_Bplus,
    hardy_combination,
    hardy_hodge_decompose,
    multiplier_tables,
    tau_ptm_of_localized,
)

__all__ = [
    "K",
    "K_MINUS_HALF",
    "K_PLUS_HALF",
    "LAPLACE_BELTRAMI",
    "S",
    "S_INV",
    "SYMBOLS",
    "OperatorSymbol",
    "apply_symbol",
    "compose",
    "get_symbol",
    "neg_lb_plus_quarter_pow",
    "apply_Bminus",
    "apply_Bplus",
    "hardy_combination",
    "hardy_hodge_decompose",
    "multiplier_tables",
    "tau_ptm_of_localized",
]
