"""Dictionaries, fitting and vector-field assembly in the Hardy subspaces."""

from .dictionary import (
    DEFAULT_C_BAR,
    DEFAULT_NU,
    AtomKind,
    Dictionary,
    DictionaryAtom,
    atom_minus_field,
    atom_scalar_field,
    build_dictionary,
    envelope,
    level_parameters,
    sign_flip_multipliers,
    single_atom_dictionary,
    vector_atom_field,
)
from .fitting import (
    DEFAULT_LAMBDAS,
    DEFAULT_S,
    FitProblem,
    FitResult,
    error_denominator,
    fit_minus_side,
    fit_regularized,
    joint_report,
    map_to_minus,
    select_lambda,
    tau_mtp_on_span,
)
from .neumann import NeumannSolution, green_normal_data, neumann_cap_solve, solve_neumann_cap
from .minnorm import MinNormField, minnorm_assemble
from .bep import BoundedProblem, bep_solve, bep_sweep
from .test_field import magnitude_grid, test_field_eval, test_field_profile, test_field_spectral

__all__ = [
    "DEFAULT_C_BAR",
    "DEFAULT_NU",
    "AtomKind",
    "Dictionary",
    "DictionaryAtom",
    "atom_minus_field",
    "atom_scalar_field",
    "build_dictionary",
    "envelope",
    "level_parameters",
    "sign_flip_multipliers",
    "single_atom_dictionary",
    "vector_atom_field",
    "DEFAULT_LAMBDAS",
    "DEFAULT_S",
    "FitProblem",
    "FitResult",
    "error_denominator",
    "fit_minus_side",
    "fit_regularized",
    "joint_report",
    "map_to_minus",
    "select_lambda",
    "tau_mtp_on_span",
    "NeumannSolution",
    "green_normal_data",
    "neumann_cap_solve",
    "solve_neumann_cap",
    "MinNormField",
    "minnorm_assemble",
    "BoundedProblem",
    "bep_solve",
    "bep_sweep",
    "magnitude_grid",
    "test_field_eval",
    "test_field_profile",
    "test_field_spectral",
]
