"""
Bounded extremal problem: best L2 fit in the dictionary span subject to
||tau_ptm(g)||_{L2} <= c, solved through its Lagrange multiplier

    min_c ||f_e - g||^2 + mu ||tau_ptm(g)||^2

with mu bisected on a log scale until the bound is active.
"""
import logging
import math
from typing import List, Sequence

import numpy as np

from src.core.exceptions import DomainError
from src.hardy.dictionary import Dictionary
from src.hardy.fitting import DEFAULT_S, FitProblem, FitResult
from src.spectral.fields import SpectralScalarField
from src.spectral.harmonics import degree_of_index

logger = logging.getLogger(__name__)

MU_RANGE = (1e-12, 1e12)
RELATIVE_TOL = 1e-6
MAX_BISECTIONS = 200


class BoundedProblem:
    """Shares the Gram matrices of a FitProblem and adds the tau-image Gram matrix."""

    def __init__(self, f_e: SpectralScalarField, dictionary: Dictionary, s: float = DEFAULT_S):
        target = f_e.truncate(dictionary.max_degree)
        self.dictionary = dictionary
        self.problem = FitProblem(target, dictionary.plus_matrix, s)
        mask = degree_of_index(dictionary.max_degree) >= 1
        self.tau_matrix = dictionary.minus_matrix * mask[None, :]
        self.gram_tau = self.tau_matrix @ self.tau_matrix.T

    def tau_norm(self, coefficients: np.ndarray) -> float:
        if coefficients.shape[0] == 0:
            return 0.0
        return float(np.linalg.norm(coefficients @ self.tau_matrix))

    def solve(self, mu: float) -> FitResult:
        problem = self.problem
        coefficients = problem.coefficients(0.0) if mu == 0.0 else problem.coefficients(0.0, extra=mu * self.gram_tau)
        l2 = problem.residual_norm(coefficients)
        result = FitResult(coefficients, 0.0, l2 / problem.denominator, l2, problem.denominator)
        result.extras.update({"mu": float(mu), "tau_norm": self.tau_norm(coefficients)})
        return result


def bep_solve(
    f_e: SpectralScalarField,
    dictionary: Dictionary,
    c_bound: float,
    s: float = DEFAULT_S,
) -> FitResult:
    """Constrained fit; an inactive bound returns the unconstrained lambda = 0 fit."""
    if c_bound <= 0.0:
        raise DomainError(f"the bound c must be positive, got {c_bound}")
    bounded = BoundedProblem(f_e, dictionary, s)
    free = bounded.solve(0.0)
    free.level, free.sigma_label = dictionary.level, dictionary.label
    free.extras["c_bound"] = float(c_bound)
    if len(dictionary) == 0 or free.extras["tau_norm"] <= c_bound:
        free.extras["active"] = 0.0
        return free

    lo, hi = math.log(MU_RANGE[0]), math.log(MU_RANGE[1])
    best = bounded.solve(math.exp(hi))
    if best.extras["tau_norm"] > c_bound:
        logger.warning(f"Bound {c_bound:.3e} not reached at mu={MU_RANGE[1]:.0e}; returning the most constrained fit")
    else:
        for _ in range(MAX_BISECTIONS):
            mid = 0.5 * (lo + hi)
            trial = bounded.solve(math.exp(mid))
            norm = trial.extras["tau_norm"]
            if norm > c_bound:
                lo = mid
            else:
                hi, best = mid, trial
            if abs(norm - c_bound) <= RELATIVE_TOL * c_bound or hi - lo < 1e-12:
                if norm <= c_bound * (1.0 + RELATIVE_TOL):
                    best = trial
                break

    best.level, best.sigma_label = dictionary.level, dictionary.label
    best.extras.update({"c_bound": float(c_bound), "active": 1.0})
    logger.debug(f"BEP bound {c_bound:.3e}: mu={best.extras['mu']:.3e}, tau norm={best.extras['tau_norm']:.4e}")
    return best


def bep_sweep(f_e: SpectralScalarField, dictionary: Dictionary, bounds: Sequence[float], s: float = DEFAULT_S) -> List[FitResult]:
    return [bep_solve(f_e, dictionary, c, s) for c in bounds]
