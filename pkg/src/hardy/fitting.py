"""
Regularized least-squares fitting in the span of a dictionary:

    min_c ||f - sum c_l a_l||_{L2}^2 + lambda^2 ||sum c_l a_l||_{H^s}^2

Both inner products are taken modulo constants (degrees n >= 1), the space
on which B+ is injective.
"""
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Sequence

import numpy as np
from scipy import linalg

from src.config import settings
from src.core.exceptions import DomainError
from src.core.linalg import spd_solve
from src.core.worker_pool import WorkerPool
from src.hardy.dictionary import Dictionary
from src.spectral.fields import SpectralScalarField, SpectralVectorField, sobolev_norm
from src.spectral.harmonics import degree_of_index

logger = logging.getLogger(__name__)

DEFAULT_S = 2.25
DEFAULT_LAMBDAS = tuple(np.logspace(-8, -1, 15).tolist())


@dataclass
class FitResult:
    coefficients: np.ndarray
    lam: float
    relative_error: float
    l2_error: float
    denominator: float
    level: int = 0
    sigma_label: str = ""
    extras: Dict[str, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "lambda": self.lam,
            "coefficients": {str(i): float(c) for i, c in enumerate(self.coefficients)},
            "relative_error": self.relative_error,
            "l2_error": self.l2_error,
            "level": self.level,
            "sigma_label": self.sigma_label,
            **self.extras,
        }

    def write_json(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_json()))
        return path


def error_denominator(f_plus: SpectralScalarField, f_minus: SpectralScalarField, s: float = DEFAULT_S) -> float:
    """||f||_{H^s} + ||tau_ptm f||_{H^s}."""
    return sobolev_norm(f_plus, s) + sobolev_norm(f_minus, s)


class FitProblem:
    """
    Normal equations (G_L2 + lambda^2 G_Hs) c = b for a fixed target and atom
    matrix; Gram matrices are formed once and reused across lambda values.
    """

    def __init__(
        self,
        target: SpectralScalarField,
        atom_matrix: np.ndarray,
        s: float = DEFAULT_S,
        denominator: Optional[float] = None,
    ):
        if s <= 1.0:
            raise DomainError(f"smoothness s must exceed 1, got {s}")
        N = target.max_degree
        if atom_matrix.shape[1] != target.coeffs.shape[0]:
            raise DomainError("atom matrix and target have different truncation degrees")
        n = degree_of_index(N).astype(float)
        mask = n >= 1

        self.N = N
        self.s = s
        self.target = target.coeffs * mask
        self.A = atom_matrix * mask[None, :]
        self.sobolev_weights = np.where(mask, (n + 0.5) ** (2.0 * s), 0.0)
        self.gram_l2 = self.A @ self.A.T
        self.gram_hs = (self.A * self.sobolev_weights[None, :]) @ self.A.T
        self.rhs = self.A @ self.target
        self.target_norm = float(np.linalg.norm(self.target))
        self.denominator = denominator if denominator is not None else sobolev_norm(
            SpectralScalarField(N, self.target), s
        )
        if self.denominator <= 0.0:
            raise DomainError("relative error denominator must be positive")

    @property
    def size(self) -> int:
        return self.A.shape[0]

    def coefficients(self, lam: float, extra: Optional[np.ndarray] = None) -> np.ndarray:
        if self.size == 0:
            return np.zeros(0)
        system = self.gram_l2 + (lam * lam) * self.gram_hs
        if extra is not None:
            system = system + extra
        return spd_solve(system, self.rhs, what=f"normal equations ({self.size} atoms)")

    def residual_norm(self, coefficients: np.ndarray) -> float:
        if self.size == 0:
            return self.target_norm
        return float(np.linalg.norm(self.target - coefficients @ self.A))

    def objective(self, coefficients: np.ndarray, lam: float) -> float:
        fitted = coefficients @ self.A if self.size else np.zeros_like(self.target)
        smooth = float(self.sobolev_weights @ (fitted * fitted))
        return self.residual_norm(coefficients) ** 2 + lam * lam * smooth

    def solve(self, lam: float) -> FitResult:
        coefficients = self.coefficients(lam)
        l2 = self.residual_norm(coefficients)
        return FitResult(coefficients, float(lam), l2 / self.denominator, l2, self.denominator)


def fit_regularized(
    f_target: SpectralScalarField,
    dictionary: Dictionary,
    lam: float,
    s: float = DEFAULT_S,
    denominator: Optional[float] = None,
) -> FitResult:
    """Fit one lambda; an empty dictionary yields the zero fit."""
    target = f_target.truncate(dictionary.max_degree)
    problem = FitProblem(target, dictionary.plus_matrix, s, denominator)
    result = problem.solve(lam)
    result.level, result.sigma_label = dictionary.level, dictionary.label
    return result


def select_lambda(
    f_target: SpectralScalarField,
    dictionary: Dictionary,
    lambdas: Sequence[float] = DEFAULT_LAMBDAS,
    s: float = DEFAULT_S,
    denominator: Optional[float] = None,
) -> FitResult:
    """Best relative error over the lambda grid, fits run on the worker pool."""
    target = f_target.truncate(dictionary.max_degree)
    problem = FitProblem(target, dictionary.plus_matrix, s, denominator)
    results = WorkerPool(settings.max_workers).map(problem.solve, list(lambdas))
    best = min(results, key=lambda r: r.relative_error)
    best.level, best.sigma_label = dictionary.level, dictionary.label
    best.extras["lambdas_tried"] = float(len(results))
    logger.debug(
        f"Selected lambda={best.lam:.2e} (relative error {best.relative_error:.4e}) "
        f"for {dictionary.label or 'dictionary'} level {dictionary.level}"
    )
    return best


def map_to_minus(fit: FitResult, dictionary: Dictionary) -> SpectralScalarField:
    """tau_ptm of the fitted field, assembled atom by atom from the sign-flip law."""
    return dictionary.combine(fit.coefficients, minus=True)


def tau_mtp_on_span(g_minus: SpectralScalarField, dictionary: Dictionary) -> tuple:
    """
    Inverse sign-flip law: express g_minus in the tau_ptm images of the atoms
    (least squares over degrees n >= 1) and map back. Returns the plus-side
    field and the recovered coefficients.
    """
    if len(dictionary) == 0:
        return SpectralScalarField.zeros(dictionary.max_degree), np.zeros(0)
    target = g_minus.truncate(dictionary.max_degree).coeffs
    mask = degree_of_index(dictionary.max_degree) >= 1
    coefficients, *_ = linalg.lstsq(dictionary.minus_matrix[:, mask].T, target[mask])
    return dictionary.combine(coefficients), coefficients


def fit_minus_side(
    f_minus: SpectralScalarField,
    dictionary: Dictionary,
    lambdas: Sequence[float] = DEFAULT_LAMBDAS,
    s: float = DEFAULT_S,
    denominator: Optional[float] = None,
) -> FitResult:
    """Approximate a D_{-,Sigma} potential with the mirrored atoms tau_ptm(a_l)."""
    target = f_minus.truncate(dictionary.max_degree)
    problem = FitProblem(target, dictionary.minus_matrix, s, denominator)
    results = [problem.solve(lam) for lam in lambdas]
    best = min(results, key=lambda r: r.relative_error)
    best.level, best.sigma_label = dictionary.level, dictionary.label
    return best


def joint_report(fit: FitResult, dictionary: Dictionary, vector_field: SpectralVectorField) -> Dict[str, float]:
    """
    Errors of the fitted pair (f_+^n, tau_ptm f_+^n) against the Hardy legs of
    a field, and of the combined vector field B+ f_+^n + B- f_-^n.
    """
    N = dictionary.max_degree
    plus_fit = dictionary.combine(fit.coefficients).coeffs
    minus_fit = dictionary.combine(fit.coefficients, minus=True).coeffs
    n = degree_of_index(N).astype(float)
    mask = n >= 1
    d_plus = (vector_field.plus_potential.truncate(N).coeffs - plus_fit) * mask
    d_minus = (vector_field.minus_potential.truncate(N).coeffs - minus_fit) * mask
    plus_error = float(np.linalg.norm(d_plus))
    minus_error = float(np.linalg.norm(d_minus))
    vector_sq = np.sum(n / (2.0 * n + 1.0) * d_plus ** 2) + np.sum((n + 1.0) / (2.0 * n + 1.0) * d_minus ** 2)
    return {
        "plus_error": plus_error,
        "minus_error": minus_error,
        "vector_error": math.sqrt(float(vector_sq)),
    }

