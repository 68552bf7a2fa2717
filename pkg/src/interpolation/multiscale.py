"""
Wendland kernel interpolation and the multiscale residual-correction scheme.

Level i interpolates the residual of levels 1..i-1 on its own node set with
kernel scale delta_i = nu * h_i.
"""
import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Union

import numpy as np

from src.core.exceptions import DomainError, IllConditionedError
from src.core.linalg import spd_solve
from src.geometry.domains import Domain, as_points
from src.geometry.points import HierarchicalPointSets, PointSet, filter_ball_interior
from src.kernels.wendland import WendlandKernel, WendlandSpectrum
from src.spectral.fields import SpectralScalarField, per_degree
from src.spectral.harmonics import ylm_matrix
from src.spectral.transforms import synthesize

logger = logging.getLogger(__name__)

Sampler = Callable[[np.ndarray], np.ndarray]

REPRODUCTION_TOL = 1e-9
DUPLICATE_DISTANCE = 1e-12


@dataclass(frozen=True)
class InterpolationModel:
    """sum_i alpha_i Psi_delta(x_i, .)."""

    nodes: np.ndarray
    delta: float
    alphas: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float).reshape(-1, 3)
        alphas = np.asarray(self.alphas, dtype=float).reshape(-1)
        if nodes.shape[0] != alphas.shape[0]:
            raise DomainError(f"{nodes.shape[0]} nodes but {alphas.shape[0]} coefficients")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "alphas", alphas)

    @property
    def kernel(self) -> WendlandKernel:
        return WendlandKernel(self.delta)

    def __len__(self) -> int:
        return self.nodes.shape[0]

    def evaluate(self, points) -> np.ndarray:
        return self.kernel.evaluate(self.nodes, self.alphas, points)

    def to_json(self) -> dict:
        return {"delta": self.delta, "nodes": self.nodes.tolist(), "alphas": self.alphas.tolist()}

    @classmethod
    def from_json(cls, payload: dict) -> "InterpolationModel":
        return cls(np.asarray(payload["nodes"], dtype=float), float(payload["delta"]), np.asarray(payload["alphas"]))


@dataclass(frozen=True)
class MultiscaleModel:
    levels: List[InterpolationModel] = field(default_factory=list)

    def evaluate(self, points) -> np.ndarray:
        out = np.zeros(as_points(points).shape[0])
        for level in self.levels:
            out += level.evaluate(points)
        return out

    def partial(self, count: int) -> "MultiscaleModel":
        """The model made of the first `count` levels."""
        return MultiscaleModel(self.levels[:count])

    def to_json(self) -> dict:
        return {"levels": [level.to_json() for level in self.levels]}

    @classmethod
    def from_json(cls, payload: dict) -> "MultiscaleModel":
        return cls([InterpolationModel.from_json(level) for level in payload["levels"]])

    def write_json(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_json()))
        return path


def _points_of(X: Union[PointSet, np.ndarray]) -> np.ndarray:
    return X.points if isinstance(X, PointSet) else as_points(X)


def interpolate(X: Union[PointSet, np.ndarray], delta: float, values) -> InterpolationModel:
    """
    Solve [Psi_delta(x_i, x_j)] alpha = values.

    Raises DomainError for repeated nodes and IllConditionedError when the
    jitter ladder fails or the residual exceeds 1e-9 ||values||.
    """
    point_set = X if isinstance(X, PointSet) else PointSet(X)
    nodes = point_set.points
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.shape[0] != nodes.shape[0]:
        raise DomainError(f"{nodes.shape[0]} nodes but {values.shape[0]} values")
    kernel = WendlandKernel(delta)
    if nodes.shape[0] == 0:
        return InterpolationModel(nodes, delta, values)
    if nodes.shape[0] > 1 and point_set.tree.query_pairs(DUPLICATE_DISTANCE):
        raise DomainError("interpolation nodes must be pairwise distinct")

    matrix = kernel.matrix(nodes)
    try:
        alphas = spd_solve(matrix, values, what=f"Wendland matrix (delta={delta:.4g}, {nodes.shape[0]} nodes)")
    except IllConditionedError as exc:
        raise IllConditionedError(f"ill-conditioned node set: {exc}") from exc

    scale = float(np.linalg.norm(values))
    residual = float(np.linalg.norm(matrix @ alphas - values))
    if not np.isfinite(residual) or residual > REPRODUCTION_TOL * scale:
        raise IllConditionedError(
            f"ill-conditioned node set: residual {residual:.2e} exceeds {REPRODUCTION_TOL:.0e} * ||values|| = {REPRODUCTION_TOL * scale:.2e}"
        )
    return InterpolationModel(nodes, delta, alphas)


def multiscale_fit(
    f_sampler: Sampler,
    hierarchy: HierarchicalPointSets,
    nu: float,
    levels: Optional[int] = None,
    sigma_c: Optional[Domain] = None,
) -> MultiscaleModel:
    """
    Residual correction over the hierarchy: e_0 = f, s_i = I_i(e_{i-1}),
    e_i = e_{i-1} - s_i. With sigma_c, level nodes are filtered so that the
    kernel supports stay inside it.
    """
    if nu <= 1.0:
        raise DomainError(f"nu must exceed 1, got {nu}")
    levels = len(hierarchy) if levels is None else levels
    widths = hierarchy.mesh_widths

    model = MultiscaleModel([])
    for i in range(levels):
        delta = nu * widths[i]
        X = hierarchy[i]
        if sigma_c is not None:
            X = filter_ball_interior(X, sigma_c, delta)
        residual = f_sampler(X.points) - model.evaluate(X.points)
        step = interpolate(X, delta, residual)
        model = MultiscaleModel(model.levels + [step])
        logger.info(f"Multiscale level {i + 1}: {len(X)} nodes, delta={delta:.4f}")
    return model


def model_spectral(model: Union[InterpolationModel, MultiscaleModel], N: int) -> SpectralScalarField:
    """Band-limited projection: coefficient (n,k) is Psi_n sum_i alpha_i Y_{n,k}(x_i)."""
    levels = model.levels if isinstance(model, MultiscaleModel) else [model]
    coeffs = np.zeros((N + 1) ** 2)
    for level in levels:
        if len(level) == 0:
            continue
        spectrum = level.kernel.spectrum(N)
        coeffs += per_degree(spectrum.coeffs, N) * (ylm_matrix(level.nodes, N).T @ level.alphas)
    return SpectralScalarField(N, coeffs)


def native_inner_product(f: SpectralScalarField, model: InterpolationModel) -> float:
    """<f, sum alpha_i Psi(x_i, .)>_Psi = sum_i alpha_i f(x_i) for band-limited f, computed spectrally."""
    # the Psi_n factors of the model and of the norm cancel
    projected = ylm_matrix(model.nodes, f.max_degree).T @ model.alphas
    return float(f.coeffs @ projected)


def native_norm(obj: Union[SpectralScalarField, InterpolationModel], spectrum: Optional[WendlandSpectrum] = None) -> float:
    """
    Native-space norm. Fields use sqrt(sum f_{n,k}^2 / Psi_n); interpolation
    models use sqrt(alpha^T K alpha).
    """
    if isinstance(obj, InterpolationModel):
        if len(obj) == 0:
            return 0.0
        return math.sqrt(max(float(obj.alphas @ obj.kernel.matrix(obj.nodes) @ obj.alphas), 0.0))

    if spectrum is None:
        raise DomainError("a spectrum is required for the native norm of a spectral field")
    if spectrum.max_degree < obj.max_degree:
        raise DomainError(f"spectrum covers degree {spectrum.max_degree}, field has degree {obj.max_degree}")
    weights = per_degree(spectrum.coeffs, obj.max_degree)
    nonzero = obj.coeffs != 0.0
    if np.any(nonzero & (weights <= 0.0)):
        raise DomainError("outside native space (truncated)")
    return math.sqrt(float(np.sum(obj.coeffs[nonzero] ** 2 / weights[nonzero])))


def lebesgue_ratio(
    X: Union[PointSet, np.ndarray],
    delta: float,
    f_sampler: Sampler,
    samples: np.ndarray,
) -> float:
    """||I_X f||_inf / ||f||_inf estimated on sample points."""
    nodes = _points_of(X)
    model = interpolate(nodes, delta, f_sampler(nodes))
    denominator = max(float(np.max(np.abs(f_sampler(samples)))), float(np.max(np.abs(f_sampler(nodes)))))
    if denominator == 0.0:
        return 0.0
    return float(np.max(np.abs(model.evaluate(samples)))) / denominator


def l2_error(model: Union[InterpolationModel, MultiscaleModel], f_sampler: Sampler, rule) -> float:
    """L2 distance between f and the model under a cubature rule."""
    diff = f_sampler(rule.nodes) - model.evaluate(rule.nodes)
    return math.sqrt(max(float(rule.weights @ (diff * diff)), 0.0))


def field_sampler(f: SpectralScalarField) -> Sampler:
    return lambda points: synthesize(f, points)
