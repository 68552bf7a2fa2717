"""
Truncated spectral representations of scalar and vector fields on the sphere.
"""
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from src.core.exceptions import DomainError
from src.spectral.harmonics import degree_of_index, flat_index, num_coeffs


def _check_table(coeffs: np.ndarray, N: int, what: str) -> np.ndarray:
    arr = np.asarray(coeffs, dtype=float)
    if arr.shape != (num_coeffs(N),):
        raise DomainError(f"{what}: expected {num_coeffs(N)} coefficients for degree {N}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{what}: coefficients must be finite")
    return arr


def per_degree(sequence, N: int) -> np.ndarray:
    """Expand a per-degree sequence (length >= N + 1) to the flat layout."""
    seq = np.asarray(sequence, dtype=float)
    if seq.shape[0] < N + 1:
        raise DomainError(f"sequence covers degree {seq.shape[0] - 1}, need {N}")
    return seq[degree_of_index(N)]


@dataclass(frozen=True)
class SpectralScalarField:
    """Coefficients f_{n,k} of sum f_{n,k} Y_{n,k}, 0 <= n <= max_degree."""

    max_degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.max_degree < 0:
            raise DomainError("max_degree must be non-negative")
        object.__setattr__(self, "coeffs", _check_table(self.coeffs, self.max_degree, "scalar field"))

    @classmethod
    def zeros(cls, N: int) -> "SpectralScalarField":
        return cls(N, np.zeros(num_coeffs(N)))

    @classmethod
    def basis(cls, n: int, k: int, N: int = None) -> "SpectralScalarField":
        N = n if N is None else N
        coeffs = np.zeros(num_coeffs(N))
        coeffs[flat_index(n, k)] = 1.0
        return cls(N, coeffs)

    def coeff(self, n: int, k: int) -> float:
        return float(self.coeffs[flat_index(n, k)])

    @property
    def degrees(self) -> np.ndarray:
        return degree_of_index(self.max_degree)

    def truncate(self, N: int) -> "SpectralScalarField":
        """Restrict to degree N, zero-padding when N exceeds max_degree."""
        out = np.zeros(num_coeffs(N))
        keep = min(num_coeffs(N), self.coeffs.shape[0])
        out[:keep] = self.coeffs[:keep]
        return SpectralScalarField(N, out)

    def scale_per_degree(self, multipliers) -> "SpectralScalarField":
        return SpectralScalarField(self.max_degree, self.coeffs * per_degree(multipliers, self.max_degree))

    def __add__(self, other: "SpectralScalarField") -> "SpectralScalarField":
        N = max(self.max_degree, other.max_degree)
        return SpectralScalarField(N, self.truncate(N).coeffs + other.truncate(N).coeffs)

    def __sub__(self, other: "SpectralScalarField") -> "SpectralScalarField":
        return self + (-1.0) * other

    def __mul__(self, scalar: float) -> "SpectralScalarField":
        return SpectralScalarField(self.max_degree, float(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralScalarField":
        return (-1.0) * self

    def to_json(self) -> dict:
        rows = []
        for n in range(self.max_degree + 1):
            rows.append(self.coeffs[n * n: (n + 1) * (n + 1)].tolist())
        return {"max_degree": self.max_degree, "coeffs": rows}

    @classmethod
    def from_json(cls, payload: dict) -> "SpectralScalarField":
        N = int(payload["max_degree"])
        rows = payload["coeffs"]
        if len(rows) != N + 1 or any(len(row) != 2 * n + 1 for n, row in enumerate(rows)):
            raise DomainError("malformed coefficient table")
        return cls(N, np.concatenate([np.asarray(row, dtype=float) for row in rows]))


@dataclass(frozen=True)
class SpectralVectorField:
    """
    Coefficients in the orthogonal basis b+_{n,k} (n >= 1), b-_{n,k} (n >= 0)
    and c_{n,k} (n >= 1). Entries of plus and df at n = 0 are held at zero.
    """

    max_degree: int
    plus: np.ndarray
    minus: np.ndarray
    df: np.ndarray

    def __post_init__(self):
        N = self.max_degree
        plus = _check_table(self.plus, N, "plus coefficients").copy()
        df = _check_table(self.df, N, "df coefficients").copy()
        plus[0] = 0.0
        df[0] = 0.0
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", _check_table(self.minus, N, "minus coefficients"))
        object.__setattr__(self, "df", df)

    @classmethod
    def zeros(cls, N: int) -> "SpectralVectorField":
        z = np.zeros(num_coeffs(N))
        return cls(N, z, z, z)

    @property
    def plus_potential(self) -> SpectralScalarField:
        """f_+ with B_+ f_+ equal to the H_+ leg."""
        return SpectralScalarField(self.max_degree, self.plus)

    @property
    def minus_potential(self) -> SpectralScalarField:
        return SpectralScalarField(self.max_degree, self.minus)

    def leg_energies(self) -> dict:
        """Squared L2 norms of the three orthogonal legs."""
        n = degree_of_index(self.max_degree).astype(float)
        plus_w = n / (2.0 * n + 1.0)
        minus_w = (n + 1.0) / (2.0 * n + 1.0)
        return {
            "plus": float(np.sum(plus_w * self.plus ** 2)),
            "minus": float(np.sum(minus_w * self.minus ** 2)),
            "df": float(np.sum(self.df ** 2)),
        }

    def energy(self) -> float:
        return sum(self.leg_energies().values())

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "plus": SpectralScalarField(self.max_degree, self.plus).to_json()["coeffs"],
            "minus": SpectralScalarField(self.max_degree, self.minus).to_json()["coeffs"],
            "df": SpectralScalarField(self.max_degree, self.df).to_json()["coeffs"],
        }


def sobolev_norm(f: SpectralScalarField, s: float) -> float:
    """sqrt(sum (n + 1/2)^(2s) f_{n,k}^2)."""
    weights = (degree_of_index(f.max_degree) + 0.5) ** (2.0 * s)
    return math.sqrt(float(np.sum(weights * f.coeffs ** 2)))


def zonal_convolve(zonal: Sequence[float], f: SpectralScalarField) -> SpectralScalarField:
    """Convolution with a zonal kernel given by its addition-theorem coefficients."""
    return f.scale_per_degree(zonal)


def laplace_beltrami(f: SpectralScalarField) -> SpectralScalarField:
    n = np.arange(f.max_degree + 1, dtype=float)
    return f.scale_per_degree(-n * (n + 1.0))


def write_field_json(field: Union[SpectralScalarField, SpectralVectorField], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(field.to_json()))
    return path


def read_scalar_json(path: Path) -> SpectralScalarField:
    return SpectralScalarField.from_json(json.loads(Path(path).read_text()))
