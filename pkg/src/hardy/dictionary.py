"""
Dictionaries of locally supported atoms for D_{+,Sigma}.

A level-n dictionary holds
  - green atoms (K + I/2) S^-1 (G^rho_n(x, .) - G^rho_n(xbar, .)) at the
    level-n nodes whose rho_n-cap lies in Sigma^c, and
  - Wendland atoms Psi_{delta_i}(x', .) at the level-i nodes (i <= n) whose
    delta_i-ball lies in Sigma^c.

Per degree, (K + I/2) S^-1 multiplies by -(n + 1) and the sign-flip law
tau_ptm maps a green atom to -(K - I/2) S^-1 G, a multiplier of -n, and a
Wendland atom to its negative.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional

import numpy as np

from src.config import settings
from src.core.exceptions import DomainError
from src.core.worker_pool import WorkerPool
from src.geometry.domains import SphericalCap, as_points, unit_vector
from src.geometry.points import HierarchicalPointSets, filter_ball_interior, filter_cap_interior
from src.kernels.green import GreenDifferenceAtom, reg_green_coeffs_array
from src.kernels.wendland import WendlandKernel, wendland_coeffs
from src.spectral.fields import SpectralScalarField, per_degree
from src.spectral.harmonics import num_coeffs, ylm_matrix

logger = logging.getLogger(__name__)

DEFAULT_NU = 2.21
DEFAULT_C_BAR = 0.537
CHUNK = 256


class AtomKind(str, Enum):
    GREEN = "green"
    WENDLAND = "wendland"


@dataclass(frozen=True)
class DictionaryAtom:
    """One spanning element; `scale` is rho for green atoms and delta for Wendland atoms."""

    kind: AtomKind
    center: np.ndarray
    scale: float
    level: int
    xbar: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "center", unit_vector(self.center))
        if self.kind is AtomKind.GREEN:
            if self.xbar is None:
                raise DomainError("green atoms need a reference point xbar")
            object.__setattr__(self, "xbar", unit_vector(self.xbar))

    def to_json(self) -> dict:
        payload = {"kind": self.kind.value, "center": self.center.tolist(), "scale": self.scale, "level": self.level}
        if self.xbar is not None:
            payload["xbar"] = self.xbar.tolist()
        return payload


def sign_flip_multipliers(kind: AtomKind, N: int) -> np.ndarray:
    """Per-degree ratio between the tau_ptm image and the atom itself."""
    n = np.arange(N + 1, dtype=float)
    if kind is AtomKind.WENDLAND:
        return -np.ones(N + 1)
    ratio = np.zeros(N + 1)
    ratio[1:] = n[1:] / (n[1:] + 1.0)
    return ratio


def _green_zonal(rho: float, N: int, minus: bool) -> np.ndarray:
    n = np.arange(N + 1, dtype=float)
    factor = -n if minus else -(n + 1.0)
    return factor * reg_green_coeffs_array(rho, N)


def _wendland_zonal(delta: float, N: int, minus: bool) -> np.ndarray:
    coeffs = np.asarray(wendland_coeffs(delta, N).coeffs)
    return -coeffs if minus else coeffs


def atom_scalar_field(atom: DictionaryAtom, N: int) -> SpectralScalarField:
    """Spectral coefficients of the scalar atom in D_{+,Sigma}."""
    return SpectralScalarField(N, _atom_rows([atom], N, minus=False)[0])


def atom_minus_field(atom: DictionaryAtom, N: int) -> SpectralScalarField:
    """tau_ptm image of the atom."""
    return SpectralScalarField(N, _atom_rows([atom], N, minus=True)[0])


def _atom_rows(atoms: List[DictionaryAtom], N: int, minus: bool) -> np.ndarray:
    rows = np.zeros((len(atoms), num_coeffs(N)))
    groups: Dict[tuple, List[int]] = {}
    for index, atom in enumerate(atoms):
        groups.setdefault((atom.kind, atom.scale), []).append(index)

    for (kind, scale), indices in groups.items():
        centers = np.array([atoms[i].center for i in indices])
        if kind is AtomKind.GREEN:
            zonal = per_degree(_green_zonal(scale, N, minus), N)
            xbars = np.array([atoms[i].xbar for i in indices])
            values = ylm_matrix(centers, N) - ylm_matrix(xbars, N)
        else:
            zonal = per_degree(_wendland_zonal(scale, N, minus), N)
            values = ylm_matrix(centers, N)
        rows[indices] = values * zonal[None, :]
    return rows


def vector_atom_field(atom: DictionaryAtom, points) -> np.ndarray:
    """
    B+ of the atom plus B- of its tau_ptm image, in closed form:
    grad G^rho_{x,xbar} for green atoms and -eta Psi_delta(x', .) for Wendland atoms.
    """
    pts = as_points(points)
    if atom.kind is AtomKind.GREEN:
        return GreenDifferenceAtom(atom.center, atom.xbar, atom.scale).gradient(pts)
    values = WendlandKernel(atom.scale).evaluate(atom.center[None, :], np.ones(1), pts)
    return -values[:, None] * pts


@dataclass
class Dictionary:
    """The level-n dictionary for a region Sigma^c, with spectral caches at degree max_degree."""

    sigma_c: SphericalCap
    level: int
    atoms: List[DictionaryAtom]
    xbar: np.ndarray
    max_degree: int
    label: str = ""
    parameters: Dict[str, float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def num_green(self) -> int:
        return sum(1 for atom in self.atoms if atom.kind is AtomKind.GREEN)

    @property
    def num_wendland(self) -> int:
        return len(self.atoms) - self.num_green

    def _rows(self, minus: bool) -> np.ndarray:
        if not self.atoms:
            return np.zeros((0, num_coeffs(self.max_degree)))
        chunks = [self.atoms[i: i + CHUNK] for i in range(0, len(self.atoms), CHUNK)]
        blocks = WorkerPool(settings.max_workers).map(
            lambda chunk: _atom_rows(chunk, self.max_degree, minus), chunks
        )
        return np.vstack(blocks)

    @cached_property
    def plus_matrix(self) -> np.ndarray:
        """Atom coefficients, one row per atom."""
        return self._rows(minus=False)

    @cached_property
    def minus_matrix(self) -> np.ndarray:
        """Coefficients of the tau_ptm images, one row per atom."""
        return self._rows(minus=True)

    def combine(self, coefficients, minus: bool = False) -> SpectralScalarField:
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape != (len(self.atoms),):
            raise DomainError(f"expected {len(self.atoms)} coefficients, got {coefficients.shape}")
        if not self.atoms:
            return SpectralScalarField.zeros(self.max_degree)
        matrix = self.minus_matrix if minus else self.plus_matrix
        return SpectralScalarField(self.max_degree, coefficients @ matrix)

    def summary(self) -> dict:
        return {
            "label": self.label,
            "level": self.level,
            "atoms": len(self.atoms),
            "green": self.num_green,
            "wendland": self.num_wendland,
            **self.parameters,
        }


def level_parameters(hierarchy: HierarchicalPointSets, n: int, nu: float, c_bar: float) -> Dict[str, float]:
    """h_n (level-n mesh width), delta_n = nu h_n and rho_n = (h_n / c_bar)^2."""
    h = hierarchy.mesh_widths[n - 1]
    return {"h": h, "delta": nu * h, "rho": (h / c_bar) ** 2}


def build_dictionary(
    sigma_c: SphericalCap,
    n: int,
    hierarchy: HierarchicalPointSets,
    xbar=None,
    nu: float = DEFAULT_NU,
    c_bar: float = DEFAULT_C_BAR,
    max_degree: Optional[int] = None,
    label: str = "",
) -> Dictionary:
    """Assemble the level-n dictionary for Sigma^c = sigma_c."""
    if not 1 <= n <= len(hierarchy):
        raise DomainError(f"level {n} outside hierarchy of {len(hierarchy)} levels")
    if nu <= 1.0:
        raise DomainError(f"nu must exceed 1, got {nu}")
    N = settings.default_degree if max_degree is None else max_degree
    xbar = sigma_c.center if xbar is None else unit_vector(xbar)

    atoms: List[DictionaryAtom] = []
    for i in range(1, n + 1):
        delta = level_parameters(hierarchy, i, nu, c_bar)["delta"]
        kept = filter_ball_interior(hierarchy[i - 1], sigma_c, delta)
        atoms.extend(DictionaryAtom(AtomKind.WENDLAND, x, delta, i) for x in kept.points)

    params = level_parameters(hierarchy, n, nu, c_bar)
    rho = params["rho"]
    if rho >= 2.0:
        raise DomainError(f"rho_n = {rho:.4g} is not a valid cap radius; lower h_1 or raise c_bar")
    green_nodes = filter_cap_interior(hierarchy[n - 1], sigma_c, rho).points
    green_nodes = green_nodes[np.linalg.norm(green_nodes - xbar, axis=1) > 1e-12]
    if green_nodes.shape[0] and not bool(sigma_c.contains_cap(xbar[None, :], rho)[0]):
        raise DomainError(f"xbar violates the cap condition: C_rho(xbar) with rho={rho:.4g} is not inside Sigma^c")
    atoms.extend(DictionaryAtom(AtomKind.GREEN, x, rho, n, xbar) for x in green_nodes)

    dictionary = Dictionary(sigma_c, n, atoms, xbar, N, label, params)
    logger.info(
        f"Dictionary {label or 'custom'} level {n}: {len(atoms)} atoms "
        f"({dictionary.num_green} green, {dictionary.num_wendland} wendland), "
        f"delta={params['delta']:.4f} rho={rho:.4f}"
    )
    return dictionary


def single_atom_dictionary(atom: DictionaryAtom, sigma_c: SphericalCap, max_degree: int) -> Dictionary:
    """A one-element dictionary, mainly for diagnostics."""
    xbar = atom.xbar if atom.xbar is not None else sigma_c.center
    return Dictionary(sigma_c, atom.level, [atom], xbar, max_degree, "single")


def envelope(n: int, h: float, s: float = 2.25, C: float = 0.01, eta: float = 0.15) -> float:
    """C (eta^n + h^s)."""
    return C * (eta ** n + math.pow(h, s))
