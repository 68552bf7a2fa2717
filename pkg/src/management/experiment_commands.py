"""
Experiment commands behind the command-line interface. Every command returns
a result dictionary; failures are reported in it rather than raised.
"""
import math
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import numpy as np
import structlog

from src.config import settings
from src.core.convergence_engine import ConvergenceEngine
from src.core.exceptions import ConfigurationError, HardySBFError
from src.core.metrics import RunMetrics
from src.core.reporting import write_json, write_rows, write_table
from src.geometry.points import build_hierarchy, write_points_csv
from src.hardy.bep import BoundedProblem, bep_sweep
from src.hardy.dictionary import build_dictionary
from src.hardy.fitting import error_denominator, select_lambda
from src.hardy.minnorm import minnorm_assemble
from src.hardy.test_field import magnitude_grid, test_field_spectral
from src.management.experiment_config import ExperimentConfig
from src.potentials.hardy import hardy_hodge_decompose
from src.spectral.fields import SpectralScalarField
from src.spectral.transforms import GaussGrid

logger = structlog.get_logger(__name__)

BEP_COLUMNS = ("c", "mu", "tau_norm", "data_error", "rel_error", "active")


def _failure(exc: Exception) -> Dict[str, Any]:
    return {
        "success": False,
        "error": str(exc),
        "exit_code": getattr(exc, "exit_code", 1),
        "timestamp": datetime.utcnow().isoformat(),
    }


def _success(**payload) -> Dict[str, Any]:
    return {"success": True, "timestamp": datetime.utcnow().isoformat(), **payload}


def read_grid_samples(path: Path):
    """
    Vector samples on a Gauss grid: a `# nlat=<int> nlon=<int>` comment line
    followed by `x,y,z,fx,fy,fz` rows in latitude-major order.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"field file not found: {path}")
    header = path.open().readline()
    try:
        params = dict(item.split("=") for item in header.lstrip("#").split())
        grid = GaussGrid(int(params["nlat"]), int(params["nlon"]))
    except (KeyError, ValueError) as exc:
        raise ConfigurationError(f"{path}: expected a '# nlat=<int> nlon=<int>' header") from exc
    table = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    if table.shape != (grid.size, 6):
        raise ConfigurationError(f"{path}: expected {grid.size} rows of 6 columns, got {table.shape}")
    return grid, table[:, 3:6]


class ExperimentCommands:
    """Runs experiments described by an ExperimentConfig and writes their artifacts."""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.out_dir = Path(config.out)

    def _guarded(self, name: str, action: Callable[[], Dict[str, Any]]) -> Dict[str, Any]:
        logger.info("command_started", command=name, out=str(self.out_dir))
        try:
            result = action()
            logger.info("command_finished", command=name)
            return result
        except HardySBFError as exc:
            logger.error("command_failed", command=name, error=str(exc))
            return _failure(exc)
        except Exception as exc:
            logger.error("command_crashed", command=name, error=str(exc), exc_info=True)
            return _failure(exc)

    def gen_points(self) -> Dict[str, Any]:
        """Write the global point hierarchy with its scale statistics."""

        def action():
            cfg = self.config
            hierarchy = build_hierarchy(cfg.count_1, cfg.nmax, gamma=cfg.gamma)
            files = [
                str(write_points_csv(level, self.out_dir / f"points_level_{n}.csv"))
                for n, level in enumerate(hierarchy.levels, start=1)
            ]
            stats = {
                "counts": hierarchy.counts,
                "mesh_widths": hierarchy.mesh_widths,
                "separations": [level.separation for level in hierarchy.levels],
            }
            write_json(stats, self.out_dir / "points.json")
            return _success(files=files, **stats)

        return self._guarded("gen-points", action)

    def convergence(self) -> Dict[str, Any]:
        """Run the level loop for every configured Sigma."""

        def action():
            metrics = RunMetrics()
            run = ConvergenceEngine(self.config, metrics).run()
            if settings.enable_metrics:
                metrics.write(self.out_dir / "metrics.prom")
            return _success(rows=run.rows, timings=run.timings, out=str(self.out_dir))

        return self._guarded("convergence", action)

    def decompose(self, field_path: Optional[Path] = None) -> Dict[str, Any]:
        """Hardy-Hodge split of a sampled field file or of the reference field."""

        def action():
            cfg = self.config
            if field_path is None:
                field = test_field_spectral(cfg.degree, a=cfg.support_a)
                write_table(
                    magnitude_grid(a=cfg.support_a),
                    self.out_dir / "magnitude_grid.csv",
                    ("lat_deg", "lon_deg", "magnitude"),
                )
            else:
                grid, samples = read_grid_samples(field_path)
                field = hardy_hodge_decompose(samples, grid, min(cfg.degree, grid.nlat - 2, (grid.nlon - 3) // 2))
            energies = field.leg_energies()
            payload = {**field.to_json(), "energies": energies, "total_energy": sum(energies.values())}
            write_json(payload, self.out_dir / "decomposition.json")
            return _success(energies=energies, max_degree=field.max_degree)

        return self._guarded("decompose", action)

    def _level_fit(self):
        cfg = self.config
        label, cap = cfg.regions()[0]
        field = test_field_spectral(cfg.degree, a=cfg.support_a)
        hierarchy = build_hierarchy(cfg.count_1, cfg.nmax, gamma=cfg.gamma)
        dictionary = build_dictionary(
            cap, cfg.nmax, hierarchy, nu=cfg.nu, c_bar=cfg.c_bar, max_degree=cfg.degree, label=label
        )
        denominator = error_denominator(field.plus_potential, field.minus_potential, cfg.s)
        return field, dictionary, denominator

    def minnorm(self) -> Dict[str, Any]:
        """Min-norm field for the best level-nmax fit of the first configured Sigma."""

        def action():
            cfg = self.config
            field, dictionary, denominator = self._level_fit()
            fit = select_lambda(field.plus_potential, dictionary, cfg.lambdas, cfg.s, denominator)
            assembled = minnorm_assemble(fit, dictionary, cfg.boundary_points, cfg.neumann_order)
            payload = {"fit": fit.to_json(), "dictionary": dictionary.summary(), "diagnostics": assembled.diagnostics}
            write_json(payload, self.out_dir / "minnorm.json")
            return _success(diagnostics=assembled.diagnostics)

        return self._guarded("minnorm", action)

    def bep(self) -> Dict[str, Any]:
        """Sweep the bound c of the bounded extremal problem on noisy data."""

        def action():
            cfg = self.config
            field, dictionary, denominator = self._level_fit()
            f_plus = field.plus_potential
            noise = cfg.rng().standard_normal(f_plus.coeffs.shape[0])
            scale = cfg.noise * float(np.linalg.norm(f_plus.coeffs)) / math.sqrt(noise.shape[0])
            f_e = SpectralScalarField(f_plus.max_degree, f_plus.coeffs + scale * noise)

            free = BoundedProblem(f_e, dictionary, cfg.s).solve(0.0)
            reference = free.extras["tau_norm"] or 1.0
            bounds = np.geomspace(1e-3 * reference, 2.0 * reference, cfg.bep_points)
            rows = [
                {
                    "c": float(c),
                    "mu": r.extras["mu"],
                    "tau_norm": r.extras["tau_norm"],
                    "data_error": r.l2_error,
                    "rel_error": r.l2_error / denominator,
                    "active": int(r.extras["active"]),
                }
                for c, r in zip(bounds, bep_sweep(f_e, dictionary, bounds, cfg.s))
            ]
            write_rows(rows, self.out_dir / "bep.csv", BEP_COLUMNS)
            return _success(rows=rows, dictionary=dictionary.summary())

        return self._guarded("bep", action)
