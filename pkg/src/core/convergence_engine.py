"""
Convergence engine: runs the level loop of the reference experiment for each
Sigma choice, flushing one CSV row per level and a manifest at the end.
"""
import logging
import time
from dataclasses import dataclass, field
from datetime import datetime
from importlib import metadata
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Optional

from src.core.metrics import RunMetrics
from src.core.reporting import ConvergenceWriter, write_json
from src.geometry.points import HierarchicalPointSets, build_hierarchy
from src.hardy.dictionary import build_dictionary, envelope
from src.hardy.fitting import error_denominator, select_lambda
from src.hardy.test_field import test_field_spectral
from src.spectral.fields import SpectralVectorField

if TYPE_CHECKING:
    from src.management.experiment_config import ExperimentConfig

logger = logging.getLogger(__name__)


def library_version() -> str:
    try:
        return metadata.version("hardy-sbf")
    except metadata.PackageNotFoundError:
        return "unknown"


@dataclass
class ConvergenceRun:
    rows: List[Dict[str, Any]] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    started_at: str = field(default_factory=lambda: datetime.utcnow().isoformat())


class ConvergenceEngine:
    """Fits the reference field with level-n dictionaries for n = 1..nmax."""

    def __init__(self, config: "ExperimentConfig", metrics: Optional[RunMetrics] = None):
        self.config = config
        self.metrics = metrics or RunMetrics()
        self.out_dir = Path(config.out)
        self.hierarchy: Optional[HierarchicalPointSets] = None
        self.target: Optional[SpectralVectorField] = None

    def prepare(self) -> None:
        """Build the global hierarchy and the spectral target once per run."""
        cfg = self.config
        start = time.perf_counter()
        self.hierarchy = build_hierarchy(cfg.count_1, cfg.nmax, gamma=cfg.gamma)
        logger.info(f"Hierarchy ready: counts={self.hierarchy.counts} in {time.perf_counter() - start:.1f}s")

        start = time.perf_counter()
        self.target = test_field_spectral(cfg.degree, a=cfg.support_a)
        logger.info(f"Reference field decomposed at degree {cfg.degree} in {time.perf_counter() - start:.1f}s")

    def run(self) -> ConvergenceRun:
        if self.hierarchy is None or self.target is None:
            self.prepare()
        cfg = self.config
        f_plus = self.target.plus_potential
        denominator = error_denominator(f_plus, self.target.minus_potential, cfg.s)
        run = ConvergenceRun()

        with ConvergenceWriter(self.out_dir / "convergence.csv") as writer:
            for label, cap in cfg.regions():
                for n in range(1, cfg.nmax + 1):
                    with self.metrics.time_level(label, n):
                        row = self._run_level(label, cap, n, f_plus, denominator)
                    writer.write(row)
                    run.rows.append(row)
                    logger.info(
                        f"{label} n={n}: {row['num_atoms']} atoms, lambda={row['lambda']:.1e}, "
                        f"relative error {row['rel_error']:.4e} (envelope {row['envelope']:.3e})"
                    )

        run.timings = dict(self.metrics.timings)
        self._write_manifest(run)
        return run

    def _run_level(self, label, cap, n, f_plus, denominator) -> Dict[str, Any]:
        cfg = self.config
        dictionary = build_dictionary(
            cap, n, self.hierarchy, nu=cfg.nu, c_bar=cfg.c_bar, max_degree=cfg.degree, label=label
        )
        self.metrics.record_dictionary(label, n, len(dictionary))
        fit = select_lambda(f_plus, dictionary, cfg.lambdas, cfg.s, denominator)
        self.metrics.record_fits(len(cfg.lambdas))
        params = dictionary.parameters
        return {
            "sigma": label,
            "n": n,
            "h_n": params["h"],
            "num_atoms": len(dictionary),
            "delta_n": params["delta"],
            "rho_n": params["rho"],
            "lambda": fit.lam,
            "rel_error": fit.relative_error,
            "envelope": envelope(n, params["h"], cfg.s),
            "num_green": dictionary.num_green,
            "num_wendland": dictionary.num_wendland,
        }

    def _write_manifest(self, run: ConvergenceRun) -> None:
        cfg = self.config
        manifest = {
            "started_at": run.started_at,
            "finished_at": datetime.utcnow().isoformat(),
            "version": library_version(),
            "config": cfg.model_dump(mode="json"),
            "hierarchy": {
                "counts": self.hierarchy.counts,
                "mesh_widths": self.hierarchy.mesh_widths,
            },
            "level_seconds": run.timings,
        }
        write_json(manifest, self.out_dir / "manifest.json")
        write_json({"rows": run.rows}, self.out_dir / "summary.json")
