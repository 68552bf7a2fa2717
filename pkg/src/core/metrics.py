"""
Prometheus metrics for experiment runs.

Each run owns a private registry; nothing is exported over HTTP. The text
exposition is written next to the run artifacts when metrics are enabled.
"""
import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, write_to_textfile

logger = logging.getLogger(__name__)


class RunMetrics:
    """Level timings, dictionary sizes and fit counts for one run."""

    def __init__(self):
        self.registry = CollectorRegistry()
        self.level_seconds = Histogram(
            "hardy_level_seconds",
            "Wall-clock seconds per convergence level",
            ["sigma"],
            registry=self.registry,
            buckets=(0.1, 0.5, 1, 5, 10, 30, 60, 300, 900, 3600),
        )
        self.dictionary_atoms = Gauge(
            "hardy_dictionary_atoms",
            "Number of atoms in the level dictionary",
            ["sigma", "level"],
            registry=self.registry,
        )
        self.fits_total = Counter("hardy_fits_total", "Regularized fits solved", registry=self.registry)
        self.timings: Dict[str, float] = {}

    @contextmanager
    def time_level(self, sigma: str, level: int) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - start
            self.level_seconds.labels(sigma=sigma).observe(elapsed)
            self.timings[f"{sigma}:{level}"] = elapsed

    def record_dictionary(self, sigma: str, level: int, atoms: int) -> None:
        self.dictionary_atoms.labels(sigma=sigma, level=str(level)).set(atoms)

    def record_fits(self, count: int) -> None:
        self.fits_total.inc(count)

    def write(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_to_textfile(str(path), self.registry)
        logger.debug(f"Metrics written to {path}")
        return path
