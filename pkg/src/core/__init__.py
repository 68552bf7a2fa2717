"""Core services: errors, solvers, thread pool, metrics and run artifacts.

The convergence engine lives in src.core.convergence_engine and is imported
from there; it depends on the numerical packages, which depend on this one.
"""

from .exceptions import (
    ConfigurationError,
    ConvergenceError,
    DomainError,
    HardySBFError,
    IllConditionedError,
    MeshTooCoarseError,
    NumericalError,
)
from .linalg import cholesky_with_jitter, spd_solve
from .metrics import RunMetrics
from .reporting import CONVERGENCE_COLUMNS, ConvergenceWriter, write_json, write_rows, write_table
from .worker_pool import WorkerPool, parallel_map

__all__ = [
    "ConfigurationError",
    "ConvergenceError",
    "DomainError",
    "HardySBFError",
    "IllConditionedError",
    "MeshTooCoarseError",
    "NumericalError",
    "cholesky_with_jitter",
    "spd_solve",
    "RunMetrics",
    "CONVERGENCE_COLUMNS",
    "ConvergenceWriter",
    "write_json",
    "write_rows",
    "write_table",
    "WorkerPool",
    "parallel_map",
]
