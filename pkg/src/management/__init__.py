"""Experiment configuration and the commands behind manage.py."""

from .experiment_config import SIGMA_CAPS, ExperimentConfig, sigma_cap
from .experiment_commands import ExperimentCommands, read_grid_samples

__all__ = [
    "SIGMA_CAPS",
    "ExperimentConfig",
    "sigma_cap",
    "ExperimentCommands",
    "read_grid_samples",
]
