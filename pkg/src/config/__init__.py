"""Configuration module for hardy-sbf."""

from .settings import Settings, settings, get_settings, get_output_dir
from .logging import configure_logging

__all__ = [
    "Settings",
    "settings",
    "get_settings",
    "get_output_dir",
    "configure_logging",
]
