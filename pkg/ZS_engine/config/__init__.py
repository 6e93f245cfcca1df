"""
Configuration and persistence for the ZetaSurf engine
"""

from .run_config import RunConfig, DEFAULT_CONFIG_PATH, PRECISION_ENV_VAR
from .precision import configure_precision, target_digits, working_dps
from .output_store import OutputStore

__all__ = [
    "RunConfig",
    "DEFAULT_CONFIG_PATH",
    "PRECISION_ENV_VAR",
    "configure_precision",
    "target_digits",
    "working_dps",
    "OutputStore",
]
