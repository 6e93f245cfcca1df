"""
Root conftest: puts the repository root on sys.path so ZS_engine and utils import
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pytest

from ZS_engine.config.precision import configure_precision
from utils.util import set_log_level


@pytest.fixture(autouse=True)
def default_precision():
    """Every test starts at 15 digits with info logging."""
    configure_precision(15)
    set_log_level("info")
    yield
    configure_precision(15)
