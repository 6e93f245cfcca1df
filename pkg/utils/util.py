"""
Utility functions for the ZetaSurf system
"""

from typing import Any, Literal

import mpmath
import yaml


LogLevel = Literal["quiet", "info", "debug"]

_LOG_STATE: dict[str, str] = {"level": "info"}
_LEVEL_RANK = {"quiet": 0, "info": 1, "debug": 2}
# significant digits a double can carry
DOUBLE_DIGITS = 17


def load_config(config_path: str) -> dict[str, Any]:
    """Load configuration from a YAML file"""
    with open(config_path, encoding="utf-8") as f:
        config = yaml.safe_load(f)
    return config or {}


def set_log_level(level: LogLevel) -> None:
    if level not in _LEVEL_RANK:
        raise ValueError(f"Invalid log level: {level}")
    _LOG_STATE["level"] = level


def print_green(text: str) -> None:
    if _LEVEL_RANK[_LOG_STATE["level"]] >= 1:
        print(f"\033[92m{text}\033[0m")


def print_yellow(text: str) -> None:
    # warnings are shown unless logging is fully silenced
    if _LEVEL_RANK[_LOG_STATE["level"]] >= 1:
        print(f"\033[93m{text}\033[0m")


def log_info(tag: str, message: str) -> None:
    if _LEVEL_RANK[_LOG_STATE["level"]] >= 1:
        print(f"[{tag}] {message}")


def log_debug(tag: str, message: str) -> None:
    if _LEVEL_RANK[_LOG_STATE["level"]] >= 2:
        print(f"[{tag}] {message}")


def log_warning(tag: str, message: str) -> None:
    print_yellow(f"[{tag}] Warning: {message}")


def format_significant(value: Any, digits: int = 15) -> str:
    """
    Format a real number with up to `digits` significant digits.

    Args:
        value: Number to format; mpmath numbers keep their own precision
        digits: Significant digits (default 15, the CSV convention)

    Returns:
        Formatted string; integers and non-finite values keep their natural form.
        A double never gets more digits than it carries (17).
    """
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return mpmath.nstr(value, digits)
    return format(float(value), f".{min(digits, DOUBLE_DIGITS)}g")


def parse_complex(text: str) -> complex:
    """
    Parse a complex number written as "2", "0.5+14.1j", "-1+3.14159j" or "2j".

    Raises:
        ValueError: If the text is not a complex literal
    """
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    return complex(cleaned)
