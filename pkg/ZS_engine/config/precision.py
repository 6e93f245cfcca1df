"""
Working precision shared by the mpmath kernels
"""

_PRECISION = {"digits": 15, "guard": 10}


def configure_precision(digits: int, guard_digits: int = 10) -> None:
    """Install the global precision target (decimal digits). Called once per run."""
    if digits < 15:
        raise ValueError(f"precision must be at least 15 digits, got {digits}")
    _PRECISION["digits"] = int(digits)
    _PRECISION["guard"] = int(guard_digits)


def target_digits() -> int:
    return _PRECISION["digits"]


def working_dps() -> int:
    """Decimal places used inside mpmath evaluations (target + guard digits)."""
    return _PRECISION["digits"] + _PRECISION["guard"]
