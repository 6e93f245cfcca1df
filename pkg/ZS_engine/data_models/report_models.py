"""
Report Models
Bound reports, sweep rows and command results
"""

from dataclasses import dataclass, field
from typing import Any
from pydantic import BaseModel, Field


class BoundReport(BaseModel):
    """An inequality lhs <= rhs evaluated on concrete data"""

    quantity: str
    lhs: float
    rhs: float
    holds: bool
    margin: float = 0.0
    heuristic: bool = False
    context: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def create(
        cls,
        quantity: str,
        lhs: float,
        rhs: float,
        context: dict[str, Any] | None = None,
        relative_tolerance: float = 1e-12,
        heuristic: bool = False,
    ) -> "BoundReport":
        slack = relative_tolerance * max(1.0, abs(lhs), abs(rhs))
        return cls(
            quantity=quantity,
            lhs=float(lhs),
            rhs=float(rhs),
            holds=bool(lhs <= rhs + slack),
            margin=float(rhs - lhs),
            heuristic=heuristic,
            context=context or {},
        )


class SweepRow(BaseModel):
    ell: float
    systole: float
    minus_log_z1: float
    truncation_error_bound: float
    heuristic: bool = False


@dataclass
class CommandResult:
    """
    Outcome of a CLI subcommand.

    - summary: One line for the console
    - outputs: Paths of written files
    """

    summary: str
    outputs: list[str] = field(default_factory=list)
    exit_code: int = 0
