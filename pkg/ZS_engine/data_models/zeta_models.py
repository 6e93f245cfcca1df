"""
Zeta Models
Zeta evaluations, resonance sets, determinant constants and zero/length records
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Any, Literal
from pydantic import BaseModel, ConfigDict, field_validator

from ZS_engine.errors import InvalidLength, MalformedInput


Convention = Literal["oriented", "unoriented"]


@dataclass(frozen=True)
class ZetaEvaluation:
    """
    log Z(s) from a truncated Euler product.

    - value: mpmath number at working precision
    - truncation_error_bound: k-tail plus length-tail bound
    - heuristic: set when evaluated below the default abscissa
    """

    s: complex
    value: Any
    truncation_error_bound: float
    l_max: float
    k_max: int
    convention: Convention
    abscissa: float
    heuristic: bool = False

    def as_complex(self) -> complex:
        return complex(self.value)


class DeterminantParams(BaseModel):
    """Free constants F, G of D(s) = e^{F s(s-1) + G} Z(s) Z_inf(s)"""

    model_config = ConfigDict(frozen=True)

    F: float = 0.0
    G: float = 0.0

    @field_validator("F", "G")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("determinant constants must be finite")
        return value

    @classmethod
    def sarnak(cls, chi: int) -> "DeterminantParams":
        """F = chi, G = -chi E, which cancels the constant of the large-s expansion."""
        from ZS_engine.kernels.special_functions import sarnak_constant_E

        return cls(F=float(chi), G=-chi * float(sarnak_constant_E()))


class ResonanceSet:
    """
    Multiset of complex points with positive integer multiplicities.

    Points closer than `merge_tolerance` are merged on insert (multiplicities add).
    """

    def __init__(
        self,
        merge_tolerance: float = 1e-10,
        truncation_radius: float | None = None,
        physical: bool = False,
    ):
        self.merge_tolerance = merge_tolerance
        self.truncation_radius = truncation_radius
        self.physical = physical
        self._points: list[list[Any]] = []

    def add(self, zeta: complex, multiplicity: int = 1) -> None:
        if int(multiplicity) != multiplicity or multiplicity < 1:
            raise InvalidLength(f"Multiplicity must be a positive integer, got {multiplicity}")
        zeta = complex(zeta)
        for entry in self._points:
            if abs(entry[0] - zeta) <= self.merge_tolerance:
                entry[1] += int(multiplicity)
                return
        self._points.append([zeta, int(multiplicity)])

    @property
    def points(self) -> list[tuple[complex, int]]:
        """Points sorted by (|zeta|, Re, Im) so sums have a fixed order."""
        ordered = sorted(self._points, key=lambda e: (round(abs(e[0]), 12), e[0].real, e[0].imag))
        return [(z, m) for z, m in ordered]

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self._points)

    def counting(self, radius: float) -> int:
        return sum(m for z, m in self._points if abs(z) <= radius)

    def truncate(self, radius: float) -> "ResonanceSet":
        result = ResonanceSet(self.merge_tolerance, truncation_radius=radius, physical=self.physical)
        for z, m in self.points:
            if abs(z) <= radius:
                result.add(z, m)
        return result

    def without_origin(self) -> tuple["ResonanceSet", int]:
        """Copy with the point 0 removed, plus the removed multiplicity."""
        result = ResonanceSet(self.merge_tolerance, self.truncation_radius, self.physical)
        removed = 0
        for z, m in self.points:
            if abs(z) <= self.merge_tolerance:
                removed += m
            else:
                result.add(z, m)
        return result, removed

    def to_records(self) -> list[dict[str, float | int]]:
        return [{"re": z.real, "im": z.imag, "m": m} for z, m in self.points]

    @classmethod
    def from_records(cls, records: list[dict[str, Any]], merge_tolerance: float = 1e-10) -> "ResonanceSet":
        result = cls(merge_tolerance)
        for index, record in enumerate(records):
            try:
                result.add(complex(float(record["re"]), float(record["im"])), int(record.get("m", 1)))
            except (KeyError, TypeError, ValueError) as e:
                raise MalformedInput(f"[{index}]", str(e))
        return result

    def __len__(self) -> int:
        return len(self._points)

    def __contains__(self, zeta: complex) -> bool:
        return any(cmath.isclose(z, zeta, abs_tol=self.merge_tolerance) for z, _ in self._points)


@dataclass(frozen=True)
class ZeroLocation:
    location: complex
    multiplicity: int


@dataclass(frozen=True)
class ExtractedLength:
    length: float
    multiplicity: float
    error_estimate: float
    fractional: bool = False


@dataclass
class HuberResult:
    lengths: list[ExtractedLength] = field(default_factory=list)
    exhausted: bool = False


class ExpansionCoefficients(BaseModel):
    """
    Large-s expansion of log Z_inf in w = s(s-1):
    -chi [constant + wlogw * w log w + log * log w + linear * w] + sum tail[l-1] w^{-l}
    """

    model_config = ConfigDict(frozen=True)

    chi: int
    constant: float
    wlogw: float = -0.5
    log: float = -1.0 / 6.0
    linear: float = 1.5
    tail: tuple[float, ...] = ()


@dataclass(frozen=True)
class HadamardEvaluation:
    """log of a genus-two Hadamard product with its truncation bound; value is an mpmath number above double precision"""

    value: Any
    tail_bound: float
    excluded_origin: int = 0

    def as_complex(self) -> complex:
        return complex(self.value)
