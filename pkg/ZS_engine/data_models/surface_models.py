"""
Surface Models
Isometry generators, surface presentations and the JSON surface description
"""

import math
from typing import Literal
from pydantic import BaseModel, ConfigDict, Field

from ZS_engine.errors import InvalidLength, InvalidMatrix


# ============================================================================
# Isometries
# ============================================================================


class MoebiusMap(BaseModel):
    """Real 2x2 matrix of unit determinant acting on the upper half plane"""

    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    d: float

    @classmethod
    def create(cls, a: float, b: float, c: float, d: float) -> "MoebiusMap":
        """
        Normalize a matrix with positive determinant to unit determinant.

        Raises:
            InvalidMatrix: If an entry is not finite or the determinant is not positive
        """
        entries = (float(a), float(b), float(c), float(d))
        if not all(math.isfinite(x) for x in entries):
            raise InvalidMatrix(f"Matrix entries must be finite, got {entries}")
        det = entries[0] * entries[3] - entries[1] * entries[2]
        if not det > 0:
            raise InvalidMatrix(f"Matrix must have positive determinant, got {det:.15g}")
        scale = math.sqrt(det)
        return cls(a=entries[0] / scale, b=entries[1] / scale, c=entries[2] / scale, d=entries[3] / scale)

    @classmethod
    def diagonal(cls, factor: float) -> "MoebiusMap":
        return cls(a=factor, b=0.0, c=0.0, d=1.0 / factor)

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def determinant(self) -> float:
        return self.a * self.d - self.b * self.c

    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(a=self.d, b=-self.b, c=-self.c, d=self.a)

    def is_hyperbolic(self, tolerance: float = 0.0) -> bool:
        return abs(self.trace) > 2.0 + tolerance

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap(
            a=self.a * other.a + self.b * other.c,
            b=self.a * other.b + self.b * other.d,
            c=self.c * other.a + self.d * other.c,
            d=self.c * other.b + self.d * other.d,
        )


# ============================================================================
# Surfaces
# ============================================================================


class PantsSpec(BaseModel):
    """Boundary geodesic lengths of a hyperbolic pair of pants"""

    model_config = ConfigDict(frozen=True)

    l1: float
    l2: float
    l3: float

    @classmethod
    def create(cls, l1: float, l2: float, l3: float) -> "PantsSpec":
        for name, value in (("l1", l1), ("l2", l2), ("l3", l3)):
            if not (math.isfinite(value) and value > 0):
                raise InvalidLength(f"Pants boundary length {name} must be positive and finite, got {value}")
        return cls(l1=float(l1), l2=float(l2), l3=float(l3))

    def lengths(self) -> tuple[float, float, float]:
        return (self.l1, self.l2, self.l3)


class SurfaceModel(BaseModel):
    """Free isometry-group presentation of a convex co-compact surface"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["cylinder", "pants", "generators"]
    generators: tuple[MoebiusMap, ...]
    genus: int
    funnel_count: int
    boundary_lengths: tuple[float, ...]
    chi: int
    boundary_words: tuple[str, ...] = ()

    @classmethod
    def create(
        cls,
        kind: Literal["cylinder", "pants", "generators"],
        generators: list[MoebiusMap],
        genus: int,
        funnel_count: int,
        boundary_lengths: list[float],
        boundary_words: list[str] | None = None,
    ) -> "SurfaceModel":
        """
        Assemble a surface, deriving chi = 2 - 2h - M.

        Raises:
            InvalidLength: If the boundary lengths do not match the funnel count or are not positive
        """
        if genus < 0 or funnel_count < 1:
            raise InvalidLength(f"Signature needs genus >= 0 and at least one funnel, got ({genus}, {funnel_count})")
        if len(boundary_lengths) != funnel_count:
            raise InvalidLength(
                f"Expected {funnel_count} boundary lengths, got {len(boundary_lengths)}"
            )
        for value in boundary_lengths:
            if not (math.isfinite(value) and value > 0):
                raise InvalidLength(f"Boundary lengths must be positive and finite, got {value}")
        return cls(
            kind=kind,
            generators=tuple(generators),
            genus=genus,
            funnel_count=funnel_count,
            boundary_lengths=tuple(float(x) for x in boundary_lengths),
            chi=2 - 2 * genus - funnel_count,
            boundary_words=tuple(boundary_words or ()),
        )

    @property
    def rank(self) -> int:
        return len(self.generators)


class ValidationReport(BaseModel):
    valid: bool
    depth: int
    words_checked: int
    min_length: float
    min_length_word: str
    # smallest translation length per letter among words of length <= 2
    min_rate: float
    min_rate_word: str


# ============================================================================
# JSON surface description
# ============================================================================


class SurfaceDescription(BaseModel):
    """On-disk surface format; field names are fixed."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["cylinder", "pants", "generators"]
    lengths: list[float] = Field(default_factory=list)
    matrices: list[list[float]] = Field(default_factory=list)
    genus: int | None = None
    funnels: int | None = None
