"""
Spectrum Models
Primitive geodesic classes and length spectra
"""

from pydantic import BaseModel, ConfigDict


class GeodesicClass(BaseModel):
    """One unoriented primitive conjugacy class"""

    model_config = ConfigDict(frozen=True)

    word: str
    length: float
    primitive: bool = True
    oriented_multiplicity: int = 2


class EnumerationCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    depth: int
    rate_bound: float
    heuristic: bool
    words_visited: int
    budget_hit: bool = False


class LengthSpectrum(BaseModel):
    """Sorted primitive classes up to a cutoff, with a completeness flag"""

    model_config = ConfigDict(frozen=True)

    classes: tuple[GeodesicClass, ...]
    cutoff: float
    complete: bool
    certificate: EnumerationCertificate | None = None
    # free rank of the group; 0 when unknown
    generator_count: int = 0

    @property
    def lengths(self) -> list[float]:
        return [c.length for c in self.classes]

    def multiplicities(self, convention: str = "oriented") -> list[int]:
        """Factor count per class under the zeta convention."""
        if convention == "oriented":
            return [c.oriented_multiplicity for c in self.classes]
        return [1 for _ in self.classes]

    def __len__(self) -> int:
        return len(self.classes)


class CountingFit(BaseModel):
    # smallest C with N(t_i) <= C e^{t_i}
    constant: float
    # least squares N(t) ~ C_delta e^{delta t}
    exponent: float
    exponent_constant: float
    sample_points: int
