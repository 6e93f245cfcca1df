"""
Data Models Package for the ZetaSurf engine
Defines surfaces, spectra, zeta evaluations, conformal factors and reports
"""

# Surface Models
from .surface_models import (
    MoebiusMap,
    PantsSpec,
    SurfaceModel,
    SurfaceDescription,
    ValidationReport,
)

# Spectrum Models
from .spectrum_models import (
    GeodesicClass,
    EnumerationCertificate,
    LengthSpectrum,
    CountingFit,
)

# Zeta Models
from .zeta_models import (
    Convention,
    ZetaEvaluation,
    DeterminantParams,
    ResonanceSet,
    ZeroLocation,
    ExtractedLength,
    HuberResult,
    ExpansionCoefficients,
    HadamardEvaluation,
)

# Conformal Models
from .conformal_models import (
    FunnelChart,
    ConformalFactor,
    HeatInvariants,
    FinitePartResult,
    JensenReport,
)

# Report Models
from .report_models import BoundReport, SweepRow, CommandResult

__all__ = [
    # Surface Models
    "MoebiusMap",
    "PantsSpec",
    "SurfaceModel",
    "SurfaceDescription",
    "ValidationReport",
    # Spectrum Models
    "GeodesicClass",
    "EnumerationCertificate",
    "LengthSpectrum",
    "CountingFit",
    # Zeta Models
    "Convention",
    "ZetaEvaluation",
    "DeterminantParams",
    "ResonanceSet",
    "ZeroLocation",
    "ExtractedLength",
    "HuberResult",
    "ExpansionCoefficients",
    "HadamardEvaluation",
    # Conformal Models
    "FunnelChart",
    "ConformalFactor",
    "HeatInvariants",
    "FinitePartResult",
    "JensenReport",
    # Report Models
    "BoundReport",
    "SweepRow",
    "CommandResult",
]
