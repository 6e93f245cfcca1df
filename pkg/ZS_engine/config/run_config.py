"""
Run configuration
Validated view of configs/default_config.yaml plus CLI and environment overrides
"""

import os
from typing import Any, Literal, Mapping
from pydantic import BaseModel, Field, ValidationError, field_validator

from ZS_engine.errors import MalformedInput
from utils.util import load_config


DEFAULT_CONFIG_PATH = "configs/default_config.yaml"
PRECISION_ENV_VAR = "ZS_PRECISION"


class ToleranceConfig(BaseModel):
    hyperbolic_trace: float = 1e-12
    length_match: float = 1e-12
    merge: float = 1e-10
    zero_location: float = 1e-10
    fit_residual: float = 1e-6
    bound_relative: float = 1e-12

    @field_validator("*")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("tolerances must be positive")
        return value


class EnumerationConfig(BaseModel):
    max_words: int = Field(default=2_000_000, ge=1)
    depth_slack: int = Field(default=1, ge=0)
    validation_depth: int = Field(default=4, ge=1)


class ZetaConfig(BaseModel):
    convergence_abscissa: float = 1.0
    guard_digits: int = Field(default=10, ge=0)
    default_lmax: float = Field(default=8.0, gt=0)


class BumpConfig(BaseModel):
    """Parametric conformal factor on a funnel chart"""

    kind: Literal["gaussian", "plateau"] = "gaussian"
    amplitude: float = 0.1
    center: float = 1.0
    width: float = 0.8
    mode: int = Field(default=0, ge=0)
    phase: float = 0.0
    modulation: float = 0.0
    edge: float = 0.1


class ChartConfig(BaseModel):
    ell: float = Field(default=1.0, gt=0)
    t_lo: float = 1.0
    t_max: float = 3.0
    n_t: int = Field(default=257, ge=16)
    n_theta: int = Field(default=64, ge=16)


class HeatConfig(BaseModel):
    smoothness_bound: float = Field(default=1e4, gt=0)
    bumps: dict[str, BumpConfig] = Field(default_factory=lambda: {"example": BumpConfig()})
    epsilon_ladder: tuple[int, int] = (2, 16)


class SweepConfig(BaseModel):
    length_cutoff_factor: float = Field(default=3.0, gt=1)


class RunConfig(BaseModel):
    """All knobs of a run. Loaded once, never mutated afterwards."""

    precision: int = Field(default=15, ge=15)
    threads: int = Field(default=1, ge=1)
    output_dir: str = "outputs"
    zeta_convention: Literal["oriented", "unoriented"] = "oriented"
    log_level: Literal["quiet", "info", "debug"] = "info"
    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)
    enumeration: EnumerationConfig = Field(default_factory=EnumerationConfig)
    zeta: ZetaConfig = Field(default_factory=ZetaConfig)
    heat: HeatConfig = Field(default_factory=HeatConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)

    @classmethod
    def create(
        cls,
        config_path: str | None = None,
        overrides: Mapping[str, Any] | None = None,
        environ: Mapping[str, str] | None = None,
    ) -> "RunConfig":
        """
        Build the run configuration.

        Precedence: ZS_PRECISION environment variable > overrides (CLI flags)
        > YAML file > model defaults.

        Args:
            config_path: YAML file; None uses model defaults only
            overrides: Values from the command line; None entries are ignored
            environ: Environment mapping (default: os.environ)

        Raises:
            MalformedInput: If a value fails validation
        """
        # 1. Load YAML
        raw: dict[str, Any] = load_config(config_path) if config_path else {}

        # 2. CLI overrides
        for key, value in (overrides or {}).items():
            if value is not None:
                raw[key] = value

        # 3. Environment wins for precision
        env = os.environ if environ is None else environ
        env_precision = env.get(PRECISION_ENV_VAR)
        if env_precision:
            try:
                raw["precision"] = int(env_precision)
            except ValueError:
                raise MalformedInput(PRECISION_ENV_VAR, f"not an integer: {env_precision!r}")

        try:
            return cls.model_validate(raw)
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(part) for part in first["loc"]) or "<root>"
            raise MalformedInput(field, first["msg"])
