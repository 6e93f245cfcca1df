"""
Conformal Models
Funnel charts, sampled conformal factors and heat-invariant reports
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from pydantic import BaseModel, ConfigDict

from ZS_engine.errors import InvalidConformalFactor


class FunnelChart(BaseModel):
    """
    Chart (t, theta) in [-t_lo, t_max] x [0, 2 pi) on a funnel or collar.

    Metric dt^2 + (ell cosh t / 2 pi)^2 dtheta^2, so the circle t = 0 is the
    closed geodesic of length ell. The t-grid includes both endpoints.
    """

    model_config = ConfigDict(frozen=True)

    ell: float
    t_lo: float
    t_max: float
    n_t: int
    n_theta: int

    @classmethod
    def create(cls, ell: float, t_lo: float, t_max: float, n_t: int, n_theta: int, minimum: int = 16) -> "FunnelChart":
        if not (math.isfinite(ell) and ell > 0):
            raise InvalidConformalFactor(f"Chart length ell must be positive, got {ell}")
        if not t_max > -t_lo:
            raise InvalidConformalFactor(f"Empty chart range [{-t_lo}, {t_max}]")
        if n_t < minimum or n_theta < minimum:
            raise InvalidConformalFactor(f"Grid must be at least {minimum} x {minimum}, got {n_t} x {n_theta}")
        if n_t % 2 == 0 or n_theta % 2 == 1:
            # grid doubling keeps every other sample: odd n_t keeps both ends, even n_theta stays periodic
            raise InvalidConformalFactor(f"Need odd n_t and even n_theta, got {n_t} x {n_theta}")
        return cls(ell=float(ell), t_lo=float(t_lo), t_max=float(t_max), n_t=int(n_t), n_theta=int(n_theta))

    @property
    def h_t(self) -> float:
        return (self.t_max + self.t_lo) / (self.n_t - 1)

    @property
    def h_theta(self) -> float:
        return 2.0 * math.pi / self.n_theta

    def t_grid(self) -> np.ndarray:
        return np.linspace(-self.t_lo, self.t_max, self.n_t)

    def theta_grid(self) -> np.ndarray:
        return np.arange(self.n_theta) * self.h_theta

    def circumference_density(self, t: np.ndarray) -> np.ndarray:
        """ell cosh t / 2 pi: the metric coefficient of dtheta."""
        return self.ell * np.cosh(t) / (2.0 * math.pi)

    def coarsened(self) -> "FunnelChart":
        return FunnelChart(
            ell=self.ell,
            t_lo=self.t_lo,
            t_max=self.t_max,
            n_t=(self.n_t + 1) // 2,
            n_theta=self.n_theta // 2,
        )


@dataclass(frozen=True)
class ConformalFactor:
    """Samples phi[i, j] = phi(t_i, theta_j), compactly supported in t <= t_supp."""

    chart: FunnelChart
    phi: np.ndarray
    t_supp: float

    @cached_property
    def support_rows(self) -> tuple[int, int] | None:
        rows = np.nonzero(np.any(self.phi != 0.0, axis=1))[0]
        if rows.size == 0:
            return None
        return int(rows[0]), int(rows[-1])

    def scaled(self, factor: float) -> "ConformalFactor":
        return ConformalFactor(self.chart, _frozen(self.phi * factor), self.t_supp)

    def rotated(self, cells: int) -> "ConformalFactor":
        return ConformalFactor(self.chart, _frozen(np.roll(self.phi, cells, axis=1)), self.t_supp)

    def coarsened(self) -> "ConformalFactor":
        return ConformalFactor(self.chart.coarsened(), _frozen(self.phi[::2, ::2]), self.t_supp)


def _frozen(values: np.ndarray) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


class HeatInvariants(BaseModel):
    a0: float
    a1: float
    a2: float
    quadrature_error_estimate: float
    a0_error: float = 0.0
    a1_error: float = 0.0
    a2_error: float = 0.0


class FinitePartResult(BaseModel):
    value: float
    coefficient_inverse: float
    coefficient_log: float
    coefficient_linear: float
    fit_residual: float
    ladder: list[float]


class JensenReport(BaseModel):
    lhs: float
    rhs: float
    holds: bool
    normalization_area: float
    core_area: float | None = None
