"""
Shared argument decoding for the CLI commands
"""

import json
from typing import Any

import numpy as np
import pandas as pd
from pydantic import ValidationError

from ZS_engine.config.run_config import BumpConfig, ChartConfig, RunConfig
from ZS_engine.data_models.conformal_models import ConformalFactor, FunnelChart
from ZS_engine.data_models.spectrum_models import LengthSpectrum
from ZS_engine.data_models.surface_models import SurfaceModel
from ZS_engine.data_models.zeta_models import ZetaEvaluation
from ZS_engine.errors import MalformedInput
from ZS_engine.kernels.conformal_heat import (
    conformal_factor_from_grid,
    funnel_chart,
    gaussian_bump,
    plateau_bump,
)
from ZS_engine.kernels.length_spectrum import enumerate_spectrum
from ZS_engine.kernels.surface_model import load_surface
from ZS_engine.kernels.zeta_det import log_zeta, log_zeta_cylinder
from utils.util import parse_complex


def surface_arg(path: str, config: RunConfig) -> SurfaceModel:
    return load_surface(
        path,
        validation_depth=config.enumeration.validation_depth,
        trace_tolerance=config.tolerances.hyperbolic_trace,
    )


def spectrum_for(surface: SurfaceModel, l_max: float, config: RunConfig, allow_incomplete: bool = False) -> LengthSpectrum:
    return enumerate_spectrum(
        surface,
        l_max,
        threads=config.threads,
        max_words=config.enumeration.max_words,
        depth_slack=config.enumeration.depth_slack,
        allow_incomplete=allow_incomplete,
        length_tolerance=config.tolerances.length_match,
    )


def s_points(args) -> list[complex]:
    """Points from --s values or from --s-grid RE0 RE1 IM0 IM1 NRE NIM (real part outer)."""
    if args.s:
        points = []
        for text in args.s:
            try:
                points.append(parse_complex(text))
            except ValueError:
                raise MalformedInput("--s", f"not a complex number: {text!r}")
        return points

    re0, re1, im0, im1, n_re, n_im = args.s_grid
    if n_re != int(n_re) or n_im != int(n_im) or n_re < 1 or n_im < 1:
        raise MalformedInput("--s-grid", "NRE and NIM must be positive integers")
    real_parts = np.linspace(re0, re1, int(n_re))
    imaginary_parts = np.linspace(im0, im1, int(n_im))
    return [complex(x, y) for x in real_parts for y in imaginary_parts]


class ZetaSource:
    """log Z(s) on a surface: closed form for cylinders, Euler product otherwise."""

    def __init__(self, surface: SurfaceModel, config: RunConfig, l_max: float | None, k_max: int | None, extended: bool):
        self.surface = surface
        self.config = config
        self.k_max = k_max
        self.extended = extended
        self.spectrum = None
        if surface.kind != "cylinder":
            self.spectrum = spectrum_for(surface, l_max or config.zeta.default_lmax, config)

    def evaluate(self, s: complex) -> ZetaEvaluation:
        convention = self.config.zeta_convention
        if self.spectrum is None:
            return log_zeta_cylinder(self.surface.boundary_lengths[0], s, self.k_max, convention)
        return log_zeta(
            self.spectrum,
            s,
            k_max=self.k_max,
            convention=convention,
            extended=self.extended,
            abscissa=self.config.zeta.convergence_abscissa,
        )


def _read_json(path: str) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise MalformedInput("<json>", f"line {e.lineno} column {e.colno}: {e.msg}")
    except OSError as e:
        raise MalformedInput("<file>", str(e))
    if not isinstance(raw, dict):
        raise MalformedInput("<root>", "expected a JSON object")
    return raw


def _validated(model, raw: dict[str, Any], prefix: str = ""):
    try:
        return model.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise MalformedInput(prefix + field, first["msg"])


def load_chart(path: str) -> tuple[FunnelChart, BumpConfig | None]:
    """
    Chart description {"ell", "t_lo", "t_max", "n_t", "n_theta"} with an
    optional inline "bump" section.
    """
    raw = _read_json(path)
    bump_raw = raw.pop("bump", None)
    chart_config = _validated(ChartConfig, raw)
    chart = funnel_chart(chart_config.ell, chart_config.t_lo, chart_config.t_max, chart_config.n_t, chart_config.n_theta)
    bump = _validated(BumpConfig, bump_raw, "bump.") if bump_raw is not None else None
    return chart, bump


def load_phi(path: str, chart: FunnelChart, smoothness_bound: float) -> ConformalFactor:
    """phi samples as a headerless CSV of n_t rows and n_theta columns."""
    try:
        frame = pd.read_csv(path, header=None, dtype=float)
    except (OSError, ValueError) as e:
        raise MalformedInput("phi", str(e))
    return conformal_factor_from_grid(chart, frame.to_numpy(), smoothness_bound=smoothness_bound)


def bump_factor(chart: FunnelChart, bump: BumpConfig, smoothness_bound: float) -> ConformalFactor:
    if bump.kind == "plateau":
        return plateau_bump(chart, bump.amplitude, bump.center, bump.width, bump.edge, smoothness_bound)
    return gaussian_bump(
        chart,
        bump.amplitude,
        bump.center,
        bump.width,
        bump.mode,
        bump.phase,
        bump.modulation,
        smoothness_bound,
    )
