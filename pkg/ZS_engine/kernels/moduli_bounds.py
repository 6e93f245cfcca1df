"""
Moduli bounds
The epsilon_R systole bound from -log Z(1), the single-step Bers collar
inequality and the properness sweep over the uniform pants family
"""

import math
from concurrent.futures import ThreadPoolExecutor

import mpmath

from ZS_engine.config.precision import working_dps
from ZS_engine.data_models.report_models import BoundReport, SweepRow
from ZS_engine.data_models.spectrum_models import LengthSpectrum
from ZS_engine.data_models.surface_models import PantsSpec, SurfaceModel
from ZS_engine.data_models.zeta_models import Convention, ZetaEvaluation
from ZS_engine.errors import DomainError, InvalidR, RangeExceeded
from ZS_engine.kernels.length_spectrum import enumerate_spectrum, systole
from ZS_engine.kernels.surface_model import build_pants
from ZS_engine.kernels.zeta_det import log_zeta, log_zeta_cylinder
from utils.util import log_debug, log_info


PANTS_AREA = 2.0 * math.pi


def epsilon_R(R: float) -> float:
    """
    eps_R = -1/2 log(1 - e^{-R}): every closed geodesic is at least this long
    when -log Z(1) <= R.

    Raises:
        InvalidR: If R is not positive
    """
    if not (R > 0):
        raise InvalidR(f"R must be positive, got {R}")
    if math.isinf(R):
        return 0.0
    return -0.5 * math.log1p(-math.exp(-R))


def _zeta_at_one(
    surface: SurfaceModel,
    l_max: float,
    convention: Convention,
    threads: int,
    max_words: int,
) -> tuple[ZetaEvaluation, float]:
    """log Z(1) and the systole; the cylinder uses its closed form."""
    if surface.kind == "cylinder":
        ell = surface.boundary_lengths[0]
        return log_zeta_cylinder(ell, 1.0, convention=convention), ell
    spectrum = enumerate_spectrum(surface, l_max, threads=threads, max_words=max_words)
    return _evaluate_at_one(spectrum, convention), systole(spectrum)


def _evaluate_at_one(spectrum: LengthSpectrum, convention: Convention) -> ZetaEvaluation:
    # s = 1 sits on the default abscissa; the fitted growth exponent certifies it
    return log_zeta(spectrum, 1.0, convention=convention, extended=True)


def _minus_log_z1_exact(evaluation: ZetaEvaluation):
    with mpmath.workdps(working_dps()):
        return -mpmath.re(evaluation.value)


def _minus_log_z1(evaluation: ZetaEvaluation) -> float:
    return float(_minus_log_z1_exact(evaluation))


def systole_bound_check(
    surface: SurfaceModel,
    l_max: float,
    convention: Convention = "oriented",
    threads: int = 1,
    max_words: int = 2_000_000,
    relative_tolerance: float = 1e-12,
) -> BoundReport:
    """
    With R = -log Z(1), check eps_R <= systole.

    Raises:
        Propagates enumeration and zeta errors
    """
    evaluation, shortest = _zeta_at_one(surface, l_max, convention, threads, max_words)
    R = _minus_log_z1_exact(evaluation)
    report = BoundReport.create(
        "systole_lower_bound",
        epsilon_R(float(R)),
        shortest,
        context={
            "kind": surface.kind,
            "boundary_lengths": list(surface.boundary_lengths),
            "R": R,
            "truncation_error_bound": evaluation.truncation_error_bound,
        },
        relative_tolerance=relative_tolerance,
        heuristic=evaluation.heuristic,
    )
    log_debug("Bounds", f"eps_R = {report.lhs:.12g} <= systole {report.rhs:.12g}: {report.holds}")
    return report


def zeta_bound_check(
    surface: SurfaceModel,
    l_max: float,
    convention: Convention = "oriented",
    threads: int = 1,
    max_words: int = 2_000_000,
    relative_tolerance: float = 1e-12,
) -> BoundReport:
    """0 <= -log Z(1): every Euler factor at s = 1 lies in (0, 1)."""
    evaluation, _ = _zeta_at_one(surface, l_max, convention, threads, max_words)
    minus_log_z1 = _minus_log_z1_exact(evaluation)
    return BoundReport.create(
        "minus_log_z1_nonnegative",
        0.0,
        float(minus_log_z1),
        context={
            "kind": surface.kind,
            "boundary_lengths": list(surface.boundary_lengths),
            "minus_log_z1": minus_log_z1,
            "truncation_error_bound": evaluation.truncation_error_bound,
        },
        relative_tolerance=relative_tolerance,
        heuristic=evaluation.heuristic,
    )


def bers_curve_bound_check(pants: PantsSpec, t: float, relative_tolerance: float = 1e-12) -> BoundReport:
    """
    Single collar step: with L = l(boundary) and the collar of width t of area
    sinh(t) L embedded in the pants (area 2 pi),

        cosh^2(t) L^2 = L^2 + (sinh(t) L)^2 <= L^2 + (2 pi)^2

    Raises:
        DomainError: If t is negative or not finite
        RangeExceeded: If sinh(t) L > 2 pi
    """
    if not (math.isfinite(t) and t >= 0):
        raise DomainError(f"Collar width t must be finite and >= 0, got {t}")
    total = sum(pants.lengths())
    collar_area = math.sinh(t) * total
    if collar_area > PANTS_AREA:
        raise RangeExceeded(
            f"Collar area sinh({t:g}) * {total:g} = {collar_area:.6g} exceeds the pants area 2 pi"
        )
    lhs = math.cosh(t) ** 2 * total**2
    return BoundReport.create(
        "bers_curve",
        lhs,
        total**2 + PANTS_AREA**2,
        context={
            "lengths": list(pants.lengths()),
            "t": t,
            "collar_area": collar_area,
            "area_margin": PANTS_AREA**2 - collar_area**2,
            "identity_residual": lhs - (total**2 + collar_area**2),
        },
        relative_tolerance=relative_tolerance,
    )


def properness_sweep(
    grid: list[float],
    cutoff_factor: float = 3.0,
    convention: Convention = "oriented",
    threads: int = 1,
    max_words: int = 2_000_000,
) -> list[SweepRow]:
    """
    Systole and -log Z(1) along the uniform pants (l, l, l).

    Spectra up to cutoff_factor * l are enumerated concurrently; zeta values
    are computed serially in grid order.
    """
    if not grid:
        raise DomainError("Sweep grid is empty")
    if not all(math.isfinite(ell) and ell > 0 for ell in grid):
        raise DomainError(f"Sweep lengths must be positive, got {grid}")

    def spectrum_for(ell: float) -> LengthSpectrum:
        surface = build_pants(PantsSpec.create(ell, ell, ell))
        return enumerate_spectrum(surface, cutoff_factor * ell, max_words=max_words)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        spectra = list(pool.map(spectrum_for, grid))

    rows = []
    for ell, spectrum in zip(grid, spectra):
        evaluation = _evaluate_at_one(spectrum, convention)
        rows.append(
            SweepRow(
                ell=ell,
                systole=systole(spectrum),
                minus_log_z1=_minus_log_z1(evaluation),
                truncation_error_bound=evaluation.truncation_error_bound,
                heuristic=evaluation.heuristic,
            )
        )
    log_info("Bounds", f"Swept {len(rows)} uniform pants from l = {grid[0]:g} to {grid[-1]:g}")
    return rows
