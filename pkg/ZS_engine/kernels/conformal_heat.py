"""
Conformal heat invariants
Laplacian and curvature of a conformal perturbation g = e^{2 phi} tau on a
funnel chart, the relative heat invariants, the Polyakov integral, finite-part
(0-)integrals and the Jensen and compactness bound checks
"""

import math
from typing import Callable

import numpy as np
from scipy.integrate import quad, simpson, trapezoid

from ZS_engine.data_models.conformal_models import (
    ConformalFactor,
    FinitePartResult,
    FunnelChart,
    HeatInvariants,
    JensenReport,
)
from ZS_engine.data_models.report_models import BoundReport
from ZS_engine.data_models.surface_models import SurfaceModel
from ZS_engine.errors import (
    DomainError,
    ExpansionMismatch,
    InvalidConformalFactor,
    QuadratureFailure,
    SupportTouchesBoundary,
)
from utils.util import log_debug, log_warning


# phi must vanish on this many t-rows at each end of the chart
BOUNDARY_ROWS = 4
DEFAULT_SMOOTHNESS_BOUND = 1e4
EPS = np.finfo(float).eps

ChartFunction = Callable[[float, np.ndarray], np.ndarray]


# ============================================================================
# Builders
# ============================================================================


def funnel_chart(ell: float, t_lo: float, t_max: float, n_t: int, n_theta: int) -> FunnelChart:
    return FunnelChart.create(ell, t_lo, t_max, n_t, n_theta)


def _check_support(cf: ConformalFactor) -> None:
    rows = cf.support_rows
    if rows is None:
        return
    first, last = rows
    if first < BOUNDARY_ROWS or last > cf.chart.n_t - 1 - BOUNDARY_ROWS:
        raise SupportTouchesBoundary(
            f"phi is nonzero on rows {first}..{last}; the {BOUNDARY_ROWS} outermost rows at each end must vanish"
        )


def conformal_factor_from_grid(
    chart: FunnelChart,
    phi: np.ndarray,
    t_supp: float | None = None,
    smoothness_bound: float = DEFAULT_SMOOTHNESS_BOUND,
) -> ConformalFactor:
    """
    Validate samples phi[i, j] = phi(t_i, theta_j) into a ConformalFactor.

    Args:
        chart: Grid chart
        phi: Array of shape (n_t, n_theta)
        t_supp: Support bound; defaults to the last nonzero row
        smoothness_bound: Bound on the discrete second derivatives

    Raises:
        InvalidConformalFactor: Wrong shape, non-finite samples, nonzero samples past t_supp, or too rough
        SupportTouchesBoundary: If phi does not vanish near the chart ends
    """
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (chart.n_t, chart.n_theta):
        raise InvalidConformalFactor(f"phi grid has shape {phi.shape}, chart needs {(chart.n_t, chart.n_theta)}")
    if not np.all(np.isfinite(phi)):
        raise InvalidConformalFactor("phi contains non-finite samples")

    t = chart.t_grid()
    nonzero_rows = np.nonzero(np.any(phi != 0.0, axis=1))[0]
    if t_supp is None:
        t_supp = float(t[nonzero_rows[-1]]) if nonzero_rows.size else float(-chart.t_lo)
    if not t_supp < chart.t_max:
        raise InvalidConformalFactor(f"Support bound {t_supp:g} must lie below t_max = {chart.t_max:g}")
    if np.any(phi[t > t_supp] != 0.0):
        raise InvalidConformalFactor(f"phi has nonzero samples beyond t_supp = {t_supp:g}")

    cf = ConformalFactor(chart=chart, phi=_frozen_copy(phi), t_supp=float(t_supp))
    _check_support(cf)

    roughness = float(
        np.max(np.abs(np.diff(phi, n=2, axis=0))) / chart.h_t**2
        + np.max(np.abs(np.roll(phi, -1, axis=1) - 2 * phi + np.roll(phi, 1, axis=1))) / chart.h_theta**2
    )
    if roughness > smoothness_bound:
        raise InvalidConformalFactor(f"Discrete second derivatives {roughness:.3g} exceed the bound {smoothness_bound:g}")
    return cf


def _frozen_copy(values: np.ndarray) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


def gaussian_profile(
    amplitude: float,
    center: float,
    width: float,
    mode: int = 0,
    phase: float = 0.0,
    modulation: float = 0.0,
) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """phi(t, theta) = A exp(-x^2/(1-x^2)) (1 + kappa cos(m theta + theta0)), x = (t - t0)/w, zero for |x| >= 1."""
    if not width > 0:
        raise InvalidConformalFactor(f"Bump width must be positive, got {width}")

    def profile(t, theta):
        x = (np.asarray(t, dtype=float) - center) / width
        inside = np.abs(x) < 1.0
        safe = np.where(inside, x, 0.0)
        radial = np.where(inside, np.exp(-safe * safe / (1.0 - safe * safe)), 0.0)
        angular = 1.0 + modulation * np.cos(mode * np.asarray(theta, dtype=float) + phase)
        return amplitude * radial * angular

    return profile


def _smooth_step(u: np.ndarray) -> np.ndarray:
    # C-infinity step: 0 for u <= 0, 1 for u >= 1
    u = np.clip(u, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        left = np.where(u > 0, np.exp(-1.0 / np.where(u > 0, u, 1.0)), 0.0)
        right = np.where(u < 1, np.exp(-1.0 / np.where(u < 1, 1.0 - u, 1.0)), 0.0)
    return left / (left + right)


def plateau_profile(amplitude: float, center: float, width: float, edge: float) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Constant A on [t0 - w + edge, t0 + w - edge], smooth steps down to 0 at t0 +- w."""
    if not 0 < edge <= width:
        raise InvalidConformalFactor(f"Plateau edge must lie in (0, width], got {edge}")

    def profile(t, theta):
        t = np.asarray(t, dtype=float)
        rise = _smooth_step((t - (center - width)) / edge)
        fall = _smooth_step(((center + width) - t) / edge)
        return amplitude * rise * fall * np.ones_like(np.asarray(theta, dtype=float))

    return profile


def _sample(chart: FunnelChart, profile, t_supp: float, smoothness_bound: float) -> ConformalFactor:
    t, theta = np.meshgrid(chart.t_grid(), chart.theta_grid(), indexing="ij")
    return conformal_factor_from_grid(chart, profile(t, theta), t_supp, smoothness_bound)


def gaussian_bump(
    chart: FunnelChart,
    amplitude: float,
    center: float,
    width: float,
    mode: int = 0,
    phase: float = 0.0,
    modulation: float = 0.0,
    smoothness_bound: float = DEFAULT_SMOOTHNESS_BOUND,
) -> ConformalFactor:
    profile = gaussian_profile(amplitude, center, width, mode, phase, modulation)
    return _sample(chart, profile, center + width, smoothness_bound)


def plateau_bump(
    chart: FunnelChart,
    amplitude: float,
    center: float,
    width: float,
    edge: float,
    smoothness_bound: float = DEFAULT_SMOOTHNESS_BOUND,
) -> ConformalFactor:
    profile = plateau_profile(amplitude, center, width, edge)
    return _sample(chart, profile, center + width, smoothness_bound)


# ============================================================================
# Differential operators
# ============================================================================


def _apply_laplacian(chart: FunnelChart, field: np.ndarray) -> np.ndarray:
    """
    Positive Laplacian -(1/A) d_t(A d_t f) - (1/A^2) d_theta^2 f, A = ell cosh t / 2 pi,
    in flux form with A at the half steps. The end rows are left at 0.
    """
    t = chart.t_grid()
    h = chart.h_t
    density = chart.circumference_density(t)
    half = chart.circumference_density(t[:-1] + h / 2.0)

    flux = half[:, None] * np.diff(field, axis=0) / h
    result = np.zeros_like(field)
    result[1:-1] = -np.diff(flux, axis=0) / (h * density[1:-1, None])

    angular = (np.roll(field, -1, axis=1) - 2.0 * field + np.roll(field, 1, axis=1)) / chart.h_theta**2
    result[1:-1] -= angular[1:-1] / density[1:-1, None] ** 2
    return result


def laplacian_tau(cf: ConformalFactor) -> np.ndarray:
    """
    Positive Laplace-Beltrami operator of the hyperbolic funnel metric applied to phi.

    Raises:
        SupportTouchesBoundary: If phi does not vanish on the outermost rows
    """
    _check_support(cf)
    return _apply_laplacian(cf.chart, cf.phi)


def curvature_g(cf: ConformalFactor) -> np.ndarray:
    """K_g = e^{-2 phi}(Delta_tau phi - 1)"""
    return np.exp(-2.0 * cf.phi) * (laplacian_tau(cf) - 1.0)


def gradient_norm_sq(cf: ConformalFactor) -> np.ndarray:
    """|grad phi|^2 = (d_t phi)^2 + (d_theta phi)^2 / A^2 by central differences."""
    chart = cf.chart
    phi_t = np.gradient(cf.phi, chart.h_t, axis=0, edge_order=2)
    phi_theta = (np.roll(cf.phi, -1, axis=1) - np.roll(cf.phi, 1, axis=1)) / (2.0 * chart.h_theta)
    density = chart.circumference_density(chart.t_grid())
    return phi_t**2 + (phi_theta / density[:, None]) ** 2


# ============================================================================
# Quadrature
# ============================================================================


def _ring_integrals(chart: FunnelChart, values: np.ndarray) -> np.ndarray:
    # trapezoid in theta (periodic) times the circumference density
    return values.sum(axis=1) * chart.h_theta * chart.circumference_density(chart.t_grid())


def _integrate(chart: FunnelChart, values: np.ndarray) -> float:
    """Area integral: composite Simpson in t, periodic trapezoid in theta."""
    return float(simpson(_ring_integrals(chart, values), x=chart.t_grid()))


def _integrate_trapezoid(chart: FunnelChart, values: np.ndarray) -> float:
    return float(trapezoid(_ring_integrals(chart, values), x=chart.t_grid()))


def _invariant_integrands(cf: ConformalFactor) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    weight = np.exp(2.0 * cf.phi)
    curvature = np.exp(-2.0 * cf.phi) * (_apply_laplacian(cf.chart, cf.phi) - 1.0)
    area = weight - 1.0
    first = weight * curvature + 1.0
    second = weight * curvature**2 - 1.0
    magnitude = np.abs(weight * curvature) + 1.0
    return area, first, second, magnitude


def _raw_invariants(cf: ConformalFactor) -> tuple[float, float, float, float]:
    area, first, second, magnitude = _invariant_integrands(cf)
    a0 = _integrate(cf.chart, area) / (4.0 * math.pi)
    # trapezoid weights keep the discrete divergence exactly telescoping
    a1 = _integrate_trapezoid(cf.chart, first) / (12.0 * math.pi)
    a2 = _integrate(cf.chart, second) / (60.0 * math.pi)
    rounding = 64.0 * EPS * _integrate_trapezoid(cf.chart, magnitude) / (12.0 * math.pi)
    return a0, a1, a2, rounding


def heat_invariants(cf: ConformalFactor) -> HeatInvariants:
    """
    Relative heat invariants of g = e^{2 phi} tau:

        a0 = (1/4pi)  int (e^{2phi} - 1)
        a1 = (1/12pi) int (e^{2phi} K_g + 1)
        a2 = (1/60pi) int (e^{2phi} K_g^2 - 1)

    Errors come from one grid doubling; a1 also carries a rounding floor.

    Raises:
        SupportTouchesBoundary: If phi does not vanish near the chart ends
        QuadratureFailure: If an invariant is not finite
    """
    _check_support(cf)
    a0, a1, a2, rounding = _raw_invariants(cf)
    c0, c1, c2, _ = _raw_invariants(cf.coarsened())
    values = (a0, a1, a2, c0, c1, c2)
    if not all(math.isfinite(v) for v in values):
        raise QuadratureFailure(f"Non-finite heat invariants {values}")

    a0_error = abs(a0 - c0)
    a1_error = max(abs(a1 - c1), rounding)
    a2_error = abs(a2 - c2)
    log_debug("Heat", f"a0 = {a0:.12g}, a1 = {a1:.3g}, a2 = {a2:.12g}")
    return HeatInvariants(
        a0=a0,
        a1=a1,
        a2=a2,
        quadrature_error_estimate=max(a0_error, a1_error, a2_error),
        a0_error=a0_error,
        a1_error=a1_error,
        a2_error=a2_error,
    )


def heat_invariant_leading_term(cf: ConformalFactor, j: int, c_j: float) -> float:
    """
    Leading term c_j int e^{2phi} K_g Delta_g^{j-2} K_g of a_j, j >= 3, with
    Delta_g = e^{-2phi} Delta_tau.
    """
    if j < 3:
        raise DomainError(f"Only the leading term of a_j for j >= 3 is exposed, got j = {j}")
    curvature = curvature_g(cf)
    inverse_weight = np.exp(-2.0 * cf.phi)
    iterate = curvature
    for _ in range(j - 2):
        iterate = inverse_weight * _apply_laplacian(cf.chart, iterate)
    value = c_j * _integrate(cf.chart, np.exp(2.0 * cf.phi) * curvature * iterate)
    if not math.isfinite(value):
        raise QuadratureFailure(f"Leading term of a_{j} is not finite")
    return value


def polyakov_logD1(cf: ConformalFactor) -> float:
    """log D_{g,tau}(1) = -(1/6pi) [1/2 int |grad phi|^2 - int phi]"""
    _check_support(cf)
    gradient = _integrate(cf.chart, gradient_norm_sq(cf))
    mean = _integrate(cf.chart, np.asarray(cf.phi))
    value = -(0.5 * gradient - mean) / (6.0 * math.pi)
    if not math.isfinite(value):
        raise QuadratureFailure("Polyakov integral is not finite")
    return value


# ============================================================================
# Finite parts and bounds
# ============================================================================


def finite_part_integral(
    f: ChartFunction,
    ell: float,
    ladder: tuple[int, int] = (2, 16),
    n_theta: int = 64,
    tolerance: float = 1e-6,
) -> FinitePartResult:
    """
    Hadamard finite part of int f over a funnel of length ell, with defining
    function rho = e^{-t}.

    The truncated integrals I(eps) = int_0^{ln 1/eps} ell cosh t <f>_theta dt at
    eps_i = 2^{-i} are fitted by c_{-1}/eps + c_log log eps + c_0 + c_1 eps;
    c_0 is the finite part.

    Args:
        f: f(t, theta_array) -> values
        ell: Funnel boundary length
        ladder: (i_min, i_max) of the eps ladder
        n_theta: Trapezoid points for the theta mean
        tolerance: Largest accepted relative fit residual

    Raises:
        ExpansionMismatch: If the fit residual exceeds the tolerance
    """
    if not ell > 0:
        raise DomainError(f"Funnel length must be positive, got {ell}")
    theta = np.arange(n_theta) * (2.0 * math.pi / n_theta)

    def radial(t: float) -> float:
        return ell * math.cosh(t) * float(np.mean(f(t, theta)))

    exponents = np.arange(ladder[0], ladder[1] + 1)
    epsilons = 2.0 ** (-exponents.astype(float))
    truncated = []
    running, start = 0.0, 0.0
    for eps in epsilons:
        stop = math.log(1.0 / eps)
        piece, _ = quad(radial, start, stop, epsabs=0.0, epsrel=1e-13, limit=200)
        running += piece
        truncated.append(running)
        start = stop
    truncated = np.array(truncated)

    design = np.column_stack([1.0 / epsilons, np.log(epsilons), np.ones_like(epsilons), epsilons])
    scale = np.max(np.abs(design), axis=0)
    solution, *_ = np.linalg.lstsq(design / scale, truncated, rcond=None)
    coefficients = solution / scale
    residual = float(np.max(np.abs(design @ coefficients - truncated)) / max(1.0, float(np.max(np.abs(truncated)))))
    if residual > tolerance:
        raise ExpansionMismatch(f"Finite-part fit residual {residual:.3g} exceeds {tolerance:g}")
    return FinitePartResult(
        value=float(coefficients[2]),
        coefficient_inverse=float(coefficients[0]),
        coefficient_log=float(coefficients[1]),
        coefficient_linear=float(coefficients[3]),
        fit_residual=residual,
        ladder=[float(e) for e in epsilons],
    )


def zero_volume(
    surface: SurfaceModel,
    ladder: tuple[int, int] = (2, 16),
    tolerance: float = 1e-6,
) -> float:
    """0-volume: core area -2 pi chi (Gauss-Bonnet) plus the finite-part area of every funnel."""
    funnels = 0.0
    for ell in surface.boundary_lengths:
        funnels += finite_part_integral(lambda t, theta: np.ones_like(theta), ell, ladder, tolerance).value
    return -2.0 * math.pi * surface.chi + funnels


def _support_band_area(cf: ConformalFactor) -> float:
    rows = cf.support_rows
    if rows is None:
        return 0.0
    indicator = np.zeros_like(cf.phi)
    indicator[rows[0] : rows[1] + 1] = 1.0
    return _integrate(cf.chart, indicator)


def jensen_bound_check(
    cf: ConformalFactor,
    invariants: HeatInvariants | None = None,
    relative_tolerance: float = 1e-12,
) -> JensenReport:
    """
    Jensen's inequality on the smallest chart band containing the support,
    with its area A as normalization:

        (1/A) int phi <= 1/2 log(1 + 4 pi a0 / A)
    """
    invariants = invariants or heat_invariants(cf)
    area = _support_band_area(cf)
    if area == 0.0:
        return JensenReport(lhs=0.0, rhs=0.0, holds=True, normalization_area=0.0)
    lhs = _integrate(cf.chart, np.asarray(cf.phi)) / area
    rhs = 0.5 * math.log1p(4.0 * math.pi * invariants.a0 / area)
    holds = lhs <= rhs + relative_tolerance * max(1.0, abs(lhs), abs(rhs))
    if not holds:
        log_warning("Jensen", f"lhs {lhs:.15g} exceeds rhs {rhs:.15g}")
    return JensenReport(lhs=lhs, rhs=rhs, holds=holds, normalization_area=area)


def compactness_bounds(cf: ConformalFactor, c: float, relative_tolerance: float = 1e-12) -> list[BoundReport]:
    """
    Bound chain under log D(1) >= c, with A the support band area:

        6 pi c <= int phi <= (A/2) log(1 + 4 pi a0 / A)
        int |grad phi|^2 <= A log(1 + 4 pi a0 / A) - 12 pi c
    """
    invariants = heat_invariants(cf)
    log_d1 = polyakov_logD1(cf)
    area = _support_band_area(cf)
    integral = _integrate(cf.chart, np.asarray(cf.phi))
    gradient = _integrate(cf.chart, gradient_norm_sq(cf))
    entropy = area * math.log1p(4.0 * math.pi * invariants.a0 / area) if area > 0 else 0.0
    context = {"c": c, "log_D1": log_d1, "premise_holds": log_d1 >= c, "support_band_area": area}
    return [
        BoundReport.create("log_D1_lower", c, log_d1, context, relative_tolerance),
        BoundReport.create("integral_phi_lower", 6.0 * math.pi * c, integral, context, relative_tolerance),
        BoundReport.create("integral_phi_upper", integral, 0.5 * entropy, context, relative_tolerance),
        BoundReport.create("gradient_energy_upper", gradient, entropy - 12.0 * math.pi * c, context, relative_tolerance),
    ]
