"""
Zeta and determinant
Euler-product evaluation of log Z, the exactly solvable cylinder, the
determinant D(s), Hadamard products over resonance sets and the decay and
large-s checks built on them
"""

import dataclasses
import math

import mpmath
import numpy as np

from ZS_engine.config.precision import target_digits, working_dps
from ZS_engine.data_models.conformal_models import HeatInvariants
from ZS_engine.data_models.spectrum_models import LengthSpectrum
from ZS_engine.data_models.zeta_models import (
    Convention,
    DeterminantParams,
    HadamardEvaluation,
    ResonanceSet,
    ZeroLocation,
    ZetaEvaluation,
)
from ZS_engine.errors import (
    ConvergenceRegionError,
    DomainError,
    EmptySpectrum,
    HadamardOriginError,
    IncompleteSpectrum,
    InvalidLength,
    ZeroOfZeta,
)
from ZS_engine.kernels.length_spectrum import counting_fit, systole
from ZS_engine.kernels.special_functions import log_z_infinity
from utils.util import DOUBLE_DIGITS, log_debug, log_warning


DEFAULT_ABSCISSA = 1.0
# e^{-41.5} < 1e-18: terms beyond this exponent vanish in double precision
DOUBLE_EXPONENT_FLOOR = 41.5


def convention_multiplicity(convention: Convention) -> int:
    return 2 if convention == "oriented" else 1


# ============================================================================
# Euler product
# ============================================================================


def _euler_product_log(lengths, multiplicities, s, k_max: int, floor_exponent):
    """
    sum_i m_i sum_{k=0}^{k_max} log(1 - e^{-(s+k) l_i}), stopping a class once
    Re(s+k) l_i exceeds `floor_exponent` (its terms are below working precision).
    Summation order is fixed by the class order.
    """
    terms = []
    sigma = mpmath.re(s)
    for length, multiplicity in zip(lengths, multiplicities):
        length = mpmath.mpf(length)
        for k in range(k_max + 1):
            if (sigma + k) * length > floor_exponent:
                break
            terms.append(multiplicity * mpmath.log1p(-mpmath.exp(-(s + k) * length)))
    return mpmath.fsum(terms)


def _default_k_max(sigma: float, shortest: float, total_multiplicity: int, digits: int) -> int:
    """Smallest k with e^{-(sigma+k) l0} N / (1 - e^{-l0}) below 10^{-digits}."""
    budget = digits * math.log(10.0) + math.log(total_multiplicity / -math.expm1(-shortest))
    return max(0, math.ceil(budget / shortest - sigma))


def _k_tail_bound(lengths, multiplicities, sigma: float, k_max: int) -> float:
    bound = 0.0
    for length, multiplicity in zip(lengths, multiplicities):
        x = math.exp(-(sigma + k_max + 1) * length)
        bound += multiplicity * x / ((1.0 - x) * -math.expm1(-length))
    return bound


def _length_tail_bound(constant: float, exponent: float, sigma: float, cutoff: float) -> float:
    """
    Classes beyond the cutoff, with N(t) <= C e^{delta t}:
    C sigma/(sigma - delta) e^{(delta - sigma) L} / ((1 - e^{-L})(1 - e^{-sigma L})).
    """
    head = constant * sigma / (sigma - exponent) * math.exp((exponent - sigma) * cutoff)
    return head / (-math.expm1(-cutoff) * -math.expm1(-sigma * cutoff))


def log_zeta(
    ls: LengthSpectrum,
    s: complex,
    k_max: int | None = None,
    convention: Convention = "oriented",
    extended: bool = False,
    abscissa: float = DEFAULT_ABSCISSA,
) -> ZetaEvaluation:
    """
    log Z(s) from the Euler product over the enumerated classes.

    Args:
        ls: Complete length spectrum
        s: Evaluation point, Re(s) above the convergence abscissa
        k_max: Last k of the inner product; default from the precision target
        convention: oriented (classes carry their oriented multiplicity) or unoriented
        extended: Allow abscissa >= Re(s) > fitted growth exponent (result flagged heuristic)
        abscissa: Convergence abscissa of the Euler product

    Returns:
        ZetaEvaluation with k-tail plus length-tail bound

    Raises:
        IncompleteSpectrum: If the spectrum is not complete
        ConvergenceRegionError: If Re(s) is outside the (extended) region
        EmptySpectrum: If no class is below the cutoff
    """
    if not ls.complete:
        raise IncompleteSpectrum(f"Spectrum up to {ls.cutoff:g} is incomplete; log Z would be unbounded in error")
    s = complex(s)
    sigma = s.real
    if sigma <= 0:
        raise ConvergenceRegionError(f"Re(s) = {sigma:g} <= 0")

    fit = counting_fit(ls)
    if ls.generator_count == 1:
        # a single primitive class: the product converges on Re(s) > 0
        abscissa = 0.0
    heuristic = False
    constant, exponent = fit.constant, abscissa
    if sigma <= abscissa:
        if not extended:
            raise ConvergenceRegionError(
                f"Re(s) = {sigma:g} is not above the convergence abscissa {abscissa:g} (use extended evaluation)"
            )
        if sigma <= fit.exponent:
            raise ConvergenceRegionError(
                f"Re(s) = {sigma:g} is not above the fitted growth exponent {fit.exponent:.6g}"
            )
        constant, exponent = fit.exponent_constant, fit.exponent
        heuristic = True
        log_warning("Zeta", f"s = {s} lies in the extended region (growth exponent {fit.exponent:.6g}); heuristic")

    multiplicity = convention_multiplicity(convention)
    lengths = ls.lengths
    multiplicities = ls.multiplicities(convention)
    shortest = systole(ls)
    total = sum(multiplicities)
    digits = target_digits()
    if k_max is None:
        k_max = _default_k_max(sigma, shortest, total, digits)

    with mpmath.workdps(working_dps()):
        floor = mpmath.mpf(mpmath.mp.dps) * mpmath.log(10) + mpmath.log(total) + 5
        value = _euler_product_log(lengths, multiplicities, mpmath.mpc(s), k_max, floor)

    bound = _k_tail_bound(lengths, multiplicities, sigma, k_max)
    if ls.generator_count != 1:
        # rank one: the enumerated class is the only one
        bound += multiplicity / 2 * _length_tail_bound(constant, exponent, sigma, ls.cutoff)
    log_debug("Zeta", f"log Z({s}) with k_max {k_max}, bound {bound:.3g}")
    return ZetaEvaluation(
        s=s,
        value=value,
        truncation_error_bound=bound,
        l_max=ls.cutoff,
        k_max=k_max,
        convention=convention,
        abscissa=exponent if heuristic else abscissa,
        heuristic=heuristic,
    )


def euler_product_sampler(ls: LengthSpectrum, convention: Convention = "oriented", digits: int = 80):
    """
    Real-ray sampler s -> log Z(s) at `digits` decimal places. Each class is
    cut once its terms fall 10^{-digits} below the leading term e^{-s l0}.
    """
    lengths = ls.lengths
    multiplicities = ls.multiplicities(convention)
    shortest = systole(ls)
    total = sum(multiplicities)

    def sample(s):
        with mpmath.workdps(digits):
            s = mpmath.mpf(s)
            floor = s * shortest + digits * mpmath.log(10) + mpmath.log(total) + 5
            k_max = int(mpmath.ceil(floor / shortest))
            return _euler_product_log(lengths, multiplicities, s, k_max, floor)

    return sample


def cylinder_sampler(ell: float, convention: Convention = "oriented", digits: int = 80):
    if not ell > 0:
        raise InvalidLength(f"Cylinder length must be positive, got {ell}")
    multiplicity = convention_multiplicity(convention)

    def sample(s):
        with mpmath.workdps(digits):
            s = mpmath.mpf(s)
            floor = s * ell + digits * mpmath.log(10) + 5
            k_max = int(mpmath.ceil(floor / ell))
            return _euler_product_log([ell], [multiplicity], s, k_max, floor)

    return sample


# ============================================================================
# Hyperbolic cylinder
# ============================================================================


def _on_cylinder_lattice(ell: float, s: complex, tolerance: float = 1e-12) -> bool:
    """s = -k + 2 pi i n / ell with k >= 0, n integer"""
    k = -s.real
    n = s.imag * ell / (2.0 * math.pi)
    return (
        round(k) >= 0
        and abs(k - round(k)) <= tolerance * max(1.0, abs(k))
        and abs(n - round(n)) <= tolerance * max(1.0, abs(n))
    )


def log_zeta_cylinder(
    ell: float,
    s: complex,
    k_max: int | None = None,
    convention: Convention = "oriented",
) -> ZetaEvaluation:
    """
    log Z(s) = m sum_{k>=0} log(1 - e^{-(s+k) ell}) for the cylinder of length
    ell (m = 2 oriented, 1 unoriented). The product is entire; every s is valid.

    Raises:
        InvalidLength: If ell <= 0
        ZeroOfZeta: If s is on the lattice -k + 2 pi i n / ell
    """
    if not (math.isfinite(ell) and ell > 0):
        raise InvalidLength(f"Cylinder length must be positive and finite, got {ell}")
    s = complex(s)
    if _on_cylinder_lattice(ell, s):
        raise ZeroOfZeta(s)
    multiplicity = convention_multiplicity(convention)
    if k_max is None:
        k_max = _default_k_max(s.real, ell, multiplicity, target_digits())

    with mpmath.workdps(working_dps()):
        floor = mpmath.mpf(mpmath.mp.dps) * mpmath.log(10) + mpmath.log(multiplicity) + 5
        value = _euler_product_log([ell], [multiplicity], mpmath.mpc(s), k_max, floor)

    # k_max >= -Re(s) keeps the bound's geometric ratio below one
    bound = _k_tail_bound([ell], [multiplicity], s.real, max(k_max, math.ceil(-s.real)))
    return ZetaEvaluation(
        s=s,
        value=value,
        truncation_error_bound=bound,
        l_max=ell,
        k_max=k_max,
        convention=convention,
        abscissa=-math.inf,
    )


def _inner_range(ell: float, s: np.ndarray) -> np.ndarray:
    k_max = max(0, math.ceil(DOUBLE_EXPONENT_FLOOR / ell - float(np.min(s.real))))
    return np.arange(k_max + 1, dtype=float)


def cylinder_zeta_value(ell: float, s, convention: Convention = "oriented") -> np.ndarray:
    """Z(s) = prod_k (1 - e^{-(s+k) ell})^m, vectorized over s."""
    s = np.asarray(s, dtype=complex)
    k = _inner_range(ell, s)
    with np.errstate(over="ignore"):
        factors = -np.expm1(-np.add.outer(s, k) * ell)
    return np.prod(factors, axis=-1) ** convention_multiplicity(convention)


def cylinder_zeta_log_derivative(ell: float, s, convention: Convention = "oriented") -> np.ndarray:
    """Z'/Z(s) = m ell sum_k 1/(e^{(s+k) ell} - 1), vectorized over s."""
    s = np.asarray(s, dtype=complex)
    k = _inner_range(ell, s)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        terms = 1.0 / np.expm1(np.add.outer(s, k) * ell)
    return convention_multiplicity(convention) * ell * np.sum(terms, axis=-1)


def spectrum_zeta_log_derivative(ls: LengthSpectrum, s, convention: Convention = "oriented") -> np.ndarray:
    """
    Log-derivative of the truncated Euler product over the enumerated classes.
    The truncated product is entire, so this is defined on the whole plane.
    """
    s = np.asarray(s, dtype=complex)
    total = np.zeros_like(s)
    for c, multiplicity in zip(ls.classes, ls.multiplicities(convention)):
        k = _inner_range(c.length, s)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            terms = 1.0 / np.expm1(np.add.outer(s, k) * c.length)
        total = total + multiplicity * c.length * np.sum(terms, axis=-1)
    return total


def cylinder_resonances(
    ell: float,
    k_max: int,
    n_max: int,
    convention: Convention = "oriented",
    merge_tolerance: float = 1e-10,
) -> ResonanceSet:
    """Lattice -k + 2 pi i n / ell, 0 <= k <= k_max, |n| <= n_max."""
    if not (math.isfinite(ell) and ell > 0):
        raise InvalidLength(f"Cylinder length must be positive and finite, got {ell}")
    multiplicity = convention_multiplicity(convention)
    radius = min(k_max, 2.0 * math.pi * n_max / ell)
    rs = ResonanceSet(merge_tolerance, truncation_radius=radius, physical=True)
    for k in range(k_max + 1):
        for n in range(-n_max, n_max + 1):
            rs.add(complex(-k, 2.0 * math.pi * n / ell), multiplicity)
    return rs


def resonance_counting_exponent(rs: ResonanceSet, radii) -> float:
    """Least-squares slope of log N(r) against log r."""
    radii = np.asarray(radii, dtype=float)
    counts = np.array([rs.counting(float(r)) for r in radii], dtype=float)
    if np.any(counts <= 0):
        raise EmptySpectrum("Counting function vanishes at a sampled radius")
    slope, _ = np.polyfit(np.log(radii), np.log(counts), 1)
    return float(slope)


# ============================================================================
# Determinant
# ============================================================================


def determinant_from_zeta(evaluation: ZetaEvaluation, params: DeterminantParams, chi: int) -> ZetaEvaluation:
    """log D(s) = F s(s-1) + G + log Z(s) + log Z_inf(s) from an evaluated log Z(s)."""
    with mpmath.workdps(working_dps()):
        point = mpmath.mpc(evaluation.s)
        value = params.F * point * (point - 1) + params.G + evaluation.value + log_z_infinity(point, chi)
    return dataclasses.replace(evaluation, value=value)


def log_det_D(
    ls: LengthSpectrum,
    s: complex,
    params: DeterminantParams,
    chi: int,
    **zeta_options,
) -> ZetaEvaluation:
    """
    log D(s) = F s(s-1) + G + log Z(s) + log Z_inf(s).

    Returns the zeta evaluation with its value replaced by log D; the
    truncation bound is that of log Z.
    """
    return determinant_from_zeta(log_zeta(ls, s, **zeta_options), params, chi)


def laplacian_from_zeta(evaluation: ZetaEvaluation, params: DeterminantParams, chi: int) -> ZetaEvaluation:
    """log det Delta = log D(1) = G - chi log 2pi + log Z(1), from an evaluated log Z(1)."""
    if evaluation.s != 1:
        raise DomainError(f"log det Delta needs log Z at s = 1, got s = {evaluation.s}")
    with mpmath.workdps(working_dps()):
        value = params.G - chi * mpmath.log(2 * mpmath.pi) + evaluation.value
    return dataclasses.replace(evaluation, value=value)


def log_det_laplacian(
    ls: LengthSpectrum,
    params: DeterminantParams,
    chi: int,
    **zeta_options,
) -> ZetaEvaluation:
    """log det Delta from the Euler product at s = 1 (extended region allowed)."""
    zeta_options.setdefault("extended", True)
    return laplacian_from_zeta(log_zeta(ls, 1.0, **zeta_options), params, chi)


# ============================================================================
# Hadamard products
# ============================================================================


def _hadamard_arrays(rs: ResonanceSet, exclude_origin: bool) -> tuple[np.ndarray, np.ndarray, int]:
    removed = 0
    if any(abs(z) <= rs.merge_tolerance for z, _ in rs.points):
        if not exclude_origin:
            raise HadamardOriginError("The resonance set contains 0; the factor (1 - s/0) is undefined")
        rs, removed = rs.without_origin()
        log_warning("Hadamard", f"Excluded the point 0 (multiplicity {removed}) from the product")
    points = rs.points
    zetas = np.array([z for z, _ in points], dtype=complex)
    weights = np.array([m for _, m in points], dtype=float)
    return zetas, weights, removed


def _genus_two_tail(rs: ResonanceSet, s: complex) -> float:
    """A |s|^3 / (R - |s|) with A = max N(r)/r^2 over the points and R the truncation radius."""
    if rs.truncation_radius is None:
        return 0.0
    radius = rs.truncation_radius
    if abs(s) >= radius:
        return math.inf
    moduli = sorted(abs(z) for z, _ in rs.points if abs(z) > 0)
    growth = max((rs.counting(r) / r**2 for r in moduli), default=0.0)
    return growth * abs(s) ** 3 / (radius - abs(s))


def hadamard_P(rs: ResonanceSet, s: complex, exclude_origin: bool = False) -> HadamardEvaluation:
    """
    log P(s) = sum m [log(1 - s/zeta) + s/zeta + s^2/(2 zeta^2)], summed in the
    set's fixed point order.

    Raises:
        HadamardOriginError: If 0 is a point of the set and exclude_origin is False
    """
    zetas, weights, removed = _hadamard_arrays(rs, exclude_origin)
    tail_bound = _genus_two_tail(rs, complex(s))
    if target_digits() > DOUBLE_DIGITS:
        with mpmath.workdps(working_dps()):
            s = mpmath.mpmathify(s)
            terms = []
            for zeta, m in zip(zetas, weights):
                u = s / mpmath.mpc(zeta)
                terms.append(int(m) * (mpmath.log(1 - u) + u + u * u / 2))
            value = mpmath.fsum(terms)
    else:
        u = complex(s) / zetas
        with np.errstate(divide="ignore"):
            value = complex(np.sum(weights * (np.log1p(-u) + u + u * u / 2.0)))
    return HadamardEvaluation(
        value=value,
        tail_bound=tail_bound,
        excluded_origin=removed,
    )


def hadamard_P_log_derivative(rs: ResonanceSet, s, exclude_origin: bool = False) -> np.ndarray:
    """P'/P(s) = sum m [1/(s - zeta) + 1/zeta + s/zeta^2], vectorized over s."""
    zetas, weights, _ = _hadamard_arrays(rs, exclude_origin)
    s = np.asarray(s, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = 1.0 / np.subtract.outer(s, zetas) + 1.0 / zetas + np.multiply.outer(s, 1.0 / zetas**2)
    return np.sum(weights * terms, axis=-1)


# ============================================================================
# Decay, topological zeros, large-s behaviour
# ============================================================================


def decay_constant(ls: LengthSpectrum, s_values, convention: Convention = "oriented") -> float:
    """Smallest C with |log Z(s)| <= C e^{-s l0} on the sampled real points."""
    shortest = systole(ls)
    ratios = []
    for s in s_values:
        evaluation = log_zeta(ls, float(s), convention=convention)
        ratios.append(abs(evaluation.as_complex()) * math.exp(float(s) * shortest))
    return max(ratios)


def topological_zero_orders(chi: int, k_count: int) -> list[ZeroLocation]:
    """
    Orders -(2k+1) chi of the poles of Z_inf at s = -k, k < k_count. These
    cancel the topological zeros of Z there, so D has no zero from them.
    """
    if chi > 0:
        raise DomainError(f"Convex co-compact surfaces have chi <= 0, got {chi}")
    if chi == 0:
        return []
    return [ZeroLocation(location=complex(-k, 0.0), multiplicity=-(2 * k + 1) * chi) for k in range(k_count)]


def relative_determinant_asymptotics(invariants: HeatInvariants, s, higher: dict[int, float] | None = None):
    """
    Large-s behaviour of the relative determinant from the heat invariants:
    a0 w (1 - log w) + sum_{j>=2} (j-2)! a_j w^{-j+1}, w = s(s-1).
    `higher` supplies a_j for j >= 3.
    """
    coefficients = {2: invariants.a2}
    coefficients.update(higher or {})
    with mpmath.workdps(working_dps()):
        s = mpmath.mpmathify(s)
        w = s * (s - 1)
        value = invariants.a0 * w * (1 - mpmath.log(w))
        for j in sorted(coefficients):
            if j < 2:
                raise DomainError(f"Higher invariants start at j = 2, got {j}")
            value += mpmath.factorial(j - 2) * coefficients[j] * w ** (-j + 1)
        return value
