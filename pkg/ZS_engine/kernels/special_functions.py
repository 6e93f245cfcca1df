"""
Special functions
log Gamma, digamma, Barnes' double gamma function, the topological factor
Z_inf and its large-s expansion
"""

from functools import lru_cache

import mpmath

from ZS_engine.config.precision import working_dps
from ZS_engine.data_models.zeta_models import ExpansionCoefficients
from ZS_engine.errors import DomainError, PoleAtNonpositiveInteger
from utils.util import log_debug


# zeta'(-1) = 1/12 - log A (A: Glaisher-Kinkelin), 30 digits
ZETA_PRIME_MINUS_ONE = "-0.1654211437004509292139196602"

# below this real part the large-s expansion is not asserted
EXPANSION_MIN_REAL = 5.0

# sample abscissae of the tail-coefficient fit: 12 * 1.25^j
_FIT_START = 12.0
_FIT_RATIO = 1.25


def _is_nonpositive_integer(s) -> bool:
    s = mpmath.mpmathify(s)
    return mpmath.im(s) == 0 and mpmath.re(s) <= 0 and mpmath.isint(mpmath.re(s))


def zeta_prime_minus_one():
    return mpmath.mpf(ZETA_PRIME_MINUS_ONE)


def sarnak_constant_E():
    """E = -1/4 - 1/2 log 2pi + 2 zeta'(-1) ~ -1.49978082"""
    with mpmath.workdps(working_dps()):
        return -mpmath.mpf(1) / 4 - mpmath.log(2 * mpmath.pi) / 2 + 2 * zeta_prime_minus_one()


def digamma(s):
    """
    psi(s) = Gamma'(s) / Gamma(s).

    Raises:
        PoleAtNonpositiveInteger: For s in {0, -1, -2, ...}
    """
    if _is_nonpositive_integer(s):
        raise PoleAtNonpositiveInteger(f"digamma has a pole at s = {s}")
    with mpmath.workdps(working_dps()):
        return mpmath.digamma(mpmath.mpmathify(s))


def log_gamma(s):
    """Principal branch of log Gamma(s), continuous off the negative real axis."""
    if _is_nonpositive_integer(s):
        raise PoleAtNonpositiveInteger(f"Gamma has a pole at s = {s}")
    with mpmath.workdps(working_dps()):
        return mpmath.loggamma(mpmath.mpmathify(s))


# ============================================================================
# Barnes double gamma
# ============================================================================


def _barnes_term(z, k):
    # log of (1 + z/k)^k e^{-z + z^2/(2k)}; O(z^3 / k^2)
    return k * mpmath.log1p(z / k) - z + z * z / (2 * k)


def _barnes_prefix(z):
    euler_gamma = +mpmath.euler
    return z / 2 * mpmath.log(2 * mpmath.pi) - z / 2 - (euler_gamma + 1) / 2 * z * z


def _check_barnes_domain(s) -> None:
    if _is_nonpositive_integer(s):
        raise DomainError(f"Gamma_2 has a pole at s = {s} (1/Gamma_2 vanishes there)")


def log_barnes_gamma2(s):
    """
    log Gamma_2(s) from the Barnes product

        1/Gamma_2(z+1) = (2pi)^{z/2} e^{-z/2 - (gamma+1) z^2/2} prod_k (1 + z/k)^k e^{-z + z^2/(2k)}

    summed term by term. The first K = 2|z| + 40 factors are summed directly;
    the rest is the convergent series sum_{j>=1} (-1)^{j+1} z^{j+2}/(j+2) zeta(j+1, K+1).

    Raises:
        DomainError: For s in {0, -1, -2, ...}
    """
    _check_barnes_domain(s)
    with mpmath.workdps(working_dps()):
        z = mpmath.mpmathify(s) - 1
        if z == 0:
            return mpmath.mpf(0)
        cutoff = int(2 * abs(z)) + 40
        direct = mpmath.fsum(_barnes_term(z, k) for k in range(1, cutoff + 1))

        eps = mpmath.mpf(10) ** (-mpmath.mp.dps)
        tail = mpmath.mpf(0)
        j = 1
        while True:
            term = (-1) ** (j + 1) * z ** (j + 2) / (j + 2) * mpmath.zeta(j + 1, cutoff + 1)
            tail += term
            if abs(term) <= eps * max(1, abs(direct)):
                break
            j += 1
        log_debug("Barnes", f"s = {s}: {cutoff} direct factors, {j} tail terms")
        return -(_barnes_prefix(z) + direct + tail)


def log_barnes_gamma2_resummed(s):
    """
    Same value as log_barnes_gamma2 through a different summation: a longer
    direct sum and an Euler-Maclaurin tail over the factors.
    """
    _check_barnes_domain(s)
    with mpmath.workdps(working_dps()):
        z = mpmath.mpmathify(s) - 1
        if z == 0:
            return mpmath.mpf(0)
        cutoff = 2 * (int(2 * abs(z)) + 40) + 7
        direct = mpmath.fsum(_barnes_term(z, k) for k in range(1, cutoff + 1))
        tail = mpmath.nsum(lambda k: _barnes_term(z, k), [cutoff + 1, mpmath.inf], method="euler-maclaurin")
        return -(_barnes_prefix(z) + direct + tail)


def log_barnes_gamma2_derivative(s):
    """d/ds log Gamma_2(s) = -[1/2 log 2pi - 1/2 - (s-1) + (s-1) psi(s)]"""
    psi = digamma(s)
    with mpmath.workdps(working_dps()):
        s = mpmath.mpmathify(s)
        return -(mpmath.log(2 * mpmath.pi) / 2 - mpmath.mpf(1) / 2 - (s - 1) + (s - 1) * psi)


# ============================================================================
# Topological factor Z_inf
# ============================================================================


def log_z_infinity(s, chi: int):
    """
    log Z_inf(s) = -chi (s log 2pi + 2 log Gamma_2(s) - log Gamma(s)).

    Raises:
        DomainError: At s in {0, -1, -2, ...}
    """
    if chi == 0:
        return mpmath.mpf(0)
    log_g2 = log_barnes_gamma2(s)
    log_g = log_gamma(s)
    with mpmath.workdps(working_dps()):
        s = mpmath.mpmathify(s)
        return -chi * (s * mpmath.log(2 * mpmath.pi) + 2 * log_g2 - log_g)


def log_z_infinity_derivative(s, chi: int):
    """d/ds log Z_inf(s) = chi (2s - 1)(psi(s) - 1)"""
    if chi == 0:
        return mpmath.mpf(0)
    psi = digamma(s)
    with mpmath.workdps(working_dps()):
        s = mpmath.mpmathify(s)
        return chi * (2 * s - 1) * (psi - 1)


def _expansion_head(w, chi: int, coefficients: ExpansionCoefficients):
    log_w = mpmath.log(w)
    bracket = (
        coefficients.constant
        + coefficients.wlogw * w * log_w
        + coefficients.log * log_w
        + coefficients.linear * w
    )
    return -chi * bracket


@lru_cache(maxsize=None)
def _unit_tail_coefficients(count: int, dps: int) -> tuple[float, ...]:
    """Tail coefficients of the chi = -1 expansion, least squares over s_j = 12 * 1.25^j."""
    head = _expansion_constants(-1)
    with mpmath.workdps(dps):
        points = [mpmath.mpf(_FIT_START) * mpmath.mpf(_FIT_RATIO) ** j for j in range(2 * count + 4)]
        rows, rhs = [], []
        for s in points:
            w = s * (s - 1)
            residual = log_z_infinity(s, -1) - _expansion_head(w, -1, head)
            rows.append([w ** (-(l + 1)) for l in range(count)])
            rhs.append(residual)
        solution, residual_norm = mpmath.qr_solve(mpmath.matrix(rows), mpmath.matrix(rhs))
        log_debug("Expansion", f"Fitted {count} tail coefficients, residual {mpmath.nstr(residual_norm, 3)}")
        return tuple(float(solution[l]) for l in range(count))


def _expansion_constants(chi: int, tail: tuple[float, ...] = ()) -> ExpansionCoefficients:
    with mpmath.workdps(working_dps()):
        constant = mpmath.log(2 * mpmath.pi) / 2 + mpmath.mpf(1) / 4 - 2 * zeta_prime_minus_one()
    return ExpansionCoefficients(chi=chi, constant=float(constant), tail=tail)


def expansion_coefficients(chi: int, tail_terms: int) -> ExpansionCoefficients:
    """
    Coefficients of the large-s expansion of log Z_inf with `tail_terms` + 1
    fitted tail coefficients (the last one sizes the residual bound).
    Fits are done once for chi = -1 and scaled by -chi.
    """
    if tail_terms < 0:
        raise DomainError(f"tail_terms must be >= 0, got {tail_terms}")
    unit = _unit_tail_coefficients(tail_terms + 2, working_dps())
    return _expansion_constants(chi, tuple(-chi * c for c in unit[: tail_terms + 1]))


def z_infinity_asymptotics(s, chi: int, tail_terms: int = 0):
    """
    Large-s expansion of log Z_inf, in w = s(s-1):

        -chi [1/2 log 2pi + 1/4 - 2 zeta'(-1) - (w/2 + 1/6) log w + 3/2 w] + sum_{l<=L} c_l w^{-l}

    Args:
        s: Point with Re(s) >= 5
        chi: Euler characteristic
        tail_terms: Number L of fitted tail coefficients used

    Returns:
        (approximation, residual bound 2 |c_{L+1}| |w|^{-(L+1)})

    Raises:
        DomainError: If Re(s) < 5
    """
    s = mpmath.mpmathify(s)
    if mpmath.re(s) < EXPANSION_MIN_REAL:
        raise DomainError(f"The large-s expansion needs Re(s) >= {EXPANSION_MIN_REAL:g}, got {s}")
    if chi == 0:
        return mpmath.mpf(0), 0.0
    coefficients = expansion_coefficients(chi, tail_terms)
    with mpmath.workdps(working_dps()):
        w = s * (s - 1)
        value = _expansion_head(w, chi, coefficients)
        for l in range(tail_terms):
            value += coefficients.tail[l] * w ** (-(l + 1))
        bound = 2 * abs(coefficients.tail[tail_terms]) * abs(w) ** (-(tail_terms + 1))
        return value, float(bound)
