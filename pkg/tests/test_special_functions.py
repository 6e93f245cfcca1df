import random

import mpmath
import pytest

from ZS_engine.config.precision import configure_precision
from ZS_engine.errors import DomainError, PoleAtNonpositiveInteger
from ZS_engine.kernels.special_functions import (
    ZETA_PRIME_MINUS_ONE,
    digamma,
    expansion_coefficients,
    log_barnes_gamma2,
    log_barnes_gamma2_derivative,
    log_barnes_gamma2_resummed,
    log_gamma,
    log_z_infinity,
    log_z_infinity_derivative,
    sarnak_constant_E,
    z_infinity_asymptotics,
    zeta_prime_minus_one,
)


def test_digamma_at_one():
    assert abs(digamma(1) + mpmath.euler) <= 1e-13


def test_digamma_and_gamma_poles():
    for s in (0, -1, -4):
        with pytest.raises(PoleAtNonpositiveInteger):
            digamma(s)
        with pytest.raises(PoleAtNonpositiveInteger):
            log_gamma(s)


def test_barnes_gamma2_at_one_and_two():
    assert abs(log_barnes_gamma2(1)) <= 1e-13
    assert abs(log_barnes_gamma2(2)) <= 1e-13


def test_barnes_gamma2_poles():
    for s in (0, -1, -3):
        with pytest.raises(DomainError):
            log_barnes_gamma2(s)


def test_barnes_gamma2_matches_barnes_g():
    # Gamma_2(s) = 1 / G(s)
    configure_precision(30)
    for s in (mpmath.mpf("0.5"), mpmath.mpf(3), mpmath.mpc(2, 5), mpmath.mpc(-2.5, 1)):
        expected = -mpmath.log(mpmath.barnesg(s))
        difference = log_barnes_gamma2(s) - expected
        # logs agree up to a branch multiple of 2 pi i
        assert abs(mpmath.re(difference)) <= 1e-12 * max(1, abs(expected))
        assert abs(mpmath.exp(1j * mpmath.im(difference)) - 1) <= 1e-12 * max(1, abs(expected))


@pytest.mark.parametrize("s", [mpmath.mpf(7), mpmath.mpc(3, 12), mpmath.mpc(-20.5, 30), mpmath.mpc(40, -25)])
def test_barnes_gamma2_independent_summation(s):
    configure_precision(30)
    direct = log_barnes_gamma2(s)
    resummed = log_barnes_gamma2_resummed(s)
    assert abs(direct - resummed) <= 1e-12 * max(1, abs(direct))


def test_barnes_derivative_by_finite_difference():
    configure_precision(30)
    s = mpmath.mpc(2.5, 1.5)
    with mpmath.workdps(40):
        h = mpmath.mpf("1e-10")
        numeric = (log_barnes_gamma2(s + h) - log_barnes_gamma2(s - h)) / (2 * h)
        assert abs(numeric - log_barnes_gamma2_derivative(s)) <= 1e-8


def test_z_infinity_log_derivative_identity():
    configure_precision(30)
    rng = random.Random(11)
    for _ in range(20):
        s = mpmath.mpc(rng.uniform(0.5, 8.0), rng.uniform(-8.0, 8.0))
        chi = rng.choice([-1, -2, -3])
        with mpmath.workdps(40):
            h = mpmath.mpf("1e-12")
            numeric = (log_z_infinity(s + h, chi) - log_z_infinity(s - h, chi)) / (2 * h)
            assert abs(numeric - log_z_infinity_derivative(s, chi)) <= 1e-8 * max(1, abs(numeric))


def test_z_infinity_at_one():
    # log Z_inf(1) = -chi log 2 pi
    assert abs(log_z_infinity(1, -1) - mpmath.log(2 * mpmath.pi)) <= 1e-13
    assert log_z_infinity(3.5, 0) == 0


def test_zeta_prime_minus_one_constant():
    configure_precision(30)
    with mpmath.workdps(40):
        assert abs(zeta_prime_minus_one() - mpmath.zeta(-1, derivative=1)) <= mpmath.mpf(10) ** -28
    assert ZETA_PRIME_MINUS_ONE.startswith("-0.16542114370045092921")


def test_sarnak_constant():
    assert float(sarnak_constant_E()) == pytest.approx(-1.4997808206, abs=1e-9)


def test_expansion_coefficients_scale_with_chi():
    unit = expansion_coefficients(-1, 2)
    double = expansion_coefficients(-2, 2)
    assert len(unit.tail) == 3
    assert unit.constant == double.constant
    for a, b in zip(unit.tail, double.tail):
        assert b == pytest.approx(2 * a, rel=1e-12)


def test_expansion_domain():
    with pytest.raises(DomainError):
        z_infinity_asymptotics(4, -1)


@pytest.mark.parametrize("tail_terms", [0, 1, 2])
def test_expansion_residual_decays_on_doubling_ladder(tail_terms):
    configure_precision(30)
    chi = -1
    ratios = []
    previous = None
    for s in (6, 12, 24, 48):
        approximation, bound = z_infinity_asymptotics(s, chi, tail_terms)
        with mpmath.workdps(40):
            residual = abs(log_z_infinity(s, chi) - approximation)
        assert residual <= bound
        if previous is not None:
            ratios.append(float(previous / residual))
        previous = residual
    # |w| = s(s-1) grows about fourfold per doubling: residual ~ |w|^-(L+1)
    expected = 4.0 ** (tail_terms + 1)
    assert ratios[-1] == pytest.approx(expected, rel=0.25)
