import cmath
import math

import mpmath
import numpy as np
import pytest

from ZS_engine.config.precision import configure_precision
from ZS_engine.data_models import HeatInvariants, PantsSpec
from ZS_engine.data_models.zeta_models import DeterminantParams, ResonanceSet
from ZS_engine.errors import (
    ConvergenceRegionError,
    DomainError,
    HadamardOriginError,
    IncompleteSpectrum,
    InvalidLength,
    ZeroOfZeta,
)
from ZS_engine.kernels.length_spectrum import enumerate_spectrum
from ZS_engine.kernels.special_functions import log_z_infinity
from ZS_engine.kernels.surface_model import build_cylinder, build_pants
from ZS_engine.kernels.zeta_det import (
    cylinder_resonances,
    cylinder_zeta_log_derivative,
    cylinder_zeta_value,
    decay_constant,
    determinant_from_zeta,
    hadamard_P,
    hadamard_P_log_derivative,
    laplacian_from_zeta,
    log_det_D,
    log_zeta,
    log_zeta_cylinder,
    relative_determinant_asymptotics,
    resonance_counting_exponent,
    topological_zero_orders,
)


@pytest.fixture(scope="module")
def pants123():
    return enumerate_spectrum(build_pants(PantsSpec.create(1.0, 2.0, 3.0)), 8.0)


def test_cylinder_closed_form_at_one():
    configure_precision(30)
    evaluation = log_zeta_cylinder(1.0, 1.0)
    with mpmath.workdps(40):
        # prod_{k>=1} (1 - e^{-k}) = 0.5044...
        expected = 2 * mpmath.log(mpmath.qp(mpmath.exp(-1)))
        assert abs(evaluation.value - expected) <= mpmath.mpf(10) ** -28
    assert math.exp(evaluation.as_complex().real / 2) == pytest.approx(0.5044, abs=1e-4)
    assert evaluation.truncation_error_bound <= 1e-28


def test_cylinder_unoriented_is_half():
    oriented = log_zeta_cylinder(2.0, 0.5 + 3j).as_complex()
    unoriented = log_zeta_cylinder(2.0, 0.5 + 3j, convention="unoriented").as_complex()
    assert unoriented == pytest.approx(oriented / 2, abs=1e-13)


def test_cylinder_entire_with_lattice_zeros():
    ell = 1.0
    # left of every abscissa, away from the lattice
    value = log_zeta_cylinder(ell, -2.5 + 1j).as_complex()
    assert cmath.exp(value) == pytest.approx(complex(cylinder_zeta_value(ell, [-2.5 + 1j])[0]), rel=1e-10)
    with pytest.raises(ZeroOfZeta):
        log_zeta_cylinder(ell, complex(-2, 2 * math.pi / ell))
    with pytest.raises(InvalidLength):
        log_zeta_cylinder(0.0, 1.0)


def test_cylinder_log_derivative_matches_finite_difference():
    ell, s, h = 1.5, 0.3 + 2.2j, 1e-6
    values = cylinder_zeta_value(ell, [s + h, s - h])
    numeric = (np.log(values[0]) - np.log(values[1])) / (2 * h)
    assert complex(cylinder_zeta_log_derivative(ell, [s])[0]) == pytest.approx(complex(numeric), rel=1e-6)


def test_enumerated_cylinder_matches_closed_form():
    ls = enumerate_spectrum(build_cylinder(1.0), 10.0)
    for s in (0.5, 1.0, 2.0 + 3.0j):
        assert log_zeta(ls, s).as_complex() == pytest.approx(log_zeta_cylinder(1.0, s).as_complex(), abs=1e-12)


def test_log_zeta_convergence_region(pants123):
    with pytest.raises(ConvergenceRegionError):
        log_zeta(pants123, 0.5)
    with pytest.raises(ConvergenceRegionError):
        log_zeta(pants123, -1.0, extended=True)
    evaluation = log_zeta(pants123, 2.0)
    assert not evaluation.heuristic
    assert evaluation.l_max == pytest.approx(8.0, rel=1e-11)


def test_log_zeta_needs_complete_spectrum():
    s = build_pants(PantsSpec.create(1.0, 1.0, 1.0))
    partial = enumerate_spectrum(s, 6.0, max_words=40, allow_incomplete=True)
    with pytest.raises(IncompleteSpectrum):
        log_zeta(partial, 2.0)


def test_log_zeta_bound_shrinks_with_cutoff():
    s = build_pants(PantsSpec.create(1.0, 2.0, 3.0))
    short = log_zeta(enumerate_spectrum(s, 5.0), 3.0)
    long = log_zeta(enumerate_spectrum(s, 8.0), 3.0)
    assert long.truncation_error_bound < short.truncation_error_bound
    assert abs(long.as_complex() - short.as_complex()) <= short.truncation_error_bound


def test_decay_constant(pants123):
    s_values = np.linspace(2.0, 30.0, 15)
    constant = decay_constant(pants123, s_values)
    # the systole class alone gives 2 / (1 - e^{-1}) for large s
    assert 2.0 / (1.0 - math.exp(-1.0)) * (1 - 1e-9) <= constant < 10.0
    # the k-sum is cut at the absolute precision target, e^{-7} relative at s = 30
    assert decay_constant(pants123, [30.0]) == pytest.approx(2.0 / (1.0 - math.exp(-1.0)), rel=2e-3)


def test_hadamard_single_point():
    rs = ResonanceSet()
    rs.add(-1.0, 1)
    evaluation = hadamard_P(rs, 1.0)
    assert evaluation.as_complex() == pytest.approx(math.log(2.0) - 0.5, abs=1e-14)
    assert evaluation.tail_bound == 0.0


def test_hadamard_keeps_high_precision():
    configure_precision(30)
    rs = ResonanceSet()
    rs.add(-1.0, 1)
    evaluation = hadamard_P(rs, 1)
    with mpmath.workdps(40):
        assert abs(evaluation.value - (mpmath.log(2) - mpmath.mpf("0.5"))) <= mpmath.mpf(10) ** -28


def test_hadamard_origin():
    rs = ResonanceSet()
    rs.add(0.0, 2)
    rs.add(-1.0 + 2.0j, 1)
    with pytest.raises(HadamardOriginError):
        hadamard_P(rs, 0.5)
    evaluation = hadamard_P(rs, 0.5, exclude_origin=True)
    assert evaluation.excluded_origin == 2
    u = 0.5 / (-1.0 + 2.0j)
    assert evaluation.as_complex() == pytest.approx(cmath.log(1 - u) + u + u * u / 2, abs=1e-14)


def test_hadamard_log_derivative():
    rs = cylinder_resonances(1.0, 4, 3)
    s, h = 0.4 + 0.7j, 1e-6
    numeric = (hadamard_P(rs, s + h, True).as_complex() - hadamard_P(rs, s - h, True).as_complex()) / (2 * h)
    assert complex(hadamard_P_log_derivative(rs, [s], exclude_origin=True)[0]) == pytest.approx(numeric, rel=1e-6)


def test_hadamard_tail_bound_grows_towards_radius():
    rs = cylinder_resonances(1.0, 10, 2)
    near = hadamard_P(rs, 1.0, exclude_origin=True).tail_bound
    far = hadamard_P(rs, 5.0, exclude_origin=True).tail_bound
    assert 0 < near < far
    assert hadamard_P(rs, 20.0, exclude_origin=True).tail_bound == math.inf


def test_cylinder_resonances_lattice():
    rs = cylinder_resonances(2.0, 3, 2)
    assert len(rs) == 4 * 5
    assert rs.total_multiplicity() == 2 * 4 * 5
    assert complex(-3, 2 * math.pi * 2 / 2.0) in rs
    assert rs.physical


def test_cylinder_resonance_counting_exponent():
    rs = cylinder_resonances(1.0, 90, 15)
    exponent = resonance_counting_exponent(rs, np.geomspace(10.0, 80.0, 12))
    assert 1.9 <= exponent <= 2.1


def test_log_det_D_decomposes(pants123):
    params = DeterminantParams(F=0.25, G=-1.5)
    s = 2.0 + 1.0j
    evaluation = log_det_D(pants123, s, params, chi=-1)
    zeta = log_zeta(pants123, s)
    expected = 0.25 * s * (s - 1) - 1.5 + zeta.as_complex() + complex(log_z_infinity(s, -1))
    assert evaluation.as_complex() == pytest.approx(expected, abs=1e-12)
    assert evaluation.truncation_error_bound == zeta.truncation_error_bound


def test_sarnak_params():
    params = DeterminantParams.sarnak(-2)
    assert params.F == -2.0
    assert params.G == pytest.approx(2 * -1.4997808206, abs=1e-9)
    with pytest.raises(ValueError):
        DeterminantParams(F=math.inf)


def test_determinant_of_cylinder_at_one():
    # chi = 0: Z_inf = 1, so log D(1) = G + log Z(1)
    evaluation = log_zeta_cylinder(1.0, 1.0)
    params = DeterminantParams(F=3.0, G=0.5)
    determinant = determinant_from_zeta(evaluation, params, 0)
    assert determinant.as_complex() == pytest.approx(evaluation.as_complex() + 0.5, abs=1e-13)
    laplacian = laplacian_from_zeta(evaluation, params, 0)
    assert laplacian.as_complex() == pytest.approx(determinant.as_complex(), abs=1e-13)
    with pytest.raises(DomainError):
        laplacian_from_zeta(log_zeta_cylinder(1.0, 2.0), params, 0)


def test_topological_zero_orders():
    orders = topological_zero_orders(-1, 3)
    assert [z.location for z in orders] == [0j, -1 + 0j, -2 + 0j]
    assert [z.multiplicity for z in orders] == [1, 3, 5]
    assert [z.multiplicity for z in topological_zero_orders(-2, 2)] == [2, 6]
    assert topological_zero_orders(0, 4) == []
    with pytest.raises(DomainError):
        topological_zero_orders(1, 2)


def test_relative_determinant_asymptotics():
    invariants = HeatInvariants(a0=1.0, a1=0.0, a2=0.5, quadrature_error_estimate=0.0)
    w = 10.0 * 9.0
    expected = w * (1 - math.log(w)) + 0.5 / w
    assert float(relative_determinant_asymptotics(invariants, 10.0)) == pytest.approx(expected, rel=1e-14)
    # a_3 enters with 1! w^{-2}
    with_a3 = relative_determinant_asymptotics(invariants, 10.0, {3: 2.0})
    assert float(with_a3) == pytest.approx(expected + 2.0 / w**2, rel=1e-14)
    with pytest.raises(DomainError):
        relative_determinant_asymptotics(invariants, 10.0, {1: 1.0})


@pytest.mark.parametrize("k_max", [None, 1, 3])
def test_doubling_k_max_stays_within_bound(pants123, k_max):
    evaluation = log_zeta(pants123, 2.0, k_max=k_max)
    doubled = log_zeta(pants123, 2.0, k_max=2 * evaluation.k_max + 1)
    with mpmath.workdps(40):
        change = abs(doubled.value - evaluation.value)
    assert change <= evaluation.truncation_error_bound
    assert doubled.truncation_error_bound <= evaluation.truncation_error_bound
