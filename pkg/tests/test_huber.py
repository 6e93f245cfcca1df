import mpmath
import pytest

from ZS_engine.data_models import PantsSpec
from ZS_engine.errors import PrecisionExhausted
from ZS_engine.kernels.huber import huber_extract_lengths
from ZS_engine.kernels.length_spectrum import enumerate_spectrum
from ZS_engine.kernels.surface_model import build_pants
from ZS_engine.kernels.zeta_det import cylinder_sampler, euler_product_sampler


@pytest.mark.slow
def test_cylinder_has_one_length():
    sampler = cylinder_sampler(2.0)
    with pytest.raises(PrecisionExhausted) as info:
        huber_extract_lengths(sampler, 2)
    partial = info.value.partial
    assert [(round(x.length, 8), x.multiplicity) for x in partial.lengths] == [(2.0, 2)]
    assert partial.exhausted


@pytest.mark.slow
def test_cylinder_partial_result_allowed():
    result = huber_extract_lengths(cylinder_sampler(2.0), 2, allow_partial=True)
    assert len(result.lengths) == 1
    assert result.exhausted
    assert not result.lengths[0].fractional


@pytest.mark.slow
def test_pants_first_lengths():
    ls = enumerate_spectrum(build_pants(PantsSpec.create(1.0, 2.0, 3.0)), 8.0)
    result = huber_extract_lengths(euler_product_sampler(ls), 3)
    assert not result.exhausted
    for extracted, expected in zip(result.lengths, (1.0, 2.0, 3.0)):
        assert extracted.length == pytest.approx(expected, abs=1e-8)
        assert extracted.multiplicity == 2
        assert extracted.error_estimate < 1e-6


def test_unoriented_multiplicity():
    result = huber_extract_lengths(cylinder_sampler(1.5, convention="unoriented"), 1)
    assert result.lengths[0].length == pytest.approx(1.5, abs=1e-8)
    assert result.lengths[0].multiplicity == 1


def test_quadratic_prefactor_leaves_lengths_unchanged():
    # Z(s) times exp(a + b s + c s^2) only adds a quadratic to log Z
    plain_sampler = cylinder_sampler(1.5, convention="unoriented")

    def scaled_sampler(s):
        with mpmath.workdps(80):
            s = mpmath.mpf(s)
            return plain_sampler(s) + mpmath.mpf("0.3") + mpmath.mpf("0.02") * s + mpmath.mpf("0.001") * s**2

    plain = huber_extract_lengths(plain_sampler, 1)
    scaled = huber_extract_lengths(scaled_sampler, 1)
    assert scaled.lengths[0].multiplicity == plain.lengths[0].multiplicity == 1
    assert scaled.lengths[0].length == pytest.approx(1.5, abs=1e-8)
    assert scaled.lengths[0].length == pytest.approx(plain.lengths[0].length, abs=1e-8)
