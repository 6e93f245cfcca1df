"""
Length recovery from zeta samples
Successive exponent fitting and peeling on the real ray: the shortest length
is read off the decay rate of log Z(s), its multiplicity off the limit
amplitude, and its full Euler factor is subtracted before the next round.
"""

from typing import Callable

import mpmath

from ZS_engine.data_models.zeta_models import ExtractedLength, HuberResult
from ZS_engine.errors import PrecisionExhausted
from utils.util import log_debug, log_info, log_warning


Sampler = Callable[[object], object]

# binomial weights of the third forward difference
_THIRD_DIFFERENCE = (-1, 3, -3, 1)
# multiplicities closer than this to an integer are rounded
INTEGER_SLACK = 0.1


class _PeelingState:
    """Cached samples and the single-length model u_l(s) = sum_k log(1 - e^{-(s+k) l})."""

    def __init__(self, sampler: Sampler, digits: int, step: float):
        self.sampler = sampler
        self.digits = digits
        self.step = mpmath.mpf(step)
        self._samples: dict = {}
        # (length, multiplicity, error) at working precision
        self.peeled: list[tuple] = []

    def sample(self, s):
        key = mpmath.nstr(s, 30)
        if key not in self._samples:
            self._samples[key] = self.sampler(s)
        return self._samples[key]

    def single_length(self, length, s):
        floor = mpmath.mpf(self.digits) * mpmath.log(10) + s * length + 5
        total = mpmath.mpf(0)
        k = 0
        while (s + k) * length <= floor:
            total += mpmath.log1p(-mpmath.exp(-(s + k) * length))
            k += 1
        return total

    def difference(self, f, s):
        """Third forward difference with step h; it annihilates quadratics in s."""
        return mpmath.fsum(w * f(s + j * self.step) for j, w in enumerate(_THIRD_DIFFERENCE))

    def residual(self, s):
        peeled = mpmath.fsum(
            m * self.difference(lambda x, l=length: self.single_length(l, x), s) for length, m, _ in self.peeled
        )
        return self.difference(self.sample, s) - peeled

    def noise(self, s):
        """Rounding in the differenced samples plus the error carried by the peeled lengths."""
        scale = max(abs(self.sample(s + j * self.step)) for j in range(4))
        rounding = 8 * mpmath.mpf(10) ** (-(self.digits - 5)) * scale
        carried = mpmath.mpf(0)
        for length, m, error in self.peeled:
            slope = (s + 3 * self.step + 1) * abs(self.difference(lambda x, l=length: self.single_length(l, x), s))
            carried += abs(m) * error * slope
        return rounding + carried


def _fit_length(state: _PeelingState, s, r0, r1):
    ratio = r0 / r1
    estimate = mpmath.log(ratio)

    def mismatch(length):
        model = lambda x: state.single_length(length, x)
        return state.difference(model, s) / state.difference(model, s + 1) - ratio

    try:
        length = mpmath.findroot(mismatch, estimate)
    except (ValueError, ZeroDivisionError):
        length = estimate
    amplitude = r0 / state.difference(lambda x: state.single_length(length, x), s)
    return length, amplitude


def huber_extract_lengths(
    zeta_sampler: Sampler,
    count: int,
    digits: int = 80,
    step: float = 0.5,
    s_start: float = 4.0,
    s_growth: float = 1.15,
    s_max: float = 240.0,
    signal_margin: float = 1e4,
    allow_partial: bool = False,
) -> HuberResult:
    """
    Recover the `count` smallest distinct lengths and their multiplicities
    from samples of log Z on the real ray.

    Each round walks the ladder s_n = s_start * s_growth^n. At every point the
    third difference of the peeled residual r must exceed `signal_margin`
    times its noise at s and s + 1 with one sign; the length then solves
    D u_l(s) / D u_l(s+1) = r(s) / r(s+1) and the multiplicity is
    r(s) / D u_l(s). The last usable point is kept.

    Args:
        zeta_sampler: s -> log Z(s), accurate to `digits` places
        count: Number of lengths to recover
        digits: Working precision of the sampler
        step: Difference step h
        s_start, s_growth, s_max: Sampling ladder
        signal_margin: Required signal to noise ratio
        allow_partial: Return the partial list instead of raising

    Returns:
        HuberResult with the recovered lengths in increasing order

    Raises:
        PrecisionExhausted: If the residual drowns in noise before `count` lengths (partial list attached)
    """
    result = HuberResult()
    with mpmath.workdps(digits):
        state = _PeelingState(zeta_sampler, digits, step)
        ladder = []
        s = mpmath.mpf(s_start)
        while s <= s_max:
            ladder.append(s)
            s *= s_growth

        for index in range(count):
            usable_points = []
            for s in ladder:
                r0, r1 = state.residual(s), state.residual(s + 1)
                threshold = signal_margin * max(state.noise(s), state.noise(s + 1))
                usable = abs(r0) > threshold and abs(r1) > threshold and mpmath.sign(r0) == mpmath.sign(r1)
                if usable:
                    usable_points.append((s, r0, r1))
                elif usable_points:
                    break

            if not usable_points:
                result.exhausted = True
                message = f"Residual signal below sampler precision after {len(result.lengths)} lengths"
                if allow_partial:
                    log_warning("Huber", message)
                    return result
                raise PrecisionExhausted(message, partial=result)

            s_used = usable_points[-1][0]
            length, amplitude = _fit_length(state, *usable_points[-1])
            if len(usable_points) > 1:
                previous, _ = _fit_length(state, *usable_points[-2])
            else:
                previous = mpmath.mpf(0)
            error = max(abs(length - previous), mpmath.mpf(10) ** (-(digits - 5)))
            nearest = int(mpmath.nint(amplitude))
            fractional = abs(amplitude - nearest) > INTEGER_SLACK or nearest == 0
            multiplicity = float(amplitude) if fractional else nearest
            if fractional:
                log_warning("Huber", f"Length {mpmath.nstr(length, 12)} has fractional multiplicity {mpmath.nstr(amplitude, 6)}")

            extracted = ExtractedLength(
                length=float(length),
                multiplicity=multiplicity,
                error_estimate=float(error),
                fractional=fractional,
            )
            # peel with the full-precision length
            state.peeled.append((length, multiplicity, error))
            result.lengths.append(extracted)
            log_debug("Huber", f"Round {index + 1}: length {mpmath.nstr(length, 15)} at s = {mpmath.nstr(s_used, 6)}")

    log_info("Huber", f"Recovered {len(result.lengths)} lengths")
    return result
