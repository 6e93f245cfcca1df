"""
Length spectrum
Enumeration of primitive closed geodesics of a free presentation, counting
functions and the brute-force oracle
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any

import numpy as np

from ZS_engine.data_models.spectrum_models import (
    CountingFit,
    EnumerationCertificate,
    GeodesicClass,
    LengthSpectrum,
)
from ZS_engine.data_models.surface_models import SurfaceModel
from ZS_engine.errors import (
    CutoffExceeded,
    EmptySpectrum,
    EnumerationBudgetExceeded,
    InvalidLength,
)
from ZS_engine.kernels.surface_model import translation_length_from_trace, validate_presentation
from ZS_engine.kernels.words import (
    canonical_rotation,
    inverse_word,
    is_cyclically_reduced,
    is_proper_power,
    letter_matrices,
    letter_order,
    unoriented_canonical,
    walk_reduced_words,
    word_key,
)
from utils.util import log_debug, log_info, log_warning


def _oriented_multiplicity(word: str, order: dict[str, int]) -> int:
    # 1 when the class is conjugate to its own inverse
    same = canonical_rotation(word, order) == canonical_rotation(inverse_word(word), order)
    return 1 if same else 2


def _scan_prefix(
    matrices: dict[str, tuple[float, float, float, float]],
    order: dict[str, int],
    first_letter: str,
    depth: int,
    l_max: float,
    budget: int | None,
) -> tuple[dict[str, float], int, bool]:
    """
    Walk the reduced words starting with one letter and keep the canonical
    representatives of primitive classes of length <= l_max.

    Returns:
        (canonical word -> length, words visited, budget hit)
    """
    found: dict[str, float] = {}
    visited = 0
    for word, product in walk_reduced_words(matrices, depth, first_letter):
        visited += 1
        if budget is not None and visited > budget:
            return found, visited - 1, True
        if not is_cyclically_reduced(word):
            continue
        trace = product[0] + product[3]
        length = translation_length_from_trace(trace, word)
        if length > l_max:
            continue
        if is_proper_power(word) or word != unoriented_canonical(word, order):
            continue
        found[word] = length
    return found, visited, False


def _assemble(
    found: dict[str, float],
    order: dict[str, int],
    cutoff: float,
    complete: bool,
    certificate: EnumerationCertificate | None,
    generator_count: int,
) -> LengthSpectrum:
    # ties in length fall back to the canonical word order
    words = sorted(found, key=lambda w: (found[w], word_key(w, order)))
    classes = tuple(
        GeodesicClass(word=w, length=found[w], oriented_multiplicity=_oriented_multiplicity(w, order))
        for w in words
    )
    return LengthSpectrum(
        classes=classes,
        cutoff=cutoff,
        complete=complete,
        certificate=certificate,
        generator_count=generator_count,
    )


def enumerate_spectrum(
    s: SurfaceModel,
    l_max: float,
    threads: int = 1,
    max_words: int = 2_000_000,
    depth_slack: int = 1,
    allow_incomplete: bool = False,
    length_tolerance: float = 1e-12,
) -> LengthSpectrum:
    """
    Enumerate the unoriented primitive classes of length <= l_max.

    The search depth is ceil(l_max / m_est) + depth_slack, where m_est is the
    smallest translation length per letter over cyclically reduced words of
    length <= 2. Work is split over first letters; every letter gets the same
    share of `max_words`, so the result does not depend on `threads`.

    Args:
        s: Surface presentation
        l_max: Length cutoff
        threads: Worker threads for the per-letter walks
        max_words: Total word budget
        depth_slack: Extra letters beyond the pruning depth
        allow_incomplete: Return a partial spectrum instead of raising
        length_tolerance: Relative slack on the cutoff comparison; the
            returned spectrum records l_max (1 + slack) as its cutoff

    Returns:
        LengthSpectrum sorted by (length, canonical word)

    Raises:
        InvalidLength: If l_max is not positive
        EnumerationBudgetExceeded: If the word budget ran out (partial spectrum attached)
    """
    if not (math.isfinite(l_max) and l_max > 0):
        raise InvalidLength(f"Length cutoff must be positive and finite, got {l_max}")

    # 1. Pruning rate from the short words
    report = validate_presentation(s, depth=2)
    rate = report.min_rate
    depth = math.ceil(l_max / rate) + depth_slack

    # 2. Per-letter walks
    matrices = letter_matrices(s.generators)
    order = letter_order(s.rank)
    letters = list(matrices)
    budget = max(1, max_words // len(letters))
    threshold = l_max + length_tolerance * max(1.0, l_max)
    log_debug("Spectrum", f"Depth {depth} (rate {rate:.6g} from '{report.min_rate_word}'), budget {budget} per letter")

    def scan(letter: str) -> tuple[dict[str, float], int, bool]:
        return _scan_prefix(matrices, order, letter, depth, threshold, budget)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(scan, letters))

    # 3. Deterministic merge
    found: dict[str, float] = {}
    visited = 0
    budget_hit = False
    for words, count, hit in results:
        found.update(words)
        visited += count
        budget_hit = budget_hit or hit

    certificate = EnumerationCertificate(
        depth=depth,
        rate_bound=rate,
        heuristic=s.kind == "generators",
        words_visited=visited,
        budget_hit=budget_hit,
    )
    # the stored cutoff is the inclusion threshold, so no class lies above it
    spectrum = _assemble(found, order, threshold, not budget_hit, certificate, s.rank)

    if budget_hit:
        message = f"Word budget {max_words} exhausted at depth {depth}; {len(spectrum)} classes found"
        if not allow_incomplete:
            raise EnumerationBudgetExceeded(message, partial=spectrum)
        log_warning("Spectrum", message + " (incomplete spectrum returned)")
    log_info("Spectrum", f"{len(spectrum)} primitive classes up to length {l_max:g} ({visited} words)")
    return spectrum


def brute_force_spectrum(s: SurfaceModel, l_max: float, depth: int) -> LengthSpectrum:
    """
    Naive oracle: every reduced word up to `depth`, no pruning, no budget.
    The result is never marked complete.
    """
    if depth < 1:
        raise InvalidLength(f"Brute-force depth must be >= 1, got {depth}")
    matrices = letter_matrices(s.generators)
    order = letter_order(s.rank)
    found: dict[str, float] = {}
    for letter in matrices:
        for word, product in walk_reduced_words(matrices, depth, letter):
            if not is_cyclically_reduced(word) or is_proper_power(word):
                continue
            length = translation_length_from_trace(product[0] + product[3], word)
            if length <= l_max:
                found[unoriented_canonical(word, order)] = length
    return _assemble(found, order, l_max, False, None, s.rank)


def systole(ls: LengthSpectrum) -> float:
    if not ls.classes:
        raise EmptySpectrum(f"No classes below the cutoff {ls.cutoff:g}")
    return ls.classes[0].length


def counting_function(ls: LengthSpectrum, t: float, length_tolerance: float = 1e-12) -> int:
    """
    N(t): classes of length <= t, each counted with its oriented multiplicity.
    Lengths within a relative `length_tolerance` of t count as equal to it.
    """
    if t > ls.cutoff:
        raise CutoffExceeded(f"t = {t:g} exceeds the enumeration cutoff {ls.cutoff:g}")
    threshold = t + length_tolerance * max(1.0, t)
    return sum(c.oriented_multiplicity for c in ls.classes if c.length <= threshold)


def counting_fit(ls: LengthSpectrum) -> CountingFit:
    """
    Fit the counting function at the spectrum lengths.

    constant: smallest C with N(t_i) <= C e^{t_i}
    exponent: least-squares slope of log N(t) against t (clamped at 0)
    exponent_constant: smallest C_delta with N(t_i) <= C_delta e^{delta t_i}
    """
    if not ls.classes:
        raise EmptySpectrum(f"No classes below the cutoff {ls.cutoff:g}")
    lengths = np.array(sorted(set(ls.lengths)))
    counts = np.array([counting_function(ls, float(t)) for t in lengths], dtype=float)

    constant = float(np.max(counts * np.exp(-lengths)))
    if lengths.size >= 2:
        slope, _ = np.polyfit(lengths, np.log(counts), 1)
        exponent = max(0.0, float(slope))
    else:
        exponent = 0.0
    exponent_constant = float(np.max(counts * np.exp(-exponent * lengths)))
    return CountingFit(
        constant=constant,
        exponent=exponent,
        exponent_constant=exponent_constant,
        sample_points=int(lengths.size),
    )


def growth_exponent(ls: LengthSpectrum) -> float:
    return counting_fit(ls).exponent


def spectrum_table(ls: LengthSpectrum) -> list[dict[str, Any]]:
    return [
        {
            "word": c.word,
            "length": c.length,
            "primitive": c.primitive,
            "oriented_multiplicity": c.oriented_multiplicity,
        }
        for c in ls.classes
    ]
