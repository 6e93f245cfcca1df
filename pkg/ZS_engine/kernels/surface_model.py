"""
Surface model
Hyperbolic cylinder and pants constructors, presentation validation and the
JSON surface loader
"""

import json
import math
from pathlib import Path

from pydantic import ValidationError

from ZS_engine.data_models.surface_models import (
    MoebiusMap,
    PantsSpec,
    SurfaceDescription,
    SurfaceModel,
    ValidationReport,
)
from ZS_engine.errors import InvalidLength, MalformedInput, NonHyperbolicElement
from ZS_engine.kernels.words import (
    is_cyclically_reduced,
    letter_matrices,
    walk_reduced_words,
)
from utils.util import log_debug


def translation_length_from_trace(trace: float, word: str = "<matrix>") -> float:
    if not abs(trace) > 2.0:
        raise NonHyperbolicElement(word, trace)
    return 2.0 * math.acosh(abs(trace) / 2.0)


def translation_length(m: MoebiusMap) -> float:
    """
    Translation length of a hyperbolic isometry, 2 arccosh(|tr m| / 2).

    Raises:
        NonHyperbolicElement: If |tr m| <= 2
    """
    return translation_length_from_trace(m.trace)


def build_cylinder(ell: float) -> SurfaceModel:
    """Hyperbolic cylinder: one generator, two funnels, chi = 0."""
    if not (math.isfinite(ell) and ell > 0):
        raise InvalidLength(f"Cylinder length must be positive and finite, got {ell}")
    generator = MoebiusMap.diagonal(math.exp(ell / 2.0))
    return SurfaceModel.create(
        kind="cylinder",
        generators=[generator],
        genus=0,
        funnel_count=2,
        boundary_lengths=[ell, ell],
        boundary_words=["a"],
    )


def build_pants(p: PantsSpec) -> SurfaceModel:
    """
    Pair of pants with boundary words a, b, ab of lengths l1, l2, l3.

    Solves tr a = 2cosh(l1/2), tr b = 2cosh(l2/2), tr ab = -2cosh(l3/2) with
    a = diag(lam, 1/lam), b = [[p, q], [r, t]] and qr = pt - 1 split evenly.
    """
    l1, l2, l3 = p.lengths()
    lam = math.exp(l1 / 2.0)
    trace_b = 2.0 * math.cosh(l2 / 2.0)
    trace_ab = -2.0 * math.cosh(l3 / 2.0)

    # lam * p + t / lam = tr(ab), p + t = tr(b)
    b11 = (trace_ab - trace_b / lam) / (lam - 1.0 / lam)
    b22 = trace_b - b11
    off_diagonal = b11 * b22 - 1.0
    b12 = math.sqrt(abs(off_diagonal))
    b21 = math.copysign(b12, off_diagonal)

    a = MoebiusMap.diagonal(lam)
    b = MoebiusMap.create(b11, b12, b21, b22)
    return SurfaceModel.create(
        kind="pants",
        generators=[a, b],
        genus=0,
        funnel_count=3,
        boundary_lengths=[l1, l2, l3],
        boundary_words=["a", "b", "ab"],
    )


def boundary_words(s: SurfaceModel) -> tuple[str, ...]:
    """Words of the boundary geodesics; empty when the presentation does not record them."""
    return s.boundary_words


def validate_presentation(s: SurfaceModel, depth: int, tolerance: float = 1e-12) -> ValidationReport:
    """
    Check that every cyclically reduced word of length <= depth is hyperbolic.

    Args:
        s: Surface presentation
        depth: Maximal word length
        tolerance: Traces with |tr| <= 2 + tolerance are rejected

    Returns:
        Report with the minimal translation length and the minimal per-letter rate

    Raises:
        NonHyperbolicElement: Naming the first offending word
    """
    if depth < 1:
        raise InvalidLength(f"Validation depth must be >= 1, got {depth}")
    matrices = letter_matrices(s.generators)
    rate_depth = max(depth, 2)

    words_checked = 0
    min_length, min_length_word = math.inf, ""
    min_rate, min_rate_word = math.inf, ""
    for first_letter in matrices:
        for word, product in walk_reduced_words(matrices, rate_depth, first_letter):
            if not is_cyclically_reduced(word):
                continue
            trace = product[0] + product[3]
            if abs(trace) <= 2.0 + tolerance:
                raise NonHyperbolicElement(word, trace)
            length = translation_length_from_trace(trace, word)
            if len(word) <= depth:
                words_checked += 1
                if length < min_length:
                    min_length, min_length_word = length, word
            if len(word) <= 2 and length / len(word) < min_rate:
                min_rate, min_rate_word = length / len(word), word

    log_debug("Surface", f"Validated {words_checked} words up to depth {depth}, min length {min_length:.6g}")
    return ValidationReport(
        valid=True,
        depth=depth,
        words_checked=words_checked,
        min_length=min_length,
        min_length_word=min_length_word,
        min_rate=min_rate,
        min_rate_word=min_rate_word,
    )


def surface_from_description(
    desc: SurfaceDescription,
    validation_depth: int = 4,
    trace_tolerance: float = 1e-12,
) -> SurfaceModel:
    """
    Build a SurfaceModel from the JSON description. Generator lists are
    validated up to `validation_depth` with traces |tr| <= 2 + trace_tolerance
    rejected.

    Raises:
        MalformedInput: Naming the inconsistent field
    """
    if desc.kind == "cylinder":
        if len(desc.lengths) != 1:
            raise MalformedInput("lengths", "a cylinder needs exactly one length")
        return build_cylinder(desc.lengths[0])

    if desc.kind == "pants":
        if len(desc.lengths) != 3:
            raise MalformedInput("lengths", "pants need exactly three lengths")
        return build_pants(PantsSpec.create(*desc.lengths))

    # generators
    if desc.genus is None:
        raise MalformedInput("genus", "required for kind 'generators'")
    if desc.funnels is None:
        raise MalformedInput("funnels", "required for kind 'generators'")
    if not desc.matrices:
        raise MalformedInput("matrices", "required for kind 'generators'")
    generators = []
    for index, row in enumerate(desc.matrices):
        if len(row) != 4:
            raise MalformedInput(f"matrices[{index}]", "expected four entries [a, b, c, d]")
        generators.append(MoebiusMap.create(*row))

    # a free group of rank 2h + M - 1 uniformizes genus h with M funnels
    expected_rank = 2 * desc.genus + desc.funnels - 1
    if len(generators) != expected_rank:
        raise MalformedInput("matrices", f"signature ({desc.genus}, {desc.funnels}) needs {expected_rank} generators")
    if len(desc.lengths) != desc.funnels:
        raise MalformedInput("lengths", f"expected {desc.funnels} boundary lengths")

    surface = SurfaceModel.create(
        kind="generators",
        generators=generators,
        genus=desc.genus,
        funnel_count=desc.funnels,
        boundary_lengths=desc.lengths,
    )
    validate_presentation(surface, validation_depth, trace_tolerance)
    return surface


def load_surface(path: str | Path, validation_depth: int = 4, trace_tolerance: float = 1e-12) -> SurfaceModel:
    try:
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise MalformedInput("<json>", f"line {e.lineno} column {e.colno}: {e.msg}")
    except OSError as e:
        raise MalformedInput("<file>", str(e))
    try:
        desc = SurfaceDescription.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise MalformedInput(field, first["msg"])
    return surface_from_description(desc, validation_depth, trace_tolerance)
