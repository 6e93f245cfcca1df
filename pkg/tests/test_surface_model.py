import json
import math
import random

import pytest

from ZS_engine.data_models import MoebiusMap, PantsSpec
from ZS_engine.errors import InvalidLength, InvalidMatrix, MalformedInput, NonHyperbolicElement
from ZS_engine.kernels.surface_model import (
    boundary_words,
    build_cylinder,
    build_pants,
    load_surface,
    translation_length,
    validate_presentation,
)
from ZS_engine.kernels.words import word_matrix


def _write(tmp_path, payload, name="surface.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload) if not isinstance(payload, str) else payload, encoding="utf-8")
    return str(path)


def test_translation_length_of_diagonal():
    m = MoebiusMap.diagonal(math.exp(1.5))
    assert translation_length(m) == pytest.approx(3.0, abs=1e-12)


def test_translation_length_rejects_parabolic_and_elliptic():
    with pytest.raises(NonHyperbolicElement):
        translation_length(MoebiusMap.create(1.0, 1.0, 0.0, 1.0))
    with pytest.raises(NonHyperbolicElement):
        translation_length(MoebiusMap.create(0.0, -1.0, 1.0, 0.0))


def _random_sl2(rng):
    # well-conditioned positive-determinant matrices, normalized by create
    while True:
        entries = [rng.uniform(-2.0, 2.0) for _ in range(4)]
        if 0.25 <= entries[0] * entries[3] - entries[1] * entries[2] <= 4.0:
            return MoebiusMap.create(*entries)


def test_translation_length_conjugation_and_inversion_invariant():
    m = MoebiusMap.create(3.0, 1.0, 2.0, 1.0)
    length = translation_length(m)
    assert translation_length(m.inverse()) == pytest.approx(length, abs=1e-12)

    rng = random.Random(17)
    for _ in range(100):
        g = _random_sl2(rng)
        conjugate = g @ m @ g.inverse()
        assert translation_length(conjugate) == pytest.approx(length, abs=1e-10)


def test_moebius_normalizes_determinant():
    m = MoebiusMap.create(2.0, 0.0, 0.0, 8.0)
    assert abs(m.determinant - 1.0) <= 1e-12
    with pytest.raises(InvalidMatrix):
        MoebiusMap.create(1.0, 2.0, 2.0, 1.0)


def test_cylinder():
    s = build_cylinder(1.0)
    assert s.chi == 0
    assert s.genus == 0 and s.funnel_count == 2
    assert s.boundary_lengths == (1.0, 1.0)
    assert translation_length(s.generators[0]) == pytest.approx(1.0, abs=1e-12)
    assert boundary_words(s) == ("a",)
    with pytest.raises(InvalidLength):
        build_cylinder(0.0)


@pytest.mark.parametrize("lengths", [(1.0, 2.0, 3.0), (1.0, 1.0, 1.0), (0.5, 2.5, 0.7), (4.0, 4.0, 4.0)])
def test_pants_boundary_round_trip(lengths):
    s = build_pants(PantsSpec.create(*lengths))
    assert s.chi == -1
    assert boundary_words(s) == ("a", "b", "ab")
    for word, expected in zip(s.boundary_words, lengths):
        assert translation_length(word_matrix(word, s.generators)) == pytest.approx(expected, abs=1e-10)


def test_pants_rejects_nonpositive_lengths():
    with pytest.raises(InvalidLength):
        PantsSpec.create(1.0, 0.0, 1.0)
    with pytest.raises(InvalidLength):
        PantsSpec.create(1.0, -2.0, 1.0)


def test_pants_lengths_permutation_invariant():
    rng = random.Random(7)
    lengths = [rng.uniform(0.5, 3.0) for _ in range(3)]
    reference = sorted(build_pants(PantsSpec.create(*lengths)).boundary_lengths)
    for _ in range(5):
        rng.shuffle(lengths)
        assert sorted(build_pants(PantsSpec.create(*lengths)).boundary_lengths) == reference


def test_validate_presentation_reports_rates():
    s = build_pants(PantsSpec.create(1.0, 2.0, 3.0))
    report = validate_presentation(s, 4)
    assert report.valid
    assert report.min_length == pytest.approx(1.0, abs=1e-10)
    assert report.min_rate == pytest.approx(1.0, abs=1e-10)
    assert report.words_checked > 0


def test_validate_presentation_names_offending_word(tmp_path):
    # a parabolic second generator
    path = _write(
        tmp_path,
        {"kind": "generators", "genus": 0, "funnels": 3, "lengths": [1, 1, 1], "matrices": [[2, 0, 0, 0.5], [1, 1, 0, 1]]},
    )
    with pytest.raises(NonHyperbolicElement) as info:
        load_surface(path)
    assert info.value.word
    assert abs(info.value.trace) <= 2.0 + 1e-12


def test_load_surface_kinds(tmp_path):
    assert load_surface(_write(tmp_path, {"kind": "cylinder", "lengths": [2.0]})).chi == 0
    pants = load_surface(_write(tmp_path, {"kind": "pants", "lengths": [1, 2, 3]}))
    assert pants.boundary_lengths == (1.0, 2.0, 3.0)


@pytest.mark.parametrize(
    "payload, field",
    [
        ("{not json", "<json>"),
        ({"kind": "torus", "lengths": [1.0]}, "kind"),
        ({"kind": "pants", "lengths": [1.0, 2.0]}, "lengths"),
        ({"kind": "cylinder", "lengths": [1.0], "colour": "red"}, "colour"),
        ({"kind": "generators", "funnels": 1, "lengths": [1.0], "matrices": [[2, 0, 0, 0.5]]}, "genus"),
    ],
)
def test_load_surface_malformed_names_field(tmp_path, payload, field):
    with pytest.raises(MalformedInput) as info:
        load_surface(_write(tmp_path, payload))
    assert info.value.field == field
