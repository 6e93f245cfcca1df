import json
import math
from pathlib import Path

import mpmath
import pandas as pd
import pytest
import yaml

from ZS_engine.cli import build_parser, main


CONFIGS = Path(__file__).resolve().parent.parent / "configs"
DEFAULT_CONFIG = str(CONFIGS / "default_config.yaml")
PANTS = str(CONFIGS / "pants_123.json")
CYLINDER = str(CONFIGS / "cylinder_1.json")
CHART = str(CONFIGS / "example_chart.json")


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    monkeypatch.delenv("ZS_PRECISION", raising=False)


def _run(tmp_path, *argv):
    return main(["--config", DEFAULT_CONFIG, "--out", str(tmp_path), *argv])


def _json(tmp_path, name):
    return json.loads((tmp_path / name).read_text(encoding="utf-8"))


def test_spectrum_of_pants(tmp_path):
    assert _run(tmp_path, "spectrum", PANTS, "--lmax", "4") == 0
    frame = pd.read_csv(tmp_path / "spectrum.csv")
    assert list(frame.columns) == ["word", "length", "primitive", "oriented_multiplicity"]
    assert frame["length"].iloc[0] == pytest.approx(1.0, abs=1e-12)
    assert frame["length"].is_monotonic_increasing


def test_spectrum_of_cylinder(tmp_path):
    assert _run(tmp_path, "spectrum", CYLINDER, "--lmax", "10") == 0
    frame = pd.read_csv(tmp_path / "spectrum.csv")
    assert len(frame) == 1
    assert frame["word"].iloc[0] == "a"


@pytest.mark.parametrize(
    "argv, output",
    [
        (["spectrum", PANTS, "--lmax", "6"], "spectrum.csv"),
        (["zeta", PANTS, "--s", "2", "3+1j", "--lmax", "6"], "zeta.csv"),
        (["detz", PANTS, "--s", "2", "--sarnak", "--lmax", "6"], "detz.csv"),
        (["resonances", "--cylinder", "1", "--rect", "-2.5", "0.5", "-3", "3"], "resonances.json"),
        (["sweep", "--pants-uniform", "--lmin", "2", "--lmax", "3", "--steps", "3"], "sweep.csv"),
        (["bounds", PANTS, "--lmax", "6", "--bers-t", "0.1"], "bounds.json"),
    ],
)
def test_output_independent_of_threads(tmp_path, argv, output):
    outputs = []
    for threads in (1, 4, 8):
        out = tmp_path / f"t{threads}"
        assert main(["--config", DEFAULT_CONFIG, "--out", str(out), "--threads", str(threads), *argv]) == 0
        outputs.append((out / output).read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


def test_zeta_of_cylinder_at_one(tmp_path):
    assert _run(tmp_path, "zeta", CYLINDER, "--s", "1", "2+3j") == 0
    frame = pd.read_csv(tmp_path / "zeta.csv")
    assert len(frame) == 2
    with mpmath.workdps(30):
        expected = float(2 * mpmath.log(mpmath.qp(mpmath.exp(-1))))
    assert frame["value_re"].iloc[0] == pytest.approx(expected, abs=1e-12)
    assert frame["value_im"].iloc[0] == 0.0
    assert frame["s_im"].iloc[1] == 3.0


def test_zeta_grid_order(tmp_path):
    assert _run(tmp_path, "zeta", PANTS, "--s-grid", "2", "3", "0", "1", "2", "3", "--lmax", "6") == 0
    frame = pd.read_csv(tmp_path / "zeta.csv")
    assert list(zip(frame["s_re"], frame["s_im"])) == [
        (2.0, 0.0), (2.0, 0.5), (2.0, 1.0), (3.0, 0.0), (3.0, 0.5), (3.0, 1.0)
    ]
    assert not frame["heuristic"].any()


def test_zeta_outside_convergence_region_exits_1(tmp_path):
    assert _run(tmp_path, "zeta", PANTS, "--s", "0.5", "--lmax", "5") == 1
    assert not (tmp_path / "zeta.csv").exists()


def test_detz_with_laplacian_row(tmp_path):
    assert _run(tmp_path, "detz", CYLINDER, "--s", "1", "2", "--G", "0.5", "--det-laplacian") == 0
    frame = pd.read_csv(tmp_path / "detz.csv")
    assert list(frame["quantity"]) == ["log_D", "log_D", "log_det_laplacian"]
    # chi = 0: log D(1) = G + log Z(1) = log det Delta
    assert frame["value_re"].iloc[2] == pytest.approx(frame["value_re"].iloc[0], abs=1e-13)


def test_detz_sarnak_excludes_constants(tmp_path):
    assert _run(tmp_path, "detz", PANTS, "--s", "2", "--sarnak", "--F", "1") == 2


def test_resonances_edge_on_lattice(tmp_path, capsys):
    assert _run(tmp_path, "resonances", "--cylinder", "1", "--rect", "-3", "0.5", "-7", "7") == 1
    assert "suggested perturbation" in capsys.readouterr().err


def test_resonances_help_names_the_nudge(capsys):
    with pytest.raises(SystemExit) as info:
        build_parser().parse_args(["resonances", "--help"])
    assert info.value.code == 0
    text = " ".join(capsys.readouterr().out.split())
    assert "-3 0.5 -7 7" in text
    assert "--nudge" in text


def test_resonances_with_nudge(tmp_path):
    assert _run(tmp_path, "resonances", "--cylinder", "1", "--rect", "-3", "0.5", "-7", "7", "--nudge", "2") == 0
    report = _json(tmp_path, "resonances.json")
    # k = 0..3 and n = -1, 0, 1, each of multiplicity 2
    assert report["total_multiplicity"] == 24
    assert report["lattice_total_multiplicity"] == 24
    assert report["lattice_max_deviation"] <= 1e-8
    assert report["rect"][0] < -3.0
    assert all(zero["m"] == 2 for zero in report["zeros"])


def test_invariants_from_chart_bump(tmp_path):
    assert _run(tmp_path, "invariants", CHART, "--aj", "3", "1.0", "--compactness", "-1.0") == 0
    report = _json(tmp_path, "invariants.json")
    assert report["conformal_factor"] == "chart"
    assert abs(report["a1"]) <= report["a1_error"]
    assert report["jensen"]["holds"]
    assert report["leading_term"]["j"] == 3
    assert [r["quantity"] for r in report["compactness"]][0] == "log_D1_lower"


def test_invariants_from_phi_csv(tmp_path):
    chart = json.loads(Path(CHART).read_text(encoding="utf-8"))
    chart.pop("bump")
    chart_path = tmp_path / "chart.json"
    chart_path.write_text(json.dumps(chart), encoding="utf-8")
    phi_path = tmp_path / "phi.csv"
    pd.DataFrame([[0.0] * chart["n_theta"]] * chart["n_t"]).to_csv(phi_path, header=False, index=False)

    assert _run(tmp_path, "invariants", str(chart_path), str(phi_path)) == 0
    report = _json(tmp_path, "invariants.json")
    assert report["a0"] == 0.0 and report["polyakov_logD1"] == 0.0
    # no phi, no bump
    assert _run(tmp_path, "invariants", str(chart_path)) == 2


def test_invariants_named_bump(tmp_path):
    assert _run(tmp_path, "invariants", CHART, "--bump", "plateau") == 0
    assert _json(tmp_path, "invariants.json")["conformal_factor"] == "plateau"
    assert _run(tmp_path, "invariants", CHART, "--bump", "missing") == 2


def test_sweep(tmp_path):
    assert _run(tmp_path, "sweep", "--pants-uniform", "--lmin", "2", "--lmax", "3", "--steps", "3") == 0
    frame = pd.read_csv(tmp_path / "sweep.csv")
    assert list(frame["ell"]) == [2.0, 2.5, 3.0]
    assert list(frame["systole"]) == pytest.approx([2.0, 2.5, 3.0], abs=1e-10)
    assert _run(tmp_path, "sweep", "--lmin", "2", "--lmax", "3", "--steps", "3") == 2


def test_bounds(tmp_path):
    assert _run(tmp_path, "bounds", PANTS, "--lmax", "6", "--bers-t", "0.1", "0.2") == 0
    report = _json(tmp_path, "bounds.json")
    assert report["surface"]["chi"] == -1
    assert report["surface"]["zero_volume"] == pytest.approx(2 * math.pi, abs=1e-6)
    quantities = [r["quantity"] for r in report["reports"]]
    assert quantities == ["systole_lower_bound", "minus_log_z1_nonnegative", "bers_curve", "bers_curve"]
    assert all(r["holds"] for r in report["reports"])


def test_bers_needs_pants(tmp_path):
    assert _run(tmp_path, "bounds", CYLINDER, "--bers-t", "0.1") == 2


def test_malformed_surface_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert _run(tmp_path, "spectrum", str(bad), "--lmax", "3") == 2


def test_usage_errors_exit_2(tmp_path):
    assert main(["no-such-command"]) == 2
    assert _run(tmp_path, "zeta", PANTS) == 2


def test_environment_precision_wins(tmp_path, monkeypatch):
    monkeypatch.setenv("ZS_PRECISION", "20")
    assert _run(tmp_path, "--prec", "15", "invariants", CHART) == 0
    # numbers beyond double precision are written as strings
    assert isinstance(_json(tmp_path, "invariants.json")["a0"], str)

    monkeypatch.delenv("ZS_PRECISION")
    assert _run(tmp_path, "--prec", "15", "invariants", CHART) == 0
    assert isinstance(_json(tmp_path, "invariants.json")["a0"], float)


def test_invalid_precision_env(tmp_path, monkeypatch):
    monkeypatch.setenv("ZS_PRECISION", "many")
    assert _run(tmp_path, "spectrum", CYLINDER, "--lmax", "3") == 2


def _config_with(tmp_path, **sections):
    config = yaml.safe_load(Path(DEFAULT_CONFIG).read_text(encoding="utf-8"))
    for section, values in sections.items():
        config[section].update(values)
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(config), encoding="utf-8")
    return str(path)


def test_high_precision_json_keeps_its_digits(tmp_path, monkeypatch):
    monkeypatch.setenv("ZS_PRECISION", "30")
    assert _run(tmp_path, "bounds", CYLINDER) == 0
    systole_report = _json(tmp_path, "bounds.json")["reports"][0]
    R = systole_report["context"]["R"]
    assert isinstance(R, str)
    with mpmath.workdps(40):
        expected = -2 * mpmath.log(mpmath.qp(mpmath.exp(-1)))
        assert abs(mpmath.mpf(R) - expected) <= mpmath.mpf(10) ** -28
    # double-valued fields are not padded beyond the 17 digits a double carries
    assert systole_report["lhs"] == format(float(systole_report["lhs"]), ".17g")


def test_trace_tolerance_from_config(tmp_path):
    # a = diag(2, 1/2) has trace 2.5
    surface = tmp_path / "generators.json"
    surface.write_text(
        json.dumps(
            {"kind": "generators", "genus": 0, "funnels": 2, "lengths": [2 * math.log(2)] * 2, "matrices": [[2, 0, 0, 0.5]]}
        ),
        encoding="utf-8",
    )
    assert _run(tmp_path, "spectrum", str(surface), "--lmax", "3") == 0
    config = _config_with(tmp_path, tolerances={"hyperbolic_trace": 1.0})
    assert main(["--config", config, "--out", str(tmp_path), "spectrum", str(surface), "--lmax", "3"]) == 2


def test_merge_tolerance_from_config(tmp_path):
    config = _config_with(tmp_path, tolerances={"merge": 20.0})
    argv = ["resonances", "--cylinder", "1", "--rect", "-2.5", "0.5", "-3", "3"]
    assert main(["--config", config, "--out", str(tmp_path), *argv]) == 0
    report = _json(tmp_path, "resonances.json")
    # k = 0, 1, 2 on the real axis, each of multiplicity 2, merged into one point
    assert len(report["zeros"]) == 1
    assert report["total_multiplicity"] == 6


def test_bound_tolerance_from_config(tmp_path):
    assert _run(tmp_path, "invariants", CHART, "--compactness", "1.0") == 0
    assert not _json(tmp_path, "invariants.json")["compactness"][0]["holds"]

    config = _config_with(tmp_path, tolerances={"bound_relative": 10.0})
    assert main(["--config", config, "--out", str(tmp_path), "invariants", CHART, "--compactness", "1.0"]) == 0
    assert _json(tmp_path, "invariants.json")["compactness"][0]["holds"]
