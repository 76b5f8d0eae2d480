import csv
import json

import numpy as np
import pytest

from kuramoto_daido.harness import cli
from kuramoto_daido.harness.config import (ExperimentSpec, SpecError,
                                           load_spec_file, spec_from_mapping)
from kuramoto_daido.harness.svg import line_plot


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spec_defaults_and_grid():
    spec = ExperimentSpec()
    assert spec.model().gamma == 1.0
    with pytest.raises(SpecError):
        spec.K_grid()
    assert spec.K_grid(required=False) == []
    grid = ExperimentSpec(K_min=1.0, K_max=2.0, K_count=3).K_grid()
    np.testing.assert_allclose(grid, [1.0, 1.5, 2.0])
    with pytest.raises(SpecError):
        ExperimentSpec(K_min=2.0, K_max=1.0, K_count=3).K_grid()
    with pytest.raises(SpecError):
        ExperimentSpec(K_min=1.0, K_max=2.0, K_count=0).K_grid()
    with pytest.raises(SpecError):
        ExperimentSpec(K_min=1.0, K_count=3).K_grid()


def test_spec_validation():
    with pytest.raises(SpecError):
        ExperimentSpec(simulator="sde").validate()
    with pytest.raises(SpecError):
        ExperimentSpec(dt=0.5).validate()
    with pytest.raises(SpecError):
        ExperimentSpec(burn_in=500.0).validate()
    with pytest.raises(SpecError):
        ExperimentSpec(density={"kind": "cauchy"}).validate()


def test_spec_files(tmp_path):
    toml = tmp_path / "exp.toml"
    toml.write_text('[density]\nkind = "gaussian"\nsigma = 2.0\n'
                    '[coupling]\nalpha1 = 0.1\n[K]\nmin = 1\nmax = 2\ncount = 5\n'
                    '[run]\nseed = 3\n[tolerance]\namplitude = 0.2\n')
    spec = load_spec_file(toml)
    assert spec.density == {"kind": "gaussian", "sigma": 2.0}
    assert spec.alpha1 == 0.1 and spec.seed == 3 and spec.amplitude_tol == 0.2
    assert len(spec.K_grid()) == 5

    js = tmp_path / "exp.json"
    js.write_text(json.dumps({"K": {"value": 2.5}, "simulator": {"kind": "finite-n", "n": 100}}))
    spec = load_spec_file(js)
    assert spec.K == 2.5 and spec.simulator == "finite-n" and spec.n == 100

    with pytest.raises(SpecError):
        spec_from_mapping({"colour": {}})
    with pytest.raises(SpecError):
        spec_from_mapping({"run": {"speed": 1}})
    bad = tmp_path / "bad.toml"
    bad.write_text("[run\n")
    with pytest.raises(SpecError):
        load_spec_file(bad)
    with pytest.raises(SpecError):
        load_spec_file(tmp_path / "missing.toml")


def test_cli_transition(capsys, tmp_path):
    code, out, _ = run(["transition", "--alpha1", str(np.pi / 6), "--json",
                        "--out", str(tmp_path)], capsys)
    assert code == 0
    data = json.loads(out)
    assert abs(data["K_c"] - 4 / np.sqrt(3)) < 1e-10
    assert json.loads((tmp_path / "transition.json").read_text()) == data


def test_cli_transition_gaussian(capsys):
    code, out, _ = run(["transition", "--density", "gaussian", "--sigma", "1"], capsys)
    assert code == 0
    assert "K_c = 1.595769122" in out


def test_cli_coeffs_verdict(capsys):
    code, out, _ = run(["coeffs", "--h", "0.5", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "subcritical, branch below K_c, unstable"
    assert data["kind"] == "transcritical"
    np.testing.assert_allclose(data["p2"], [2.0, 0.0], atol=1e-10)


def test_cli_exit_codes(capsys):
    assert run(["coeffs", "--h", "2"], capsys)[0] == 3
    assert run(["transition", "--alpha1", "2"], capsys)[0] == 3
    assert run(["eigen", "--K-min", "2", "--K-max", "1", "--K-count", "3"], capsys)[0] == 1
    assert run(["eigen"], capsys)[0] == 1
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        cli.main(["transition", "--K", "abc"])
    assert info.value.code == 1


def test_cli_ambiguous(capsys, tmp_path):
    cfg = tmp_path / "twin.json"
    cfg.write_text(json.dumps({"density": {"kind": "lorentzian_mixture",
                                           "components": [[0.5, -1, 0.5], [0.5, 1, 0.5]]}}))
    code, _, err = run(["transition", "--config", str(cfg)], capsys)
    assert code == 2 and "ambiguous" in err


def test_cli_eigen_csv(capsys, tmp_path):
    code, out, _ = run(["eigen", "--alpha1", "0.3", "--K-min", "1.2", "--K-max", "3.2",
                        "--K-count", "5", "--out", str(tmp_path)], capsys)
    assert code == 0
    rows = list(csv.DictReader((tmp_path / "eigen.csv").open()))
    assert list(rows[0]) == list(cli.EIGEN_COLUMNS)
    for row in rows:
        K = float(row["K"])
        lam = complex(float(row["re_lambda"]), float(row["im_lambda"]))
        assert abs(lam - (K / 2 * np.exp(0.3j) - 1)) < 1e-7
        assert row["branch"] == ("ordinary" if lam.real > 0 else "generalized")


def test_cli_simulate_and_sweep(capsys, tmp_path):
    common = ["--m-nodes", "60", "--t-end", "10", "--burn-in", "5", "--out", str(tmp_path)]
    code, out, _ = run(["simulate", "--K", "2.5", "--json"] + common, capsys)
    assert code == 0
    data = json.loads(out)
    assert data["n_samples"] == 1001
    first = (tmp_path / "trace.csv").read_text()
    run(["simulate", "--K", "2.5"] + common, capsys)
    assert (tmp_path / "trace.csv").read_text() == first

    code, out, _ = run(["sweep", "--K-min", "1.5", "--K-max", "2.5", "--K-count", "3",
                        "--svg", "--jobs", "2"] + common, capsys)
    assert code == 0
    rows = list(csv.DictReader((tmp_path / "sweep.csv").open()))
    assert len(rows) == 3
    assert float(rows[0]["r0_predicted"]) == 0.0
    assert (tmp_path / "sweep.svg").read_text().startswith("<svg")


def test_cli_simulate_needs_single_K(capsys):
    code, _, err = run(["simulate", "--K-min", "1", "--K-max", "2", "--K-count", "2"], capsys)
    assert code == 1


def test_svg_plot():
    svg = line_plot([{"x": [0, 1, 2], "y": [0, 1, float("nan")], "label": "a"}],
                    xlabel="K", ylabel="r", title="t")
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert "nan" not in svg
