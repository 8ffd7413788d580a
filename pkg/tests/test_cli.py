import json
import math

import numpy as np
import pytest

from src.harness import read_snapshots
from src.main import main
from src.utils.format_utils import read_csv

SQUARE_RUN = {
    "domain": "unit-square",
    "spacing_h": "0.015625",
    "time_step_dt": "0.05",
    "final_time": "0.2",
    "forcing": "bump",
    "filter_order": "1",
    "snapshot_count": "5",
    "gamma": "2.5",
}


def write_config(path, values):
    path.write_text("".join(f"{k}={v}\n" for k, v in values.items()))
    return path


def run(command, out, config=None, *extra):
    argv = [command, "--out", str(out)]
    if config is not None:
        argv += ["--config", str(config)]
    return main(argv + list(extra))


def read_index(out, command):
    return json.loads((out / command / "index.json").read_text())


class TestPencil:
    def test_l_shape_corner(self, tmp_path):
        assert main(["pencil", "--theta", "4.712388980", "--out", str(tmp_path)]) == 0
        (row,) = read_csv(tmp_path / "pencil" / "strips.csv")
        assert float(row["delta_minus"]) == pytest.approx(2 / 3, abs=1e-7)
        assert float(row["delta_plus"]) == pytest.approx(2 / 3, abs=1e-7)
        assert row["method"] == "closed-form"
        assert (tmp_path / "pencil" / "strips.txt").exists()
        eigenvalues = [float(r["re"]) for r in read_csv(tmp_path / "pencil" / "eigenvalues.csv")]
        assert min(lam for lam in eigenvalues if lam > 0) == pytest.approx(2 / 3, abs=1e-7)
        assert read_index(tmp_path, "pencil")["cross_check_error"] < 1e-7

    @pytest.mark.parametrize("theta", [math.pi / 2, 2 * math.pi / 3, math.pi, 2 * math.pi])
    def test_shooting_agrees_with_closed_form(self, tmp_path, theta):
        code = main(["pencil", "--theta", repr(theta), "--out", str(tmp_path), "--set", "pencil_imag_window=0"])
        assert code == 0
        index = read_index(tmp_path, "pencil")
        assert index["delta_plus"] == pytest.approx(math.pi / theta, abs=1e-12)
        assert index["cross_check_error"] < 1e-8

    def test_anisotropic_uses_shooting(self, tmp_path):
        code = main(
            [
                "pencil",
                "--theta",
                repr(math.pi / 2),
                "--out",
                str(tmp_path),
                "--set",
                "pencil_coefficients=4 0 1",
                "--set",
                "pencil_imag_window=0",
            ]
        )
        assert code == 0
        (row,) = read_csv(tmp_path / "pencil" / "strips.csv")
        assert row["method"] == "shooting"
        assert float(row["delta_plus"]) == pytest.approx(math.pi / (2 * math.atan(2.0)), abs=1e-6)

    def test_weight_admissibility(self, tmp_path):
        code = main(
            ["pencil", "--theta", repr(3 * math.pi / 2), "--out", str(tmp_path), "--set", "gamma=2", "--set", "weight_a=-0.5"]
        )
        assert code == 0
        assert read_index(tmp_path, "pencil")["admissible_interval"] == "[-1, -0.3333333333)"
        rows = read_csv(tmp_path / "pencil" / "admissibility.csv")
        assert all(r["pass"] == "true" for r in rows)

    def test_right_angle_admissibility(self, tmp_path):
        code = main(
            ["pencil", "--theta", repr(math.pi / 2), "--out", str(tmp_path), "--set", "gamma=2", "--set", "weight_a=0"]
        )
        assert code == 0
        assert read_index(tmp_path, "pencil")["weight_passes"]

    def test_missing_theta_is_config_error(self, tmp_path):
        assert main(["pencil", "--out", str(tmp_path)]) == 2

    def test_non_elliptic_coefficients(self, tmp_path):
        code = main(["pencil", "--theta", "1.5", "--out", str(tmp_path), "--set", "pencil_coefficients=1 2 1"])
        assert code == 3


class TestUsage:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as e:
            main(["frobnicate"])
        assert e.value.code == 2

    def test_malformed_config(self, tmp_path):
        config = write_config(tmp_path / "bad.env", {"spacing_h": "abc"})
        assert run("solve-linear", tmp_path, config) == 2

    def test_unknown_forcing(self, tmp_path):
        config = write_config(tmp_path / "bad.env", {"forcing": "lightning"})
        assert run("solve-linear", tmp_path, config) == 2


class TestZeroForcing:
    def test_snapshots_zero_and_report_has_nothing(self, tmp_path):
        config = write_config(
            tmp_path / "zero.env",
            {"domain": "unit-square", "spacing_h": "0.125", "time_step_dt": "0.1", "final_time": "0.5", "forcing": "zero"},
        )
        assert run("solve-linear", tmp_path, config) == 0
        _, snapshots = read_snapshots(tmp_path / "solve-linear")
        assert len(snapshots) == 6
        assert all(not np.any(u) for _, u in snapshots)

        assert run("besov-estimate", tmp_path, config) == 0
        assert read_csv(tmp_path / "besov-estimate" / "besov.csv") == []
        assert run("report", tmp_path, config) == 2

    def test_report_without_estimates(self, tmp_path):
        assert run("report", tmp_path) == 2


class TestPipeline:
    def test_every_output_feeds_the_report(self, tmp_path):
        config = write_config(tmp_path / "square.env", SQUARE_RUN)
        for command in ("solve-linear", "besov-estimate", "nterm", "hoelder-time", "report"):
            assert run(command, tmp_path, config) == 0, command

        besov = read_csv(tmp_path / "besov-estimate" / "besov.csv")
        assert [float(r["t"]) for r in besov] == pytest.approx([0.05, 0.1, 0.15, 0.2])
        assert len(read_csv(tmp_path / "nterm" / "nterm.csv")) == 4
        (hoelder,) = read_csv(tmp_path / "hoelder-time" / "hoelder.csv")
        assert 0 < float(hoelder["vector_quotient"]) < math.inf

        report = read_index(tmp_path, "report")["report"]
        assert len(report["snapshots"]) == 4
        assert report["ceiling"] == 2.5
        text = (tmp_path / "report" / "regularity.txt").read_text()
        assert "adaptive_gain_status" in text and "defined_derivative_orders: none" in text
        assert "fit_window_sobolev: none" not in text

    def test_rate_tables_and_fit_windows(self, tmp_path):
        config = write_config(tmp_path / "square.env", SQUARE_RUN)
        for command in ("solve-linear", "besov-estimate", "nterm"):
            assert run(command, tmp_path, config) == 0, command

        for row in read_csv(tmp_path / "besov-estimate" / "besov.csv"):
            lo, hi = int(row["j_min_sobolev"]), int(row["j_max_sobolev"])
            assert 1 <= lo < hi
            assert int(row["j_max_adaptive"]) > int(row["j_min_adaptive"])
        smoothness = (tmp_path / "besov-estimate" / "smoothness.txt").read_text()
        assert "scale: sobolev" in smoothness and "scale: adaptivity" in smoothness
        assert f"window: {lo}..{hi}" in smoothness

        rate_files = read_index(tmp_path, "nterm")["rate_files"]
        assert len(rate_files) == 4
        rows = read_csv(tmp_path / "nterm" / rate_files[-1]["file"])
        assert list(rows[0]) == ["N", "sigma", "s_est"]
        assert [int(r["N"]) for r in rows] == list(range(len(rows)))
        sigma = [float(r["sigma"]) for r in rows]
        assert all(a >= b for a, b in zip(sigma, sigma[1:]))
        assert sigma[-1] == 0.0
        assert math.isnan(float(rows[1]["s_est"]))
        assert any(math.isfinite(float(r["s_est"])) for r in rows)

    def test_deterministic_outputs(self, tmp_path):
        config = write_config(tmp_path / "square.env", SQUARE_RUN)
        for name in ("a", "b"):
            assert run("solve-linear", tmp_path / name, config, "--seed", "11") == 0
            assert run("besov-estimate", tmp_path / name, config) == 0
        for relative in ("solve-linear/times.csv", "solve-linear/snapshots/u_000004.csv", "besov-estimate/besov.csv"):
            assert (tmp_path / "a" / relative).read_bytes() == (tmp_path / "b" / relative).read_bytes()

    def test_manufactured_error_reported(self, tmp_path):
        values = dict(SQUARE_RUN, forcing="manufactured", spacing_h="0.0625", time_step_dt="0.00390625", final_time="0.25")
        assert run("solve-linear", tmp_path, write_config(tmp_path / "mms.env", values)) == 0
        assert read_index(tmp_path, "solve-linear")["max_error"] < 5e-3


class TestKondratiev:
    def test_singular_model(self, tmp_path):
        config = write_config(
            tmp_path / "k.env",
            {"spacing_h": "0.125", "kondratiev_m": "2", "kondratiev_p": "2", "kondratiev_a": "0.5 2.0"},
        )
        assert run("kondratiev-norm", tmp_path, config) == 0
        rows = read_csv(tmp_path / "kondratiev-norm" / "kondratiev.csv")
        assert [r["status"] for r in rows] == ["FINITE", "DIVERGENT"]
        assert all(r["agrees"] == "true" for r in rows)
        assert all(int(r["cells"]) == 192 for r in rows)
        assert all(int(r["refinement_depth"]) >= 1 for r in rows)
        text = (tmp_path / "kondratiev-norm" / "kondratiev.txt").read_text()
        assert "value: DIVERGENT" in text and "cells: 192" in text

    def test_unknown_source(self, tmp_path):
        config = write_config(tmp_path / "k.env", {"kondratiev_source": "tea-leaves"})
        assert run("kondratiev-norm", tmp_path, config) == 2


class TestSemilinear:
    VALUES = {
        "domain": "unit-square",
        "spacing_h": "0.125",
        "time_step_dt": "0.1",
        "final_time": "0.5",
        "forcing": "manufactured",
        "power": "2",
        "probes": "2",
    }

    def test_small_epsilon_converges(self, tmp_path):
        config = write_config(tmp_path / "s.env", dict(self.VALUES, epsilon="0.001"))
        assert run("solve-semilinear", tmp_path, config) == 0
        index = read_index(tmp_path, "solve-semilinear")
        assert index["contraction"]["contracting"]
        assert index["smallness"]["passed"]
        assert len(read_csv(tmp_path / "solve-semilinear" / "history.csv")) == index["iterations"] + 1

    def test_failed_smallness_exits_numerical(self, tmp_path):
        config = write_config(tmp_path / "s.env", dict(self.VALUES, epsilon="100"))
        assert run("solve-semilinear", tmp_path, config) == 3
        assert "passed: false" in (tmp_path / "solve-semilinear" / "smallness.txt").read_text()


# --- Long acceptance runs ---


@pytest.mark.slow
class TestAcceptance:
    def test_l_shape_gain_and_square_control(self, tmp_path):
        base = {
            "spacing_h": "0.0078125",
            "time_step_dt": "0.001",
            "final_time": "0.5",
            "forcing": "bump",
            "filter_order": "3",
            "snapshot_count": "11",
        }
        l_shape = write_config(tmp_path / "l.env", dict(base, domain="l-shape"))
        for command in ("solve-linear", "besov-estimate", "nterm", "report"):
            assert run(command, tmp_path / "l", l_shape) == 0, command
        report = read_index(tmp_path / "l", "report")["report"]
        assert len(report["snapshots"]) >= 5
        for snapshot in report["snapshots"]:
            assert snapshot["s_adaptive"] - snapshot["s_sobolev"] >= 0.5
            assert min(snapshot["r2_sobolev"], snapshot["r2_adaptive"]) >= 0.9
        assert report["adaptive_gain"] > 0.5
        assert report["gain"] > 0

        square = write_config(tmp_path / "q.env", dict(base, domain="unit-square"))
        for command in ("solve-linear", "besov-estimate", "report"):
            assert run(command, tmp_path / "q", square) == 0, command
        assert abs(read_index(tmp_path / "q", "report")["report"]["adaptive_gain"]) <= 0.15

    def test_hoelder_quotient_stable_under_time_refinement(self, tmp_path):
        quotients = []
        for dt in ("0.01", "0.005"):
            config = write_config(
                tmp_path / f"h{dt}.env",
                {"spacing_h": "0.03125", "time_step_dt": dt, "final_time": "0.5", "forcing": "bump", "snapshot_count": "11"},
            )
            out = tmp_path / dt
            assert run("solve-linear", out, config) == 0
            assert run("hoelder-time", out, config) == 0
            (row,) = read_csv(out / "hoelder-time" / "hoelder.csv")
            quotients.append(float(row["vector_quotient"]))
        assert all(math.isfinite(q) for q in quotients)
        assert abs(quotients[1] - quotients[0]) < 0.1 * quotients[1]

    def test_fixed_point_contraction(self, tmp_path):
        values = {
            "domain": "unit-square",
            "spacing_h": "0.03125",
            "time_step_dt": "0.03125",
            "final_time": "0.5",
            "forcing": "manufactured",
            "power": "2",
            "probes": "4",
            "fixed_point_tol": "1e-6",
        }
        qs = []
        for epsilon in ("0.001", "0.0005"):
            out = tmp_path / epsilon
            config = write_config(tmp_path / f"{epsilon}.env", dict(values, epsilon=epsilon))
            assert run("solve-semilinear", out, config) == 0
            index = read_index(out, "solve-semilinear")
            contraction = index["contraction"]
            assert contraction["q"] < 1 and contraction["inside_ball"]
            assert index["final_residual"] <= 10 * 1e-6 * (1 + index["opnorm"])
            qs.append(contraction["q"])
        assert qs[1] / qs[0] == pytest.approx(0.5, rel=0.2)
