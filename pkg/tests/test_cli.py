"""Command-line interface: output formats, config handling, exit codes."""

import csv
import io
import json

import pytest
from click.testing import CliRunner

from crtdesign.cli import main


@pytest.fixture
def runner():
    return CliRunner()


K10_FLAGS = [
    "--budget", "100000", "--cluster-cost", "500", "--indiv-cost", "50",
]


class TestLodCommands:
    def test_hte_human(self, runner):
        result = runner.invoke(
            main,
            ["lod", "hte", *K10_FLAGS, "--rho-y", "0.05", "--rho-x", "0.75"],
        )
        assert result.exit_code == 0
        assert "22" in result.output and "62" in result.output

    def test_hte_json(self, runner):
        result = runner.invoke(
            main,
            ["lod", "hte", *K10_FLAGS, "--rho-y", "0.05", "--rho-x", "0.75", "--json"],
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert (doc["m"], doc["n"]) == (22, 62)
        assert doc["condition_satisfied"] is True

    def test_power_included_when_effect_given(self, runner):
        result = runner.invoke(
            main,
            [
                "lod", "hte", *K10_FLAGS,
                "--rho-y", "0.05", "--rho-x", "0.75",
                "--effect-hte", "0.2", "--json",
            ],
        )
        doc = json.loads(result.output)
        assert doc["power_hte"] == pytest.approx(0.830, abs=0.005)

    def test_ate(self, runner):
        result = runner.invoke(
            main, ["lod", "ate", *K10_FLAGS, "--rho-y", "0.05", "--json"]
        )
        doc = json.loads(result.output)
        assert (doc["m"], doc["n"]) == (14, 83)

    def test_compound_requires_lambda(self, runner):
        result = runner.invoke(
            main,
            ["lod", "compound", *K10_FLAGS, "--rho-y", "0.05", "--rho-x", "0.5"],
        )
        assert result.exit_code == 2

    def test_compound(self, runner):
        result = runner.invoke(
            main,
            [
                "lod", "compound", *K10_FLAGS,
                "--rho-y", "0.05", "--rho-x", "0.5", "--lambda", "0.4", "--json",
            ],
        )
        doc = json.loads(result.output)
        assert abs(doc["m"] - 21) <= 1


class TestConfigFile:
    def test_config_round_trip(self, runner, tmp_path):
        cfg = tmp_path / "scenario.json"
        cfg.write_text(
            json.dumps(
                {
                    "budget": 100000,
                    "cluster_cost": 500,
                    "indiv_cost": 50,
                    "rho_y": 0.05,
                    "rho_x": 0.75,
                }
            )
        )
        result = runner.invoke(main, ["lod", "hte", "--config", str(cfg), "--json"])
        assert result.exit_code == 0
        assert json.loads(result.output)["m"] == 22

    def test_flags_override_config(self, runner, tmp_path):
        cfg = tmp_path / "scenario.json"
        cfg.write_text(
            json.dumps(
                {
                    "budget": 100000,
                    "cluster_cost": 500,
                    "indiv_cost": 50,
                    "rho_y": 0.05,
                    "rho_x": 0.75,
                }
            )
        )
        result = runner.invoke(
            main,
            ["lod", "hte", "--config", str(cfg), "--rho-x", "1.0", "--json"],
        )
        assert json.loads(result.output)["m"] == 14  # optimum at rho_x = 1

    def test_unknown_field_rejected(self, runner, tmp_path):
        cfg = tmp_path / "scenario.json"
        cfg.write_text(json.dumps({"budget": 100000, "bogus": 1}))
        result = runner.invoke(main, ["lod", "hte", "--config", str(cfg)])
        assert result.exit_code == 2
        assert "bogus" in result.output


class TestExitCodes:
    def test_validation_error_is_two(self, runner):
        result = runner.invoke(
            main,
            ["lod", "hte", "--budget", "-5", "--cluster-cost", "500",
             "--indiv-cost", "50", "--rho-y", "0.05", "--rho-x", "0.75"],
        )
        assert result.exit_code == 2

    def test_missing_inputs_is_two(self, runner):
        result = runner.invoke(main, ["lod", "hte"])
        assert result.exit_code == 2

    def test_unknown_dataset_is_two(self, runner):
        result = runner.invoke(main, ["reproduce", "table99"])
        assert result.exit_code == 2


class TestMaximinCommand:
    def test_design_and_surface_csv(self, runner, tmp_path):
        out = tmp_path / "surface.csv"
        result = runner.invoke(
            main,
            [
                "maximin", "hte", *K10_FLAGS,
                "--rho-y-range", "0.005,0.2", "--rho-x-range", "0.1,1.0",
                "--grid-steps", "8",
                "--emit-surface", str(out), "--json",
            ],
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert (doc["m"], doc["n"]) == (22, 62)
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert set(rows[0]) == {"m", "n", "rho_y", "rho_x", "value", "kind", "lambda"}
        assert len(rows) == 322 * 81

    def test_deterministic_output(self, runner):
        args = [
            "maximin", "hte", *K10_FLAGS,
            "--rho-y-range", "0.005,0.2", "--rho-x-range", "0.1,1.0",
            "--grid-steps", "6", "--json",
        ]
        a = runner.invoke(main, args).output
        b = runner.invoke(main, args).output
        assert a == b


class TestPowerCommands:
    def test_point(self, runner):
        result = runner.invoke(
            main,
            [
                "power", "point", *K10_FLAGS, "--m", "22", "--n", "62",
                "--test", "hte", "--rho-y", "0.05", "--rho-x", "0.75",
                "--effect-hte", "0.2", "--json",
            ],
        )
        doc = json.loads(result.output)
        assert doc["power"] == pytest.approx(0.830, abs=0.005)

    def test_bounds(self, runner):
        result = runner.invoke(
            main,
            [
                "power", "bounds", *K10_FLAGS, "--m", "22", "--n", "62",
                "--test", "hte", "--effect-hte", "0.2",
                "--rho-y-range", "0.005,0.2", "--rho-x-range", "0.1,1.0",
                "--json",
            ],
        )
        doc = json.loads(result.output)
        assert doc["lower"] == pytest.approx(0.367, abs=0.005)
        assert doc["upper"] == pytest.approx(0.972, abs=0.005)

    def test_curve_csv(self, runner, tmp_path):
        out = tmp_path / "curve.csv"
        result = runner.invoke(
            main,
            [
                "power", "curve", *K10_FLAGS, "--m", "22", "--n", "62",
                "--test", "hte", "--effect-hte", "0.2",
                "--rho-y-range", "0.005,0.2", "--rho-x-range", "0.1,1.0",
                "--rho-y-values", "0.005,0.1", "--emit", str(out),
            ],
        )
        assert result.exit_code == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert set(rows[0]) == {
            "test", "m", "n", "rho_y", "rho_x", "effect", "alpha", "power"
        }
        assert len(rows) == 2 * 41


class TestReproduce:
    @pytest.mark.parametrize(
        "name,expected_rows",
        [("table2", 40), ("table3", 60), ("table4", 20), ("table5", 10)],
    )
    def test_table_row_counts(self, runner, name, expected_rows):
        result = runner.invoke(main, ["reproduce", name, "--csv", "-"])
        assert result.exit_code == 0
        rows = list(csv.DictReader(io.StringIO(result.output)))
        assert len(rows) == expected_rows

    def test_json_shape(self, runner):
        result = runner.invoke(main, ["reproduce", "table5", "--json"])
        doc = json.loads(result.output)
        assert doc["name"] == "table5"
        assert len(doc["rows"]) == 10

    def test_byte_identical_runs(self, runner):
        a = runner.invoke(main, ["reproduce", "table2", "--csv", "-"]).output
        b = runner.invoke(main, ["reproduce", "table2", "--csv", "-"]).output
        assert a == b

    def test_scenario_preset(self, runner):
        result = runner.invoke(
            main, ["lod", "compound", "--scenario", "kdpp-bmi", "--lambda", "0.6", "--json"]
        )
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert abs(doc["m"] - 40) <= 1
