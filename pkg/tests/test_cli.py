import json
from pathlib import Path

import pytest

from cointlab.cli import main


def run_cli(args):
    return main(args)


class TestPipelineCommand:
    def test_pipeline_writes_tables_and_index(self, tmp_path, capsys):
        code = run_cli(
            ["pipeline", "--replicate", "--out", str(tmp_path), "--format", "json"]
        )
        assert code == 0
        index = json.loads((tmp_path / "index.json").read_text())
        ids = {t["id"] for t in index["tables"]}
        expected = {
            "snapshot_validation",
            "unitroot_perron",
            "unitroot_adf_kpss",
        }
        for eq in (1, 2, 3):
            expected |= {f"breaks_eq{eq}", f"lagselect_eq{eq}", f"johansen_eq{eq}",
                         f"causality_eq{eq}", f"diagnostics_eq{eq}"}
        expected |= {"vecm_eq1", "beta_eq1", "vecm_eq3", "beta_eq3", "var_eq2"}
        assert expected == ids

    def test_reruns_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        assert run_cli(["pipeline", "--replicate", "--out", str(out1), "--format", "csv"]) == 0
        assert run_cli(["pipeline", "--replicate", "--out", str(out2), "--format", "csv"]) == 0
        files1 = sorted(p.name for p in out1.iterdir())
        assert files1 == sorted(p.name for p in out2.iterdir())
        for name in files1:
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_unknown_equation_is_validation_error(self, capsys):
        assert run_cli(["pipeline", "--equations", "1,9"]) == 1
        assert "equation" in capsys.readouterr().err

    def test_bad_level_is_validation_error(self):
        assert run_cli(["pipeline", "--level", "0.9"]) == 1

    def test_equation_subset_runs(self, tmp_path):
        code = run_cli(
            ["pipeline", "--replicate", "--equations", "2", "--out", str(tmp_path),
             "--format", "json"]
        )
        assert code == 0
        index = json.loads((tmp_path / "index.json").read_text())
        ids = {t["id"] for t in index["tables"]}
        assert "var_eq2" in ids
        assert "vecm_eq1" not in ids


class TestStageCommands:
    @pytest.mark.parametrize(
        "command, marker",
        [
            ("unitroot", "unitroot_perron"),
            ("breaks", "breaks_eq1"),
            ("lagselect", "lagselect_eq1"),
            ("johansen", "johansen_eq1"),
            ("vecm", "vecm_eq1"),
            ("var", "var_eq2"),
            ("causality", "causality_eq1"),
            ("diagnose", "diagnostics_eq1"),
        ],
    )
    def test_stage_tables_selected(self, tmp_path, command, marker):
        out = tmp_path / command
        code = run_cli([command, "--replicate", "--out", str(out), "--format", "json"])
        assert code == 0
        index = json.loads((out / "index.json").read_text())
        ids = {t["id"] for t in index["tables"]}
        assert marker in ids
        # the stage filter keeps only that stage's tables
        assert f"lagselect_eq1" not in ids or command == "lagselect"

    def test_stdout_rendering(self, capsys):
        assert run_cli(["johansen", "--replicate", "--equations", "1"]) == 0
        out = capsys.readouterr().out
        assert "Cointegration rank tests" in out


class TestConfigFile:
    def test_config_file_parsed_and_overridden(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "# a comment\nequations = 2\nreplicate = true\nlevel = 0.05\n",
            encoding="utf-8",
        )
        out = tmp_path / "out"
        code = run_cli(
            ["pipeline", "--config", str(cfg), "--out", str(out), "--format", "json"]
        )
        assert code == 0
        index = json.loads((out / "index.json").read_text())
        assert index["metadata"]["equations"] == "2"

    def test_unknown_config_key_is_validation_error(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("bogus = 1\n", encoding="utf-8")
        assert run_cli(["pipeline", "--config", str(cfg)]) == 1


class TestOtherCommands:
    def test_export_series(self, tmp_path):
        code = run_cli(["export-series", "--vars", "FD,FID,FMD", "--out", str(tmp_path)])
        assert code == 0
        for role in ("FD", "FID", "FMD"):
            text = (tmp_path / f"{role}.csv").read_text().splitlines()
            assert text[0] == f"year,{role}"
            assert len(text) == 41

    def test_export_unknown_role_fails(self, tmp_path):
        assert run_cli(["export-series", "--vars", "NOPE", "--out", str(tmp_path)]) == 1

    def test_montecarlo_command(self, tmp_path, capsys):
        out = tmp_path / "mc.csv"
        code = run_cli(
            ["montecarlo", "--experiment", "jarque_bera", "--reps", "200",
             "--t", "100", "--seed", "3", "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "experiment,reps,t,rejections,rate"
        assert lines[1].startswith("jarque_bera,200,100,")
