"""Command-line surface: subcommands, file formats, exit codes."""

import csv

import numpy as np
import pytest

from logspec.cli import main


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


@pytest.fixture
def series_file(tmp_path):
    path = tmp_path / "series.txt"
    assert main(["generate", "--n", "128", "--seed", "3", "--output", str(path)]) == 0
    return path


class TestDumpCommands:
    def test_tapers(self, capsys):
        assert main(["tapers", "--n", "8", "--k", "2"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].split(",") == ["m", "nu_1", "nu_2"]
        assert len(lines) == 9

    def test_tapers_tukey(self, capsys):
        assert main(["tapers", "--n", "16", "--kind", "tukey", "--fraction", "0.5"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "m,nu_1"
        values = np.array([float(ln.split(",")[1]) for ln in lines[1:]])
        assert np.linalg.norm(values) == pytest.approx(1.0, abs=1e-9)

    def test_kernels(self, capsys):
        assert main(["kernels"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("q,p,")
        assert len(lines) == 4

    def test_theory(self, capsys):
        assert main(["theory", "--n", "128"]) == 0
        out = capsys.readouterr().out
        assert "K_default,9" in out
        assert "M_0_2,1.649384888" in out


class TestGenerate:
    def test_writes_series(self, series_file):
        x = np.loadtxt(series_file)
        assert x.shape == (128,)
        assert np.std(x) > 0.5


class TestEstimate:
    def test_adaptive_output(self, tmp_path, series_file, capsys):
        out = tmp_path / "est.csv"
        assert main(["estimate", "--input", str(series_file), "--output", str(out)]) == 0
        rows = read_csv(out)
        assert rows[0] == ["frequency", "log_spectrum", "halfwidth", "clamped"]
        assert len(rows) == 1 + 130  # header + half grid
        assert float(rows[1][0]) == 0.0
        assert float(rows[-1][0]) == pytest.approx(0.5)
        h = np.array([float(r[2]) for r in rows[1:]])
        assert np.all((h >= 2.0 / 258.0) & (h <= 0.5))

    def test_stage_outputs(self, tmp_path, series_file):
        for stage in ("mt", "st", "meanlog"):
            out = tmp_path / f"{stage}.csv"
            assert main(
                ["estimate", "--input", str(series_file), "--output", str(out),
                 "--stage", stage]
            ) == 0
            rows = read_csv(out)
            assert rows[0] == ["frequency", "value"]
            assert len(rows) == 1 + 130

    def test_fixed_halfwidth(self, tmp_path, series_file):
        out = tmp_path / "fixed.csv"
        assert main(
            ["estimate", "--input", str(series_file), "--output", str(out),
             "--fixed-h", "0.1"]
        ) == 0
        rows = read_csv(out)
        assert all(float(r[2]) == pytest.approx(0.1) for r in rows[1:])

    def test_inadmissible_fixed_halfwidth_fails_cleanly(self, tmp_path, series_file, capsys):
        out = tmp_path / "fixed.csv"
        code = main(
            ["estimate", "--input", str(series_file), "--output", str(out),
             "--fixed-h", "0.9"]
        )
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_dump_asr_and_plots(self, tmp_path, series_file):
        out = tmp_path / "est.csv"
        asr = tmp_path / "asr.csv"
        assert main(
            ["estimate", "--input", str(series_file), "--output", str(out),
             "--dump-asr", str(asr), "--plot"]
        ) == 0
        rows = read_csv(asr)
        assert rows[0] == ["halfwidth", "asr", "fitted_model"]
        assert len(rows) > 8
        for png in (tmp_path / "est.png", tmp_path / "asr.png"):
            assert png.exists() and png.stat().st_size > 1000

    def test_csv_column_input(self, tmp_path):
        path = tmp_path / "data.csv"
        rng = np.random.default_rng(5)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "level"])
            for i, v in enumerate(rng.normal(size=64)):
                writer.writerow([i, f"{v:.8f}"])
        out = tmp_path / "est.csv"
        assert main(
            ["estimate", "--input", str(path), "--column", "level",
             "--output", str(out)]
        ) == 0
        assert len(read_csv(out)) == 1 + 66

    def test_missing_column(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(SystemExit, match="not in header"):
            main(["estimate", "--input", str(path), "--column", "zz"])

    def test_missing_file(self, tmp_path):
        with pytest.raises(SystemExit, match="cannot read"):
            main(["estimate", "--input", str(tmp_path / "nope.txt")])

    def test_taper_count_flag(self, tmp_path, series_file):
        out = tmp_path / "est.csv"
        assert main(
            ["estimate", "--input", str(series_file), "--output", str(out),
             "--n-tapers", "4", "--reference", "sinusoidal"]
        ) == 0


class TestSimulate:
    def test_small_run(self, tmp_path, capsys):
        out = tmp_path / "report.csv"
        per = tmp_path / "per.csv"
        code = main(
            ["simulate", "--n", "64", "--realizations", "4", "--seed", "9",
             "--output", str(out), "--per-realization", str(per), "--plot"]
        )
        assert code == 0  # the ordering gate only applies from 500 realizations
        rows = read_csv(out)
        assert rows[0][:2] == ["method", "label"]
        assert len(rows) == 4
        assert len(read_csv(per)) == 5
        assert (tmp_path / "report.png").stat().st_size > 1000
        assert "MISE" in capsys.readouterr().err

    def test_method_subset(self, tmp_path):
        out = tmp_path / "report.csv"
        assert main(
            ["simulate", "--n", "64", "--realizations", "3", "--seed", "1",
             "--output", str(out), "--methods", "1,3"]
        ) == 0
        rows = read_csv(out)
        assert [r[0] for r in rows[1:]] == ["1", "3"]

    def test_bad_method_fails_cleanly(self, tmp_path, capsys):
        code = main(
            ["simulate", "--n", "64", "--realizations", "2", "--seed", "1",
             "--output", str(tmp_path / "r.csv"), "--methods", "1,9"]
        )
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2
