"""Configuration parsing, presets, the run driver, and the CLI."""

import numpy as np
import pytest

from sveuler import (
    ConfigError,
    GridSpec,
    SpectralField,
    SVConfig,
    StepperConfig,
    integrate,
    l2_error,
    parse_config_text,
    read_snapshot,
    run,
    spectrum_report,
    to_physical,
    validate,
    write_snapshot,
)
from sveuler.cli import main as cli_main
from sveuler.experiments import CSV_HEADER, build_initial, convergence_study
from sveuler.operators import biot_savart

from fieldgen import random_mean_free


class TestConfigParsing:
    def test_minimal_with_preset_defaults(self):
        cfg = parse_config_text("experiment = thin_sheet\nn_modes = 8\n")
        assert cfg.epsilon == 0.05
        assert cfg.k0_fraction == pytest.approx(1 / 3)
        assert cfg.rho == 10.0
        assert cfg.rho_n() == pytest.approx(10.0 / 16.0)
        assert cfg.snapshot_times == (1.0,)

    def test_comments_and_blank_lines(self):
        text = """
        # a comment
        experiment = taylor_green   # trailing comment
        n_modes = 8

        t_end = 0.5
        """
        cfg = parse_config_text(text)
        assert cfg.experiment == "taylor_green"
        assert cfg.t_end == 0.5
        assert cfg.epsilon == 0.0

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config_text("experiment = thin_sheet\nwhatever = 3\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config_text("experiment = thin_sheet\nn_modes = 8\nn_modes = 16\n")

    def test_missing_experiment(self):
        with pytest.raises(ConfigError, match="experiment"):
            parse_config_text("n_modes = 8\n")

    def test_bad_values(self):
        with pytest.raises(ConfigError):
            parse_config_text("experiment = thin_sheet\nn_modes = eight\n")
        with pytest.raises(ConfigError):
            parse_config_text("experiment = thin_sheet\ncfl = 2.0\n")
        with pytest.raises(ConfigError):
            parse_config_text("experiment = nope\n")
        with pytest.raises(ConfigError, match="snapshot"):
            parse_config_text("experiment = thin_sheet\nt_end = 0.5\nsnapshot_times = 0.9\n")

    def test_snapshot_times_list(self):
        cfg = parse_config_text(
            "experiment = thin_sheet\nsnapshot_times = 0.2, 0.4, 1.0\n"
        )
        assert cfg.snapshot_times == (0.2, 0.4, 1.0)

    def test_measure_p(self):
        cfg = parse_config_text("experiment = thin_sheet\np = measure\n")
        assert cfg.p == "measure"

    def test_overrides(self):
        cfg = parse_config_text(
            "experiment = thin_sheet\n", overrides={"n_modes": "16", "epsilon": "0.01"}
        )
        assert cfg.n_modes == 16 and cfg.epsilon == 0.01


class TestBuildInitial:
    @pytest.mark.parametrize(
        "experiment", ["fat_sheet", "thin_sheet", "kissing_vortices", "taylor_green"]
    )
    def test_builders_mean_free(self, experiment):
        cfg = parse_config_text(f"experiment = {experiment}\nn_modes = 16\n")
        w = build_initial(cfg)
        assert w.mode(0, 0) == 0.0
        assert w.hermitian_defect() < 1e-12 * max(w.l2_norm(), 1.0)

    def test_custom_requires_field(self):
        cfg = parse_config_text("experiment = custom\nn_modes = 8\n")
        with pytest.raises(ConfigError, match="custom"):
            build_initial(cfg)


class TestRun:
    def test_taylor_green_artifacts(self, tmp_path):
        cfg = parse_config_text(
            "experiment = taylor_green\nn_modes = 8\nt_end = 0.05\n"
            f"snapshot_times = 0.05\noutput_dir = {tmp_path}\n"
        )
        summary = run(cfg)
        assert summary["final_time"] == 0.05
        lines = (tmp_path / "diagnostics.csv").read_text().splitlines()
        assert lines[0] == CSV_HEADER
        ncols = len(CSV_HEADER.split(","))
        assert all(len(l.split(",")) == ncols for l in lines[1:])
        assert len(summary["snapshots"]) == 1
        _, t = read_snapshot(summary["snapshots"][0])
        assert t == 0.05

    def test_zero_horizon_snapshot_is_initial_data(self, tmp_path):
        cfg = parse_config_text(
            "experiment = kissing_vortices\nn_modes = 16\nt_end = 0\n"
            f"snapshot_times = 0\noutput_dir = {tmp_path}\n"
        )
        summary = run(cfg)
        loaded, t = read_snapshot(summary["snapshots"][0])
        assert t == 0.0
        direct = to_physical(build_initial(cfg)).values
        assert np.array_equal(loaded.values, direct)

    def test_custom_initial_accepted(self, tmp_path):
        cfg = parse_config_text(
            "experiment = custom\nn_modes = 8\nt_end = 0.02\n"
            f"snapshot_times = 0.02\noutput_dir = {tmp_path}\nepsilon = 0.05\n"
        )
        rng = np.random.default_rng(70)
        w0 = random_mean_free(GridSpec(8), rng, scale=0.05)
        summary = run(cfg, initial=w0)
        assert summary["n_steps"] >= 1


class TestConvergenceStudy:
    def test_reference_row_is_zero(self, tmp_path):
        cfg = parse_config_text(
            "experiment = taylor_green\nn_modes = 8\nt_end = 0.02\n"
            f"snapshot_times = 0.02\noutput_dir = {tmp_path}\n"
        )
        table = convergence_study(cfg, [16, 32])
        assert table.levels == (16, 32)
        assert table.errors[16][0] >= 0.0
        assert table.errors[32] == (0.0,)

    def test_single_level_compares_to_itself(self, tmp_path):
        cfg = parse_config_text(
            "experiment = taylor_green\nn_modes = 8\nt_end = 0.02\n"
            f"snapshot_times = 0.02\noutput_dir = {tmp_path}\n"
        )
        table = convergence_study(cfg, [16])
        assert table.errors[16] == (0.0,)

    def test_levels_validated(self, tmp_path):
        cfg = parse_config_text(
            f"experiment = taylor_green\nn_modes = 8\noutput_dir = {tmp_path}\n"
        )
        with pytest.raises(ConfigError):
            convergence_study(cfg, [32, 16])
        with pytest.raises(ConfigError):
            convergence_study(cfg, [])
        with pytest.raises(ConfigError):
            convergence_study(cfg, [15, 32])

    def test_linear_viscous_closed_form(self):
        # pure per-mode decay: the coarse-vs-fine error is the initial tail
        # with every mode damped by the RK3 amplification of its own symbol
        fine = GridSpec(16)
        coarse = GridSpec(8)
        rng = np.random.default_rng(71)
        w_fine = random_mean_free(fine, rng)
        off = fine.n_modes - coarse.n_modes
        sl = slice(off, off + coarse.band)
        w_coarse = SpectralField(coarse, w_fine.coeffs[sl, sl].copy())

        nu = 1e-3  # fixed absolute viscosity shared by both levels
        dt = 1e-3
        steps = 50

        def make_rhs(grid):
            mult = -nu * (2 * np.pi) ** 2 * grid.k_sq
            return lambda s: SpectralField(grid, mult * s.coeffs)

        finals = {}
        for grid, w0 in ((fine, w_fine), (coarse, w_coarse)):
            scfg = StepperConfig(t_end=steps * dt, dt_max=dt, dt_min=dt)
            sv = SVConfig(grid=grid, epsilon=0.0)
            finals[grid.n_modes] = integrate(w0, make_rhs(grid), sv, scfg).state

        z = -nu * (2 * np.pi) ** 2 * fine.k_sq * dt
        amp = (1 + z + z**2 / 2 + z**3 / 6) ** steps
        tail = w_fine.coeffs * amp
        tail[sl, sl] = 0.0
        expected = float(np.sqrt(np.sum(np.abs(tail) ** 2)))

        u_c = biot_savart(finals[8])
        u_f = biot_savart(finals[16])
        got = l2_error(u_c, u_f)
        # compare vorticity-level tails through the velocity inversion
        w_embedded = np.zeros_like(w_fine.coeffs)
        w_embedded[sl, sl] = finals[8].coeffs
        diff = w_embedded - finals[16].coeffs
        kabs = np.sqrt(fine.k_sq)
        kabs[fine.n_modes, fine.n_modes] = 1.0
        expected_u = float(
            np.sqrt(np.sum((np.abs(diff) / (2 * np.pi * kabs)) ** 2))
        )
        assert got == pytest.approx(expected_u, rel=1e-12)
        tail_u = tail.copy()
        tail_u = np.abs(tail) / (2 * np.pi * kabs)
        assert got == pytest.approx(float(np.sqrt(np.sum(tail_u**2))), rel=1e-12)

    def test_csv_shape(self, tmp_path):
        cfg = parse_config_text(
            "experiment = taylor_green\nn_modes = 8\nt_end = 0.02\n"
            f"snapshot_times = 0.01, 0.02\noutput_dir = {tmp_path}\n"
        )
        table = convergence_study(cfg, [16, 32])
        lines = table.to_csv().splitlines()
        assert lines[0] == "n_grid,t=0.01,t=0.02"
        assert lines[1].startswith("16,")


class TestSpectrumReport:
    def test_zero_field_row(self, tmp_path):
        g = GridSpec(8)
        path = tmp_path / "zero.svf"
        write_snapshot(path, SpectralField.zeros(g), 0.0)
        csv = spectrum_report([path])
        lines = csv.splitlines()
        assert lines[0].startswith("time,e_0")
        vals = [float(tok) for tok in lines[1].split(",")]
        assert vals[0] == 0.0
        assert all(v == 0.0 for v in vals[1:])

    def test_mixed_resolution_rejected(self, tmp_path):
        a, b = tmp_path / "a.svf", tmp_path / "b.svf"
        write_snapshot(a, SpectralField.zeros(GridSpec(8)), 0.0)
        write_snapshot(b, SpectralField.zeros(GridSpec(16)), 0.0)
        with pytest.raises(ConfigError):
            spectrum_report([a, b])


class TestValidateCommand:
    def test_report_includes_warnings(self):
        cfg = parse_config_text("experiment = thin_sheet\nn_modes = 64\n")
        text = validate(cfg)
        assert "VALID" in text
        assert "practical eps_N" in text
        assert "||R||_L1" in text

    def test_invalid_theta_reported(self):
        cfg = parse_config_text("experiment = thin_sheet\nn_modes = 64\ntheta = 0.6\n")
        assert "INVALID" in validate(cfg)


class TestCli:
    def _write_config(self, tmp_path, body):
        path = tmp_path / "run.cfg"
        path.write_text(body)
        return str(path)

    def test_run_ok(self, tmp_path, capsys):
        cfg = self._write_config(
            tmp_path,
            "experiment = taylor_green\nn_modes = 8\nt_end = 0.02\n"
            f"snapshot_times = 0.02\noutput_dir = {tmp_path / 'out'}\n",
        )
        assert cli_main(["run", cfg]) == 0
        assert "completed" in capsys.readouterr().out

    def test_config_error_exit_2(self, tmp_path, capsys):
        cfg = self._write_config(tmp_path, "experiment = bogus\n")
        assert cli_main(["run", cfg]) == 2
        assert cli_main(["run", str(tmp_path / "missing.cfg")]) == 2

    def test_blowup_exit_3(self, tmp_path, capsys):
        cfg = self._write_config(
            tmp_path,
            "experiment = kissing_vortices\nn_modes = 16\nt_end = 0.5\n"
            f"velocity_ceiling = 1e-3\noutput_dir = {tmp_path / 'out'}\n",
        )
        assert cli_main(["run", cfg]) == 3
        assert "blow-up" in capsys.readouterr().err

    def test_io_error_exit_4(self, tmp_path, capsys):
        missing = str(tmp_path / "none.svf")
        assert cli_main(["spectrum", missing]) == 4

    def test_validate_and_overrides(self, tmp_path, capsys):
        cfg = self._write_config(tmp_path, "experiment = thin_sheet\nn_modes = 64\n")
        assert cli_main(["validate", cfg, "--theta", "0.6"]) == 0
        assert "INVALID" in capsys.readouterr().out

    def test_diff_identical_snapshots(self, tmp_path, capsys):
        g = GridSpec(8)
        rng = np.random.default_rng(72)
        w = random_mean_free(g, rng)
        path = tmp_path / "w.svf"
        write_snapshot(path, w, 0.0)
        assert cli_main(["diff", str(path), str(path)]) == 0
        assert float(capsys.readouterr().out.strip()) == 0.0

    def test_converge_prints_table(self, tmp_path, capsys):
        cfg = self._write_config(
            tmp_path,
            "experiment = taylor_green\nn_modes = 8\nt_end = 0.02\n"
            f"snapshot_times = 0.02\noutput_dir = {tmp_path / 'out'}\n",
        )
        assert cli_main(["converge", cfg, "--levels", "16,32"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("n_grid,")


class TestDeterminism:
    def test_rerun_bitwise_identical(self, tmp_path):
        base = (
            "experiment = thin_sheet\nn_modes = 16\nt_end = 0.05\n"
            "snapshot_times = 0.05\noutput_dir = {out}\n"
        )
        payloads = []
        for sub in ("one", "two"):
            out = tmp_path / sub
            cfg = parse_config_text(base.format(out=out))
            summary = run(cfg)
            payloads.append(
                tuple(open(p, "rb").read() for p in summary["snapshots"])
                + ((out / "diagnostics.csv").read_bytes(),)
            )
        assert payloads[0] == payloads[1]
