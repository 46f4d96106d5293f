import csv
import sys

import pytest

from lkweld import cli
from lkweld import experiments as ex

SMALL = ["--grid", "128"]


def run(tmp_path, *args, out="out"):
    return cli.main([*args, "--out", str(tmp_path / out), *SMALL])


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in cli.KEYS:
        monkeypatch.delenv(cli.ENV_PREFIX + key.upper(), raising=False)


class TestVerify:
    def test_short_time_outputs(self, tmp_path, capsys):
        assert run(tmp_path, "verify-theorem1", "--driving", "p = 1 + (0,0.3)*z^1") == 0
        rows = read_csv(tmp_path / "out" / "theorem1.csv")
        assert rows[0] == ["t", "error", "tau", "slack"]
        assert [float(r[0]) for r in rows[1:]] == list(ex.DEFAULT_T_LIST)
        fit = read_csv(tmp_path / "out" / "theorem1_fit.csv")
        assert fit[0][:2] == ["slope", "intercept"]
        assert "slope" in capsys.readouterr().out

    def test_deterministic_bytes(self, tmp_path):
        args = ("verify-lebedev", "--driving", "p = 1 + (0.2,0.1)*z^2")
        assert run(tmp_path, *args, out="a") == 0
        assert run(tmp_path, *args, out="b") == 0
        for name in ("lebedev.csv", "lebedev_fit.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_parallel_matches_sequential(self, tmp_path):
        args = ("verify-duality", "--driving", "p = 1 + (0,0.3)*z^1")
        assert run(tmp_path, *args, out="seq") == 0
        assert run(tmp_path, *args, "--parallel", out="par") == 0
        assert ((tmp_path / "seq" / "duality.csv").read_bytes()
                == (tmp_path / "par" / "duality.csv").read_bytes())

    def test_welding_run_needs_delta(self, tmp_path):
        assert run(tmp_path, "verify-theoremB") == cli.EXIT_CONFIG

    def test_welding_run(self, tmp_path):
        assert run(tmp_path, "verify-theoremB", "--delta", "cos(psi) + 0.2*sin(2*psi)") == 0
        rows = read_csv(tmp_path / "out" / "theoremB.csv")
        assert rows[0] == ["eps", "error", "asymptotic_gap"]
        assert len(rows) == 5


class TestCommands:
    def test_evolve(self, tmp_path, capsys):
        assert run(tmp_path, "evolve", "--driving", "p = 1 + (0.3,0)*z^1", "--t", "0.05") == 0
        curve = read_csv(tmp_path / "out" / "evolve_curve.csv")
        assert curve[0] == ["psi", "delta", "ddelta", "d2delta"]
        assert len(curve) == 129
        assert "ratios" in capsys.readouterr().out

    @pytest.mark.parametrize("cmd", ["map-interior", "map-exterior"])
    def test_maps(self, tmp_path, cmd, capsys):
        assert run(tmp_path, cmd, "--delta", "cos(2*psi)", "--eps", "0.02") == 0
        side = cmd.split("-")[1]
        assert read_csv(tmp_path / "out" / f"map_{side}.csv")[0] == ["theta", "psi", "re", "im"]
        out = capsys.readouterr().out
        assert "conf_factor" in out
        assert ("tau=" in out) == (side == "exterior")

    def test_weldings(self, tmp_path):
        assert run(tmp_path, "weld-oracle", "--driving", "p = 1 + (0,0.3)*z^1", "--t", "0.02") == 0
        assert run(tmp_path, "weld-asymptotic", "--delta", "sin(psi)", "--eps", "0.01") == 0
        assert read_csv(tmp_path / "out" / "weld_oracle.csv")[0] == ["s", "sigma"]
        assert read_csv(tmp_path / "out" / "weld_asymptotic.csv")[0] == ["s", "sigma", "h"]


class TestSettings:
    def test_config_file(self, tmp_path):
        cfg = tmp_path / "run.ini"
        cfg.write_text("[scenario]\ndriving = p = 1 + (0,0.2)*z^1\nt_list = 0.04, 0.02, 0.01\n"
                       "[numerics]\ngrid = 64\n[output]\nname = demo\n")
        assert cli.main(["verify-lebedev", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 0
        rows = read_csv(tmp_path / "o" / "lebedev.csv")
        assert [float(r[0]) for r in rows[1:]] == [0.04, 0.02, 0.01]

    def test_unknown_key(self, tmp_path):
        cfg = tmp_path / "bad.ini"
        cfg.write_text("[scenario]\nspeed = 3\n")
        assert cli.main(["evolve", "--config", str(cfg)]) == cli.EXIT_CONFIG

    def test_missing_config(self, tmp_path):
        assert cli.main(["evolve", "--config", str(tmp_path / "nope.ini")]) == cli.EXIT_CONFIG

    def test_env_override_and_flag_precedence(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LKWELD_T_LIST", "0.03,0.02,0.01")
        monkeypatch.setenv("LKWELD_GRID", "64")
        assert cli.main(["verify-lebedev", "--out", str(tmp_path / "e")]) == 0
        rows = read_csv(tmp_path / "e" / "lebedev.csv")
        assert [float(r[0]) for r in rows[1:]] == [0.03, 0.02, 0.01]
        monkeypatch.setenv("LKWELD_GRID", "not-a-number")
        assert cli.main(["verify-lebedev", "--out", str(tmp_path / "f"), "--grid", "64"]) == 0

    @pytest.mark.parametrize("value", ["0.01,0.02,0.04", "0.02,0.01", "0.02,-0.01,-0.02"])
    def test_bad_t_list(self, tmp_path, monkeypatch, value):
        monkeypatch.setenv("LKWELD_T_LIST", value)
        assert run(tmp_path, "verify-lebedev") == cli.EXIT_CONFIG

    def test_bool_parsing(self):
        assert cli._bool("yes") and not cli._bool("off")
        with pytest.raises(cli.ConfigError):
            cli._bool("maybe")


class TestFailures:
    def test_caratheodory_violation(self, tmp_path, capsys):
        assert run(tmp_path, "evolve", "--driving", "p = 1 + (1.2,0)*z^1") == cli.EXIT_CONFIG
        assert "error" in capsys.readouterr().err

    def test_parse_error(self, tmp_path):
        assert run(tmp_path, "evolve", "--driving", "p = 1 + z") == cli.EXIT_CONFIG

    def test_numerical_failure(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("LKWELD_MAX_ITER", "1")
        code = run(tmp_path, "verify-theorem1", "--driving", "p = 1 + (0,0.3)*z^1")
        assert code == cli.EXIT_NUMERIC
        assert "[oracle-" in capsys.readouterr().err

    def test_unwritable_output(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        code = cli.main(["evolve", "--t", "0.01", "--grid", "64", "--out", str(blocker / "sub")])
        assert code == cli.EXIT_IO


class TestOutputs:
    def test_header_only_csv(self, tmp_path):
        ex.emit_outputs([ex.RunResult("empty", ("a", "b"), [])], tmp_path)
        assert (tmp_path / "empty.csv").read_text() == "a,b\n"

    def test_full_precision(self, tmp_path):
        ex.emit_outputs([ex.RunResult("v", ("x",), [(0.1 + 0.2,)])], tmp_path)
        assert float(read_csv(tmp_path / "v.csv")[1][0]) == 0.1 + 0.2

    def test_plots_skipped_without_matplotlib(self, tmp_path, monkeypatch):
        monkeypatch.setitem(sys.modules, "matplotlib", None)
        notes = ex.emit_outputs([ex.RunResult("v", ("x", "y"), [(1.0, 2.0)])], tmp_path, plots=True)
        assert notes == ["plots skipped: matplotlib is not available"]
        assert (tmp_path / "v.csv").exists()

    def test_plots_written(self, tmp_path, monkeypatch):
        pytest.importorskip("matplotlib")
        monkeypatch.delenv("LKWELD_NO_PLOTS", raising=False)
        res = ex.RunResult("v", ("x", "y"), [(1.0, 2.0), (2.0, 3.5)])
        ex.emit_outputs([res], tmp_path / "a", plots=True)
        ex.emit_outputs([res], tmp_path / "b", plots=True)
        assert (tmp_path / "a" / "v.svg").read_bytes() == (tmp_path / "b" / "v.svg").read_bytes()
