import json
import math

import pytest

from gearmap.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestMapCommand:
    def test_goodman_json(self, capsys):
        code, out = run(capsys, "map", "--t1", "0.5", "--t2", "1.0",
                        "--rays", "32")
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == "gearmap/1"
        assert doc["classification"] == "Gear"
        assert abs(doc["beta"] - 2.4978940169916371) < 1e-6
        assert abs(doc["gamma"] - 1.4215586527558342) < 1e-6

    def test_symmetric_pregear(self, capsys):
        code, out = run(capsys, "map", "--t", "1.0472", "--lambda", "0.0",
                        "--rays", "32")
        assert code == 0
        doc = json.loads(out)
        assert doc["classification"] == "Pregear"
        assert doc["beta"] is not None and doc["beta"] > 1.0

    def test_symmetric_outside_interval(self, capsys):
        code, out = run(capsys, "map", "--t", "1.0472", "--lambda", "0.2",
                        "--rays", "32")
        assert code == 0
        doc = json.loads(out)
        assert doc["classification"] == "Invalid"

    def test_usage_error_on_mixed_args(self, capsys):
        code, _ = run(capsys, "map", "--t", "0.5")
        assert code == 2
        code, _ = run(capsys, "map", "--t", "0.5", "--lambda", "0.1",
                      "--t1", "0.5", "--t2", "1.0")
        assert code == 2

    def test_domain_error(self, capsys):
        code, _ = run(capsys, "map", "--t1", "2.0", "--t2", "0.5")
        assert code == 2
        code, _ = run(capsys, "map", "--t", "1.9", "--lambda", "0.0")
        assert code == 2

    def test_deterministic_output(self, capsys):
        _, out1 = run(capsys, "map", "--t", "0.9", "--lambda", "-0.1",
                      "--rays", "32")
        _, out2 = run(capsys, "map", "--t", "0.9", "--lambda", "-0.1",
                      "--rays", "32")
        assert out1 == out2

    def test_svg_written(self, capsys, tmp_path):
        out_json = tmp_path / "fig.json"
        code, _ = run(capsys, "map", "--t", "0.9", "--lambda", "-0.1",
                      "--rays", "32", "--format", "svg",
                      "--out", str(out_json))
        assert code == 0
        svg = (tmp_path / "fig.svg").read_text()
        assert svg.startswith("<svg")
        assert "polygon" in svg          # boundary polyline (closed)
        assert "stroke-dasharray" in svg  # carriers dashed
        json.loads(out_json.read_text())


class TestRegionCommand:
    def test_csv_rows(self, capsys):
        code, out = run(capsys, "region", "--tmin", "0.2", "--tmax", "1.4",
                        "--n", "13")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,lambda_minus,lambda_plus,nehari_lo,nehari_hi"
        assert len(lines) == 14
        for line in lines[1:]:
            t, lm, lp, nlo, nhi = map(float, line.split(","))
            assert nlo < lm < lp < nhi
            assert abs((lp - lm) - 0.5) < 1e-14

    def test_pi_third_row_exact(self, capsys):
        t = math.pi / 3.0
        code, out = run(capsys, "region", "--tmin", str(t), "--tmax", "1.5",
                        "--n", "10")
        assert code == 0
        first = out.strip().split("\n")[1].split(",")
        assert abs(float(first[1]) + 0.40625) < 1e-14
        assert abs(float(first[2]) - 0.09375) < 1e-14
        assert abs(float(first[3]) + 0.84375) < 1e-14
        assert abs(float(first[4]) - 0.65625) < 1e-14

    def test_svg(self, capsys, tmp_path):
        out = tmp_path / "region.svg"
        code, _ = run(capsys, "region", "--n", "20", "--format", "svg",
                      "--out", str(out))
        assert code == 0
        svg = out.read_text()
        assert "#cccccc" in svg  # shaded interior
        assert "stroke-dasharray" in svg  # dashed Nehari band

    def test_too_small_grid(self, capsys):
        code, _ = run(capsys, "region", "--n", "5")
        assert code == 2


class TestParamsCommand:
    def test_round_trip_with_map(self, capsys):
        code, out = run(capsys, "params", "--beta", "2.5", "--gamma", "1.4")
        assert code == 0
        doc = json.loads(out)
        for key in ("t1", "t2", "q", "t", "lambda", "M"):
            assert key in doc
        lo, hi = doc["diagnostics"]["lambda_bounds"]
        assert lo < doc["lambda"] < hi
        assert doc["diagnostics"]["lambda_inside_bounds"] is True
        # feed (t, lambda) back through map and recover (beta, gamma)
        code, out = run(capsys, "map", "--t", str(doc["t"]),
                        "--lambda", str(doc["lambda"]))
        assert code == 0
        mapped = json.loads(out)
        assert abs(mapped["beta"] - 2.5) < 1e-5
        assert abs(mapped["gamma"] - 1.4) < 1e-5

    def test_gamma_near_pi_reports_t2(self, capsys):
        code, out = run(capsys, "params", "--beta", "2.0", "--gamma", "3.12")
        assert code == 0
        doc = json.loads(out)
        assert doc["diagnostics"]["t2_near_pi"] is True

    def test_usage_errors(self, capsys):
        code, _ = run(capsys, "params", "--beta", "0.5", "--gamma", "1.0")
        assert code == 2
        code, _ = run(capsys, "params", "--beta", "2.0")
        assert code == 2


class TestModuleCommand:
    def test_self_dual_value(self, capsys):
        t_star = 2.0 * math.atan(2.0 ** -0.25)
        code, out = run(capsys, "module", "--t", str(t_star))
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,M"
        t_val, m_val = map(float, lines[1].split(","))
        assert abs(m_val - 2.0) < 1e-10

    def test_grid(self, capsys):
        code, out = run(capsys, "module", "--tmin", "0.2", "--tmax", "1.2",
                        "--n", "5")
        assert code == 0
        assert len(out.strip().split("\n")) == 6

    def test_domain_error(self, capsys):
        code, _ = run(capsys, "module", "--t", "2.0")
        assert code == 2


class TestSweepCommand:
    def test_beta_two_curve(self, capsys):
        code, out = run(capsys, "sweep", "--beta", "2.0", "--gmin", "0.4",
                        "--gmax", "2.7", "--n", "9")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "gamma,M,is_argmax"
        rows = [line.split(",") for line in lines[1:]]
        ms = [float(r[1]) for r in rows]
        flags = [int(r[2]) for r in rows]
        assert sum(flags) == 1
        peak = flags.index(1)
        assert ms[peak] == max(ms)
        assert 0 < peak < len(ms) - 1

    def test_usage(self, capsys):
        code, _ = run(capsys, "sweep", "--beta", "0.8")
        assert code == 2


def test_exit_code_contract_documented():
    from gearmap.cli import NUMERIC_EXIT, USAGE_EXIT
    assert USAGE_EXIT == 2
    assert NUMERIC_EXIT == 3
