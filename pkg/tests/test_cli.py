import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from densecoding import cli, experiments, states, verify
from oracle_values import H_02


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestState:
    def test_ghz_json(self, capsys):
        code, out, _ = run(capsys, "state", "--family", "standard-ghz", "--json")
        assert code == 0
        report = json.loads(out)
        assert report["mcp"] == pytest.approx(1.0, abs=1e-6)
        assert len(report["assignments"]) == 6
        assert report["tau"] == pytest.approx(1.0)
        assert set(report["concurrences"]) == {"12", "13", "23"}

    def test_w_text(self, capsys):
        code, out, _ = run(capsys, "state", "--family", "standard_w")
        assert code == 0
        assert "mcp    0.666667" in out

    def test_params(self, capsys):
        code, out, _ = run(capsys, "state", "--family", "generalized-ghz",
                           "--params", f"{math.sqrt(0.2)},{math.sqrt(0.8)}", "--json")
        assert json.loads(out)["mcp"] == pytest.approx(H_02, abs=1e-6)

    def test_normalize(self, capsys):
        code, out, _ = run(capsys, "state", "--family", "generalized-w", "--params", "1,1,1",
                           "--normalize", "--json")
        assert code == 0
        assert json.loads(out)["mcp"] == pytest.approx(2 / 3, abs=1e-6)

    def test_mixed_input(self, capsys, tmp_path):
        rho = states.mixture([states.basis_state(k) for k in ("000", "110", "011", "101")],
                             [0.25] * 4)
        path = tmp_path / "sep_mixed.json"
        path.write_text(json.dumps(states.state_document(rho)))
        code, out, _ = run(capsys, "state", "--input", str(path), "--json")
        report = json.loads(out)
        assert code == 0
        assert report["mcp"] == pytest.approx(1.0, abs=1e-6)
        assert "tau" not in report

    @pytest.mark.parametrize("argv, needle", [
        (["--family", "extended-ghz", "--params", "1,1,1"], "squared coefficients"),
        (["--family", "generalized-w", "--params=-0.6,0.8,0"], "nonnegative"),
        (["--family", "extended-ghz", "--params", "a,b"], "comma-separated"),
        (["--input", "/nonexistent/state.json"], "cannot read"),
        ([], "--family or --input"),
    ])
    def test_invalid_input_exit_2(self, capsys, argv, needle):
        code, _, err = run(capsys, "state", *argv)
        assert code == 2
        assert needle in err

    @pytest.mark.parametrize("doc, needle", [
        ("{", "invalid JSON"),
        (json.dumps({"kind": "pure", "amplitudes": [0.9] + [0] * 7}), "norm"),
        (json.dumps({"kind": "mixed", "matrix": np.diag([1.1] + [0] * 6 + [-0.1]).tolist()}),
         "eigenvalue"),
    ])
    def test_invalid_document_exit_2(self, capsys, tmp_path, doc, needle):
        path = tmp_path / "bad.json"
        path.write_text(doc)
        code, _, err = run(capsys, "state", "--input", str(path))
        assert code == 2
        assert needle in err


class TestSweep:
    def test_rows(self, capsys, tmp_path):
        out = tmp_path / "sweep.csv"
        code, _, _ = run(capsys, "sweep-gghz", "--grid", "10", "--out", str(out))
        assert code == 0
        rows = read_csv(out)
        assert rows[0] == ["lambda1sq", "c_with", "c_without", "mcp"]
        assert len(rows) == 12
        by_x = {r[0]: r for r in rows[1:]}
        assert by_x["0"] == ["0", "1", "1", "0"]
        assert by_x["0.5"] == ["0.5", "2", "1", "1"]
        x02 = [float(v) for v in by_x["0.2"]]
        np.testing.assert_allclose(x02, [0.2, 1 + H_02, 1.0, H_02], atol=1e-8)

    def test_grid_too_small(self, capsys, tmp_path):
        code, _, err = run(capsys, "sweep-gghz", "--grid", "1", "--out", str(tmp_path / "x.csv"))
        assert code == 2


class TestRandomEW:
    def generate(self, capsys, tmp_path, name, *extra):
        out = tmp_path / name
        code, _, err = run(capsys, "random-ew", "--count", "12", "--seed", "9", "--out", str(out),
                           "--curve-points", "6", *extra)
        assert code == 0, err
        return out

    def test_headers_and_curves(self, capsys, tmp_path):
        out = self.generate(capsys, tmp_path, "ew.csv")
        rows = read_csv(out)
        assert rows[0] == ["lambda0sq", "lambda1sq", "lambda2sq", "lambda3sq", "mcp", "argmin"]
        assert len(rows) == 13
        for r in rows[1:]:
            assert sum(float(v) for v in r[:4]) == pytest.approx(1.0, abs=1e-8)
            assert r[5] in {a.label for a in states.ALL_ASSIGNMENTS}
        path_a, path_b = experiments.curve_paths(out)
        curve_a = read_csv(path_a)
        assert curve_a[0] == ["lambda0sq", "mcp"]
        assert float(curve_a[1][1]) == pytest.approx(2 / 3, abs=1e-8)
        assert curve_a[-1] == ["1", "0"]
        assert read_csv(path_b)[0] == ["lambda1sq", "mcp"]

    def test_byte_identical(self, capsys, tmp_path):
        a = self.generate(capsys, tmp_path, "a.csv")
        b = self.generate(capsys, tmp_path, "b.csv")
        for pa, pb in [(a, b)] + list(zip(experiments.curve_paths(a), experiments.curve_paths(b))):
            assert pa.read_bytes() == pb.read_bytes()

    def test_worker_count_does_not_change_output(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("MCP_THREADS", "1")
        one = self.generate(capsys, tmp_path, "one.csv")
        monkeypatch.setenv("MCP_THREADS", "2")
        two = self.generate(capsys, tmp_path, "two.csv")
        assert one.read_bytes() == two.read_bytes()

    def test_seed_changes_output(self, capsys, tmp_path):
        a = self.generate(capsys, tmp_path, "a.csv")
        out = tmp_path / "c.csv"
        run(capsys, "random-ew", "--count", "12", "--seed", "10", "--out", str(out),
            "--curve-points", "6")
        assert a.read_bytes() != out.read_bytes()

    def test_check_flag(self, capsys, tmp_path):
        out = tmp_path / "ew.csv"
        code, _, err = run(capsys, "random-ew", "--count", "12", "--seed", "9", "--out", str(out),
                           "--curve-points", "6", "--check", "--measure", "simplex")
        assert code == 0
        assert "max excess over curve a" in err


class TestVerify:
    def test_single_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "bounds", "--samples", "5")
        assert code == 0
        assert out.splitlines()[0].startswith("PASS bounds")

    def test_all_suites_small(self, capsys):
        code, out, _ = run(capsys, "verify", "--samples", "3")
        assert code == 0
        assert sum(line.startswith("PASS") for line in out.splitlines()) == len(verify.SUITES)

    def test_failure_exit_1(self, capsys, monkeypatch):
        def broken(samples, rng):
            return verify.SuiteResult("broken", False, 1.0, 1e-9, samples)
        monkeypatch.setitem(verify.SUITES, "entropy", broken)
        code, out, _ = run(capsys, "verify", "--suite", "entropy", "--samples", "1")
        assert code == 1
        assert "FAIL" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "densecoding.cli", "state", "--family",
                           "standard-ghz", "--json"], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["mcp"] == pytest.approx(1.0, abs=1e-6)
