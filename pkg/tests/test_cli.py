import csv
import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from laguerre_mp import cli
from laguerre_mp.laguerre_core import LaguerreParams
from laguerre_mp.lattice_paths import path_table_recursion
from laguerre_mp.power_sums import certify_theorem2
from laguerre_mp.random_matrix import mc_expected_charpoly
from laguerre_mp.spectral import convergence_csv, convergence_table, roots


def run_cli(tmp_path, *args, name="out"):
    out = tmp_path / name
    code = cli.run([*args, "--out", str(out)])
    return code, out.read_text() if out.exists() else ""


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestSubcommands:
    def test_roots_negative_alpha(self, tmp_path):
        code, text = run_cli(tmp_path, "roots", "--p", "3", "--alpha", "-1/1")
        assert code == 0
        data = rows(text)
        assert {r["zero_multiplicity"] for r in data} == {"1"}
        vals = sorted(float(r["real"]) for r in data)
        assert vals == pytest.approx([3 - 3**0.5, 3 + 3**0.5], abs=1e-12)

    def test_roots_json_matches_library(self, tmp_path):
        code, text = run_cli(tmp_path, "roots", "--p", "6", "--alpha", "7/3", "--format", "json")
        assert code == 0
        data = json.loads(text)
        assert data["real_roots"] == roots(LaguerreParams(6, F(7, 3))).to_json()["real_roots"]

    def test_roots_alpha_real(self, tmp_path):
        code, text = run_cli(tmp_path, "roots", "--p", "2", "--alpha-real", "0.5", "--format", "json")
        assert code == 0 and json.loads(text)["alpha"] == "1/2"

    def test_power_sums(self, tmp_path):
        code, text = run_cli(tmp_path, "power-sums", "--p", "2", "--alpha", "0", "--k-max", "2")
        assert code == 0
        data = rows(text)
        assert [r["M"] for r in data] == ["4", "12"]
        assert [r["A_k1"] for r in data] == ["4", "12"]

    def test_certify(self, tmp_path):
        code, text = run_cli(tmp_path, "certify-theorem2", "--k", "4")
        assert code == 0
        data = json.loads(text)
        assert data["pass"] is True and data["k"] == 4
        assert data == json.loads(json.dumps(certify_theorem2(4).to_json()))

    def test_certify_failure_exit_code(self, tmp_path, monkeypatch):
        from laguerre_mp import power_sums
        from laguerre_mp.power_sums import BivariatePoly

        monkeypatch.setattr(power_sums, "theorem2_leading", lambda k: BivariatePoly({(0, 0): 1}))
        code, text = run_cli(tmp_path, "certify-theorem2", "--k", "2")
        assert code == 1
        assert json.loads(text)["pass"] is False

    def test_paths(self, tmp_path):
        code, text = run_cli(tmp_path, "paths", "--k-max", "5", "--l-max", "2", "--exact")
        assert code == 0
        assert text == path_table_recursion(5, 2).to_csv()

    def test_mp_moments(self, tmp_path):
        code, text = run_cli(tmp_path, "mp-moments", "--c", "-1/2", "--k-max", "4")
        assert code == 0
        data = rows(text)
        assert len(data) == 5
        assert all(float(r["abs_error"]) <= 1e-8 for r in data)
        assert all(r["scaling_residual"] == "0" for r in data)

    def test_converge(self, tmp_path):
        code, text = run_cli(tmp_path, "converge", "--c", "1", "--p", "20,40", "--k-max", "3")
        assert code == 0
        assert text == convergence_csv(convergence_table(F(1), [20, 40], 3))

    def test_fixed_point(self, tmp_path):
        code, text = run_cli(tmp_path, "fixed-point", "--c", "1", "--grid", "10", "--p", "50")
        assert code == 0
        data = rows(text)
        assert len(data) == 10
        assert all(abs(float(r["residual"])) <= 1e-12 for r in data)
        assert all(r["f_p_le_g_p"] == "true" for r in data)

    def test_wishart(self, tmp_path):
        code, text = run_cli(tmp_path, "wishart-esd", "--p", "20", "--n", "40", "--trials", "20",
                             "--seed", "5", "--k-max", "2")
        assert code == 0
        data = rows(text)
        assert [r["normalization"] for r in data] == ["p", "p", "n", "n"]

    def test_fg_exact(self, tmp_path):
        code, text = run_cli(tmp_path, "fg-identity", "--p", "2", "--n", "3", "--exact")
        assert code == 0
        data = json.loads(text)
        assert data["match"] is True
        assert data["expectation_coeffs"] == ["6", "-6", "1"]

    def test_fg_mc_matches_library(self, tmp_path):
        code, text = run_cli(tmp_path, "fg-identity", "--p", "2", "--n", "3", "--trials", "1000",
                             "--seed", "9")
        assert code == 0
        data = json.loads(text)
        lib = mc_expected_charpoly(2, 3, "gaussian", 1000, 9)
        assert data["coeff_means"] == list(lib.coeff_means)


class TestReproducibility:
    @pytest.mark.parametrize("args", [
        ("roots", "--p", "10", "--alpha", "3/2"),
        ("power-sums", "--p", "5", "--alpha", "-7/2"),
        ("certify-theorem2", "--k-max", "3", "--format", "csv"),
        ("paths",),
        ("mp-moments", "--c", "3"),
        ("converge", "--c", "0", "--p", "10,20"),
        ("fixed-point", "--c", "0", "--grid", "5"),
        ("wishart-esd", "--p", "10", "--trials", "10", "--seed", "3"),
    ])
    def test_csv_byte_identical(self, tmp_path, args):
        code1, a = run_cli(tmp_path, *args, name="a.csv")
        code2, b = run_cli(tmp_path, *args, name="b.csv")
        assert code1 == code2 == 0
        assert a == b and a
        assert "\r" not in a
        assert a.splitlines()[0]


class TestErrors:
    def test_unknown_command(self, capsys):
        assert cli.run(["bogus"]) == 2

    def test_bad_flag(self, capsys):
        assert cli.run(["roots", "--p", "3", "--nope", "1"]) == 2

    def test_bad_rational(self, capsys):
        assert cli.run(["roots", "--p", "3", "--alpha", "x/y"]) == 2

    def test_parameter_error(self, capsys):
        assert cli.run(["roots", "--p", "0"]) == 2
        assert "parameter error" in capsys.readouterr().err

    def test_size_error(self, capsys):
        assert cli.run(["fg-identity", "--p", "3", "--n", "6", "--exact"]) == 2

    def test_mp_domain(self, capsys):
        assert cli.run(["mp-moments", "--c", "-1"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "laguerre_mp", "certify-theorem2", "--k", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pass"] is True
