import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from symgate.cli import main
from symgate.entangling import classification_record
from symgate.gates import BasisTag, SymmetricGate, embed_reducible, gate_to_json, random_gate
from symgate.majorana import area_weighted_mean

PI = np.pi


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def write_gate(tmp_path, obj, name="gate.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


class TestAnalyze:
    def test_swap_point(self, capsys):
        code, out, _ = run(["analyze", "--point", "0,1.5707963,1.5707963"], capsys)
        rec = json.loads(out)
        assert code == 0
        assert rec["ep"] == pytest.approx(4 / 15, abs=1e-12)
        assert rec["perfect"] is True and rec["boundary"] is True
        assert len(rec["c"]) == 3 and len(rec["s"]) == 2

    def test_origin(self, capsys):
        code, out, _ = run(["analyze", "--point", "0,0,0"], capsys)
        rec = json.loads(out)
        assert code == 0 and rec["ep"] == 0 and rec["perfect"] is False

    def test_gate_file(self, capsys, tmp_path):
        g = random_gate(3)
        code, out, _ = run(["analyze", write_gate(tmp_path, gate_to_json(g))], capsys)
        assert code == 0
        assert json.loads(out)["ep"] == pytest.approx(classification_record(g)["ep"], abs=1e-12)

    def test_four_by_four_file(self, capsys, tmp_path):
        g = random_gate(4)
        V = embed_reducible(g)
        obj = {"basis": "comp-sym", "matrix": [[[z.real, z.imag] for z in row] for row in V]}
        code, out, _ = run(["analyze", write_gate(tmp_path, obj)], capsys)
        assert code == 0
        assert json.loads(out)["ep"] == pytest.approx(classification_record(g)["ep"], abs=1e-10)

    def test_too_large_file(self, capsys, tmp_path):
        obj = {"basis": "comp-sym", "matrix": [[[float(i == j), 0.0] for j in range(5)] for i in range(5)]}
        code, _, err = run(["analyze", write_gate(tmp_path, obj)], capsys)
        assert code == 2 and "matrix" in err

    def test_non_unitary(self, capsys, tmp_path):
        obj = {"basis": "comp-sym", "matrix": [[[2.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
                                               [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]],
                                               [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]]}
        code, _, _ = run(["analyze", write_gate(tmp_path, obj)], capsys)
        assert code == 3

    @pytest.mark.parametrize("obj, field", [
        ({"basis": "nope", "matrix": []}, "basis"),
        ({"basis": "spin1", "matrix": [[1]]}, "matrix"),
        ({"basis": "spin1", "matrix": [[[1, 0], [0, 0], [0, 0]], [[0, 0], [1, 0], [0, 0]],
                                       [[0, 0], [0, 0], "x"]]}, "matrix[2][2]"),
    ])
    def test_malformed_names_field(self, capsys, tmp_path, obj, field):
        code, _, err = run(["analyze", write_gate(tmp_path, obj)], capsys)
        assert code == 2 and field in err

    def test_bad_point(self, capsys):
        code, _, err = run(["analyze", "--point", "1,2"], capsys)
        assert code == 2 and "--point" in err

    def test_missing_input(self, capsys):
        assert run(["analyze"], capsys)[0] == 2

    def test_degrees(self, capsys):
        _, a, _ = run(["analyze", "--point", "-60,0,60", "--degrees"], capsys)
        assert json.loads(a)["ep"] == pytest.approx(0.3, abs=1e-12)

    def test_csv_format(self, capsys):
        code, out, _ = run(["analyze", "--point", "0,0,0", "--format", "csv"], capsys)
        r = rows(out)
        assert code == 0 and len(r) == 1 and r[0]["perfect"] == "0"


class TestEp:
    def test_closed_form(self, capsys):
        code, out, _ = run(["ep", "--point", "-1.0471976,0,1.0471976"], capsys)
        assert code == 0 and json.loads(out)["ep"] == pytest.approx(0.3, abs=1e-12)

    def test_monte_carlo(self, capsys):
        code, out, _ = run(["ep", "--point", "0.7853982,0,0", "--mc", "100000"], capsys)
        r = json.loads(out)
        assert code == 0
        assert r["closed_form"] == pytest.approx(2 / 15, abs=1e-7)
        assert abs(r["monte_carlo"] - r["closed_form"]) <= 3 * r["std_error"]

    def test_too_few(self, capsys):
        assert run(["ep", "--point", "0,0,0", "--mc", "10"], capsys)[0] == 2

    def test_seed_flag_and_env(self, capsys, monkeypatch):
        argv = ["ep", "--point", "0.3,0.2,-0.5", "--mc", "1000"]
        a = run(argv + ["--seed", "7"], capsys)[1]
        monkeypatch.setenv("SYMGATE_SEED", "7")
        b = run(argv, capsys)[1]
        monkeypatch.setenv("SYMGATE_SEED", "8")
        c = run(argv, capsys)[1]
        assert a == b and a != c

    def test_bad_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("SYMGATE_SEED", "abc")
        assert run(["ep", "--point", "0,0,0"], capsys)[0] == 2

    def test_seventeen_digits(self, capsys):
        _, out, _ = run(["ep", "--point", "0.1,0.2,-0.3"], capsys)
        text = out.split(":")[1].split(",")[0].strip()
        value = json.loads(out)["ep"]
        assert text == format(value, ".17g")


class TestHeatmap:
    def test_shape(self, capsys):
        code, out, _ = run(["heatmap", "--resolution", "3"], capsys)
        lines = out.split("\n")
        assert code == 0 and lines[0] == "c1,c2,c3,s1,s2,arg_tr_m,abs_g,ep,perfect"
        assert len(rows(out)) == 9 and out.endswith("\n") and "\r" not in out

    def test_max(self, capsys):
        _, out, _ = run(["heatmap", "--resolution", "201"], capsys)
        assert max(float(r["ep"]) for r in rows(out)) == pytest.approx(0.3, abs=1e-3)

    def test_bad_resolution(self, capsys):
        assert run(["heatmap", "--resolution", "1"], capsys)[0] == 2

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "grid.csv"
        code, out, _ = run(["heatmap", "--resolution", "4", "--output", str(path)], capsys)
        assert code == 0 and out == ""
        assert len(rows(path.read_text())) == 16


class TestSphere:
    def test_identity(self, capsys, tmp_path):
        f = write_gate(tmp_path, gate_to_json(SymmetricGate(np.eye(3), BasisTag.SPIN1)))
        code, out, _ = run(["sphere", f, "--grid", "4x4"], capsys)
        r = rows(out)
        assert code == 0 and len(r) == 16 and all(float(x["entropy"]) == 0 for x in r)

    def test_max_gate_mean(self, capsys):
        _, out, _ = run(["sphere", "--point", "-1.0471975511965976,0,1.0471975511965976"], capsys)
        r = rows(out)
        assert len(r) == 181 * 361
        theta = np.array([float(x["theta"]) for x in r[::361]])
        E = np.array([float(x["entropy"]) for x in r]).reshape(181, 361)
        assert area_weighted_mean(theta, E) == pytest.approx(0.3, abs=0.005)

    def test_bad_grid(self, capsys):
        assert run(["sphere", "--point", "0,0,0", "--grid", "1x5"], capsys)[0] == 2
        assert run(["sphere", "--point", "0,0,0", "--grid", "axb"], capsys)[0] == 2


class TestModel:
    def test_crosskerr(self, capsys):
        code, out, _ = run(["model", "crosskerr", "--preset", "fig6c", "--t-range", "0:3.1415927:100"], capsys)
        r = rows(out)
        assert code == 0 and len(r) == 100 and list(r[0]) == ["t", "ep", "abs_g", "perfect", "boundary"]
        for x in r:
            t = float(x["t"])
            assert float(x["ep"]) == pytest.approx(4 / 15 * np.sin(-2 * t) ** 2, abs=1e-10)

    def test_heisenberg(self, capsys):
        _, out, _ = run(["model", "heisenberg", "--preset", "fig6a"], capsys)
        top = max(rows(out), key=lambda x: float(x["ep"]))
        assert float(top["ep"]) == pytest.approx(0.3, abs=1e-10)
        assert float(top["t"]) == pytest.approx(PI / 3, abs=1e-12)

    def test_lmg(self, capsys):
        _, out, _ = run(["model", "lmg", "--preset", "fig6b"], capsys)
        assert any(x["perfect"] == "1" for x in rows(out))

    def test_explicit_params(self, capsys):
        code, out, _ = run(["model", "heisenberg", "--params", "Ix=1,Iy=0,Iz=-1"], capsys)
        assert code == 0 and out == run(["model", "heisenberg", "--preset", "fig6a"], capsys)[1]

    @pytest.mark.parametrize("argv", [
        ["model", "ising"],
        ["model", "lmg", "--preset", "fig9"],
        ["model", "lmg", "--params", "B=1,x=2"],
        ["model", "lmg", "--t-range", "1:1:10"],
        ["model", "lmg", "--t-range", "0:1"],
    ])
    def test_errors(self, capsys, argv):
        assert run(argv, capsys)[0] == 2


class TestFraction:
    def test_million(self, capsys):
        code, out, _ = run(["fraction", "--samples", "1000000"], capsys)
        r = json.loads(out)
        assert code == 0 and r["analytic"] == 0.25 and abs(r["monte_carlo"] - 0.25) <= 0.005

    def test_deterministic_bytes(self, capsys):
        a = run(["fraction", "--samples", "20000", "--seed", "3"], capsys)[1]
        b = run(["fraction", "--samples", "20000", "--seed", "3"], capsys)[1]
        assert a == b

    def test_too_few(self, capsys):
        assert run(["fraction", "--samples", "1000"], capsys)[0] == 2


class TestMajorana:
    def test_state(self, capsys):
        code, out, _ = run(["majorana", "--state", "0,0,1,0,0,0"], capsys)
        r = json.loads(out)
        assert code == 0 and r["concurrence"] == 1 and r["chordal_distance"] == pytest.approx(2)

    def test_stars(self, capsys):
        _, out, _ = run(["majorana", "--stars", "0,0,90,0", "--degrees"], capsys)
        assert json.loads(out)["concurrence"] == pytest.approx(1 / 3, abs=1e-12)

    def test_zero_state(self, capsys):
        assert run(["majorana", "--state", "0,0,0,0,0,0"], capsys)[0] == 2

    def test_both(self, capsys):
        assert run(["majorana", "--state", "1,0,0,0,0,0", "--stars", "0,0,0,0"], capsys)[0] == 2


def test_console_script_is_byte_deterministic():
    cmd = [sys.executable, "-m", "symgate.cli", "ep", "--point", "0.2,0.5,-0.7", "--mc", "2000", "--seed", "11"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")


def test_usage_error_exit_code():
    r = subprocess.run([sys.executable, "-m", "symgate.cli", "nosuchcommand"], capture_output=True)
    assert r.returncode == 2
