import json

import pytest

from braidalg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "structured")
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"command", "inputs", "degrees", "values"}
    return obj


class TestDim:
    def test_text(self, capsys):
        code, out = run(capsys, "dim", "--preset", "infinitesimal_artin", "--n", "3", "--cap", "4")
        assert code == 0
        assert "[1, 3, 7, 15, 31]" in out

    def test_structured(self, capsys):
        obj = run_json(capsys, "dim", "--preset", "oriented_artin", "--n", "3", "--cap", "2")
        assert obj["command"] == "dim"
        assert obj["degrees"] == [0, 1, 2]
        assert obj["values"] == ["1", "6", "27"]

    def test_deterministic(self, capsys):
        first = run(capsys, "dim", "--preset", "oriented_artin", "--n", "3", "--cap", "3")
        second = run(capsys, "dim", "--preset", "oriented_artin", "--n", "3", "--cap", "3")
        assert first == second


class TestNormalForm:
    def test_inline_series(self, capsys):
        code, out = run(
            capsys,
            "normal-form",
            "--preset",
            "oriented_artin",
            "--n",
            "3",
            "--cap",
            "2",
            "--series",
            "1*v13.v23 - 1*v23.v13",
        )
        assert code == 0
        assert out.strip() == "0"

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "series.txt"
        path.write_text("# a relation consequence\n1*v13.v23 - 1*v23.v13\n")
        code, out = run(
            capsys,
            "normal-form",
            "--preset",
            "oriented_artin",
            "--n",
            "3",
            "--cap",
            "2",
            "--in",
            str(path),
        )
        assert code == 0
        assert out.strip() == "0"

    def test_structured_rationals_are_strings(self, capsys):
        obj = run_json(
            capsys,
            "normal-form",
            "--preset",
            "infinitesimal_artin",
            "--n",
            "3",
            "--cap",
            "2",
            "--series",
            "1/2*t12 + 1*t13.t12",
        )
        assert all(isinstance(v, str) for v in obj["values"].values())
        assert obj["values"]["t12"] == "1/2"


class TestEval:
    def test_welded(self, capsys):
        code, out = run(
            capsys, "eval", "--family", "welded", "--n", "3", "--cap", "2", "--word", "a12"
        )
        assert code == 0
        assert "1 + 1*v12 + 1/2*v12.v12" in out
        assert "⊗ 123" in out

    def test_rho3_with_assoc_file(self, capsys, tmp_path):
        path = tmp_path / "psi.txt"
        path.write_text("1 + 1/24*A.B - 1/24*B.A\n")
        code, out = run(
            capsys,
            "eval",
            "--family",
            "rho3",
            "--n",
            "3",
            "--cap",
            "2",
            "--word",
            "sig1",
            "--assoc",
            str(path),
        )
        assert code == 0
        assert "1 + 1/2*t12 + 1/8*t12.t12" in out

    def test_drinfeld_default_assoc(self, capsys):
        obj = run_json(
            capsys, "eval", "--family", "drinfeld", "--n", "3", "--cap", "2", "--word", "sig2"
        )
        assert obj["values"][0]["perm"] == "132"
        assert obj["values"][0]["terms"]["t23"] == "1/2"


class TestAssociatorCommands:
    def test_check_reports_failure_degree(self, capsys):
        code, out = run(
            capsys, "check-associator", "--cap", "2", "--series", "1", "--axioms", "AE,AS,H3,P"
        )
        assert code == 0
        assert "AE: pass" in out and "H3: FAIL at degree 2" in out
        assert "residual" in out

    def test_extend_writes_file_and_checks_pass(self, capsys, tmp_path):
        src = tmp_path / "phi1.txt"
        src.write_text("1\n")
        out_path = tmp_path / "phi4.txt"
        code, out = run(
            capsys,
            "extend-associator",
            "--from",
            str(src),
            "--to-degree",
            "4",
            "--out",
            str(out_path),
        )
        assert code == 0
        assert "degree 2" in out and "degree 4" in out
        text = out_path.read_text()
        assert "1/24*A.B" in text
        code, out = run(capsys, "check-yb", "--cap", "4", "--in", str(out_path))
        assert code == 0
        assert "yang-baxter: pass" in out

    def test_check_yb_failure(self, capsys):
        obj = run_json(capsys, "check-yb", "--cap", "2", "--series", "1")
        assert obj["values"]["passed"] is False
        assert obj["values"]["first_failure_degree"] == 2


class TestInvariantCommands:
    def test_distinguish(self, capsys):
        obj = run_json(
            capsys, "distinguish", "--n", "3", "--cap", "3", "--w1", "a12", "--w2", "a21"
        )
        assert obj["values"]["first_difference_degree"] == 1
        assert obj["values"]["oracle_equal"] is False

    def test_vassiliev_degree(self, capsys):
        obj = run_json(
            capsys,
            "vassiliev-degree",
            "--n",
            "3",
            "--cap",
            "3",
            "--element",
            "1*[sig1] - 1*[s1]",
        )
        assert obj["values"]["order"] == 1
        assert obj["values"]["image"][0]["perm"] == "213"

    def test_delta_kernel(self, capsys):
        obj = run_json(capsys, "delta-kernel", "--n", "3", "--cap", "3")
        assert obj["degrees"] == [1, 2, 3]
        assert all(v["kernel_dimension"] == 0 for v in obj["values"].values())

    def test_hilbert_table(self, capsys):
        obj = run_json(capsys, "hilbert-table", "--n", "3", "--cap", "3")
        assert obj["values"]["chord"] == ["1", "3", "7", "15"]
        assert obj["values"]["oriented"] == ["1", "6", "27", "108"]

    def test_check_splitting(self, capsys):
        obj = run_json(
            capsys, "check-splitting", "--n", "3", "--cap", "3", "--samples", "5", "--seed", "3"
        )
        assert obj["values"]["passed"] is True


class TestInfrastructure:
    def test_cache_dir_reused(self, capsys, tmp_path):
        code, _ = run(
            capsys,
            "dim",
            "--preset",
            "oriented_artin",
            "--n",
            "3",
            "--cap",
            "2",
            "--cache-dir",
            str(tmp_path),
        )
        assert code == 0
        assert any(p.name.endswith(".basis") for p in tmp_path.iterdir())

    def test_error_exit_code(self, capsys):
        code = main(["normal-form", "--series", "1*bogus", "--n", "3", "--cap", "2"])
        captured = capsys.readouterr()
        assert code == 1
        assert "error:" in captured.err

    def test_missing_input_exits(self, capsys):
        with pytest.raises(SystemExit):
            main(["normal-form", "--n", "3", "--cap", "2"])
