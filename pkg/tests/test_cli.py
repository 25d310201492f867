import json

import pytest

from dsnkit.cli import main
from dsnkit.formats import emit_psi
from dsnkit.reduction import PsiInstance

from conftest import K4

INFEASIBLE = "p dsn 3 1 2 1\na 1 2 1\nr 1 3\n"
LOOP = "p dsn 2 1 2 1\na 1 1 1\nr 1 2\n"


@pytest.fixture
def ladder_file(tmp_path):
    path = tmp_path / "ladder6.dsn"
    assert main(["gen", "ladder", "6", "-o", str(path)]) == 0
    return path


class TestGen:
    def test_ladder_is_byte_deterministic(self, tmp_path):
        a, b = tmp_path / "a.dsn", tmp_path / "b.dsn"
        assert main(["gen", "random", "8", "16", "3", "2", "--seed", "5", "-o", str(a)]) == 0
        assert main(["gen", "random", "8", "16", "3", "2", "--seed", "5", "-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_gen_json_summary(self, tmp_path, capsys):
        path = tmp_path / "g.dsn"
        assert main(["gen", "grid", "3", "3", "-o", str(path), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["n"] == 9 and payload["q"] == 3


class TestSolve:
    def test_solve_ladder(self, ladder_file, capsys):
        assert main(["solve", str(ladder_file), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["feasible"] is True
        assert payload["cost"] == [16, 1]

    def test_engines_agree(self, ladder_file, capsys):
        costs = set()
        for engine in ("bnb", "exhaustive"):
            assert main(["solve", str(ladder_file), "--engine", engine, "--json"]) == 0
            costs.add(tuple(json.loads(capsys.readouterr().out)["cost"]))
        assert len(costs) == 1

    def test_infeasible_exit_code(self, tmp_path, capsys):
        path = tmp_path / "inf.dsn"
        path.write_text(INFEASIBLE)
        assert main(["solve", str(path)]) == 2
        assert "infeasible" in capsys.readouterr().out

    def test_parse_error_exit_code(self, tmp_path, capsys):
        path = tmp_path / "loop.dsn"
        path.write_text(LOOP)
        assert main(["solve", str(path)]) == 4
        assert "loop arc" in capsys.readouterr().err

    def test_dst_on_cycle_request_is_domain_error(self, ladder_file, capsys):
        assert main(["solve", str(ladder_file), "--engine", "dst"]) == 4
        assert "solve_bnb" in capsys.readouterr().err


class TestAnalyze:
    def test_analyze_json(self, ladder_file, capsys):
        assert main(["analyze", str(ladder_file), "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["solve"]["feasible"] is True
        cert = payload["certificate"]
        assert cert["flagged"] is False
        assert cert["treewidth_solution"] <= 4 * cert["q"]


class TestReduce:
    def test_reduce_decides_and_writes(self, tmp_path, capsys):
        psi_path = tmp_path / "k4.psi"
        out_path = tmp_path / "k4.dsn"
        psi = PsiInstance(K4, K4, {i: i for i in range(4)})
        psi_path.write_text(emit_psi(psi))
        code = main(
            ["reduce", str(psi_path), "-o", str(out_path), "--decide", "--json"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["threshold"] == 26
        assert payload["decision"] is True
        assert "p dsn 21 26" in out_path.read_text()
        assert main(["solve", str(out_path), "--engine", "bnb", "--json"]) == 0
        solved = json.loads(capsys.readouterr().out)
        assert solved["cost"] == [26, 1]


class TestBench:
    def test_bench_all_agree(self, capsys):
        assert main(["bench", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["disagreements"] == 0
        assert all(row["agree"] for row in payload["rows"])
