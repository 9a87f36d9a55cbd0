import json
import logging

import pytest

import cube_io
from cubecost import run
from Distinguish.construct import FIVE_ROW_SEED, staircase


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def test_rho(capsys):
    assert run(["rho", "13"]) == 0
    assert capsys.readouterr().out == "6\n"


def test_big_decimal(capsys):
    assert run(["rho", str(10 ** 30)]) == 0
    assert capsys.readouterr().out == "101\n"


def test_rho_below_four(capsys):
    assert run(["rho", "3"]) == 3
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "n >= 4" in captured.err


@pytest.mark.parametrize("argument", ["0x10", "1e3", "-5", "12.0"])
def test_decimal_only(capsys, argument):
    assert run(["rho", argument]) == 2
    assert capsys.readouterr().out == ""


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["frobnicate"]) == 2
    assert run(["complement", "--cols", "--rows", "x"]) == 2


def test_nu_det_interval(capsys):
    assert run(["nu", "100"]) == 0
    assert run(["det", "17"]) == 0
    assert run(["interval", "6"]) == 0
    assert capsys.readouterr().out == "7\n6\n13 28\n"


def test_segments(capsys):
    assert run(["segments", "12"]) == 0
    assert capsys.readouterr().out == "13 1020 4\n1021 2043 5\n"


def test_table_csv(capsys):
    assert run(["table", "--n-from", "4", "--n-to", "6"]) == 0
    assert capsys.readouterr().out == "n,rho,det\n4,5,3\n5,5,4\n6,5,4\n"


def test_table_json(tmp_path):
    target = tmp_path / "table.json"
    assert run(["table", "--n-from", "12", "--n-to", "13", "--format", "json", "-o", str(target)]) == 0
    assert json.loads(target.read_text()) == [{"n": 12, "rho": 5, "det": 5}, {"n": 13, "rho": 6, "det": 5}]


def test_table_bad_range():
    assert run(["table", "--n-from", "3", "--n-to", "6"]) == 3
    assert run(["table", "--n-from", "9", "--n-to", "6"]) == 3


@pytest.mark.parametrize("m, n", [(5, 4), (5, 12), (6, 20), (12, 5), (13, 40)])
def test_witness_round_trip(tmp_path, capsys, m, n):
    target = str(tmp_path / "witness.mat")
    assert run(["witness", str(m), str(n), "-o", target]) == 0
    assert cube_io.load_matrix(target).shape == (m, n)
    assert run(["check", target]) == 0
    assert capsys.readouterr().out == "asymmetric\n"


def test_witness_to_stdout_with_plan(capsys):
    assert run(["witness", "5", "12", "--plan", "--verify", "--json"]) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["rows"] == 5
    assert json.loads(captured.err)["plan"]["case"] == "complement"


def test_witness_plan_dot(tmp_path):
    dot = tmp_path / "plan.dot"
    assert run(["witness", "6", "20", "-o", str(tmp_path / "w.mat"), "--plan-dot", str(dot)]) == 0
    assert "digraph" in dot.read_text()


def test_infeasible_witness(capsys):
    assert run(["witness", "4", "4"]) == 3
    assert "no asymmetric 4x4 matrix" in capsys.readouterr().err


def test_check_seed_matrix(write_file, capsys):
    path = write_file("seed.mat", "# five rows\n" + "\n".join(FIVE_ROW_SEED) + "\n")
    assert run(["check", path]) == 0
    assert capsys.readouterr().out == "asymmetric\n"


def test_check_symmetric(write_file, capsys):
    path = write_file("stairs.mat", cube_io.format_matrix(staircase(4, 4)))
    assert run(["check", path]) == 1
    certificate = json.loads(capsys.readouterr().out)
    assert set(certificate) == {"sigma", "pi", "flips"}
    assert sorted(certificate["sigma"]) == [1, 2, 3, 4]


def test_check_bad_file(write_file, tmp_path):
    assert run(["check", write_file("bad.mat", "10\n012\n")]) == 2
    assert run(["check", str(tmp_path / "missing.mat")]) == 2


def test_complement(write_file, capsys):
    path = write_file("stairs.mat", cube_io.format_matrix(staircase(5, 4)))
    assert run(["complement", "--cols", path]) == 0
    assert cube_io.parse_matrix(capsys.readouterr().out).shape == (5, 12)
    assert run(["complement", "--rows", "--json", path]) == 0
    assert json.loads(capsys.readouterr().out)["rows"] == 11


def test_complement_rejects_duplicates(write_file):
    assert run(["complement", "--rows", write_file("dup.mat", "10\n10\n")]) == 3


def test_oracle_none(capsys):
    assert run(["oracle", "none", "4", "4"]) == 0
    assert run(["oracle", "none", "5", "4"]) == 1


def test_oracle_budget():
    assert run(["--max-exhaustive-bits", "10", "oracle", "none", "5", "5"]) == 4


def test_oracle_agree(capsys):
    assert run(["--seed", "3", "oracle", "agree", "3", "3", "--samples", "20"]) == 0
    assert capsys.readouterr().out == "20 of 20 agree\n"


def test_search_budget_flag(write_file):
    path = write_file("cycle.mat", "110\n011\n101\n")
    assert run(["--search-budget", "1", "check", path]) == 4


def test_cube_verify(write_file, capsys):
    path = write_file("s.txt", "1100\n0110\n0011\n0001\n0000\n")
    assert run(["cube", "verify", path, "--dim", "4", "--group"]) == 0
    out = capsys.readouterr().out
    assert out == "distinguishing\n1 automorphisms preserve the class\n"

    four = write_file("four.txt", "1100\n0110\n0011\n0001\n")
    assert run(["cube", "verify", four, "--dim", "4"]) == 1


def test_cube_verify_wrong_dimension(write_file):
    path = write_file("s.txt", "1100\n0110\n")
    assert run(["cube", "verify", path, "--dim", "5"]) == 2


def test_cube_witness(capsys):
    assert run(["cube", "witness", "4"]) == 0
    vertices = capsys.readouterr().out.split()
    assert len(vertices) == 5 and all(len(v) == 4 for v in vertices)
    assert run(["cube", "witness", "3"]) == 3


def test_cost_cache(tmp_path, capsys):
    cache = tmp_path / "cost.json"
    assert run(["--cache", str(cache), "rho", "1000000"]) == 0
    assert json.loads(cache.read_text())["mu"]["1000000"] == 21
    assert run(["--cache", str(cache), "rho", "1000000"]) == 0
    assert capsys.readouterr().out == "21\n21\n"


def test_corrupt_cost_cache(tmp_path):
    cache = tmp_path / "cost.json"
    cache.write_text('{"format": 1, "mu": {"1000000": 3}}')
    assert run(["--cache", str(cache), "rho", "5"]) == 2


def test_plausible_but_wrong_cache_entry(tmp_path, capsys):
    cache = tmp_path / "cost.json"
    cache.write_text('{"format": 1, "mu": {"13": 5}}')
    assert run(["--cache", str(cache), "rho", "13"]) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "recomputed 6" in captured.err


def test_verbose_logging(capsys):
    assert run(["-v", "witness", "5", "8"]) == 0
    assert "built 5x8 witness via small_table" in capsys.readouterr().err
