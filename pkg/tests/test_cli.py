import json
import subprocess
import sys

import pytest

from stemforge import cli
from stemforge.graph import parse_edge_list, path_graph, to_edge_list, to_graph6
from stemforge.oracle import SweepReport

P5 = to_edge_list(path_graph(5))


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def p5_file(tmp_path):
    path = tmp_path / "p5.txt"
    path.write_text(P5)
    return str(path)


def test_sharpness_prints_double_star(capsys):
    code, out, _ = run(capsys, "sharpness", "--k", "1", "--p", "1")
    assert code == 0
    g = parse_edge_list(out)
    assert g.n == 6 and g.edges() == [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]


def test_sharpness_check(capsys):
    code, out, _ = run(capsys, "sharpness", "--k", "1", "--p", "1", "--check", "--json")
    assert code == 0
    assert json.loads(out)["n"] == 6


def test_tree_on_path(capsys, p5_file):
    code, out, _ = run(capsys, "tree", p5_file, "--k", "0", "--m", "0")
    assert code == 0
    assert "status: good_tree" in out and "leaves: 2" in out and "branch_vertices: 0" in out
    code, out, _ = run(capsys, "tree", p5_file, "--k", "0", "--m", "0", "--json")
    data = json.loads(out)
    assert data["status"] == "good_tree" and data["leaves"] == 2 and data["branch_vertices"] == 0


def test_tree_reports_violation(capsys, tmp_path):
    from stemforge.generators import sharpness_graph
    path = tmp_path / "g.g6"
    path.write_text(to_graph6(sharpness_graph(1, 1)) + "\n")
    code, out, _ = run(capsys, "tree", str(path), "--k", "1", "--m", "2", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["status"] == "hypothesis_violation" and data["degree_sum"] == 4


def test_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(P5))
    code, out, _ = run(capsys, "analyze", "-", "--json")
    assert code == 0 and json.loads(out)["alpha"] == 3


def test_verify_exhaustive(capsys):
    code, out, _ = run(capsys, "verify", "--exhaustive", "5", "--k-max", "2")
    assert code == 0
    assert "counterexamples: 0" in out


def test_oracle(capsys, p5_file):
    code, out, _ = run(capsys, "oracle", p5_file, "--k-max", "1", "--json")
    assert code == 0
    assert json.loads(out)["min_leaf_plus_branch"] == 2


@pytest.mark.parametrize("argv", [
    ["tree", "--k", "1"],
    ["sharpness", "--k", "x", "--p", "1"],
    ["nosuchcommand"],
    ["verify"],
])
def test_bad_flags(capsys, argv):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code != 0


def test_input_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 0\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == cli.EXIT_USAGE and "self-loop" in err
    star = tmp_path / "star.txt"
    star.write_text("5 4\n0 1\n0 2\n0 3\n0 4\n")
    code, _, err = run(capsys, "tree", str(star), "--k", "1", "--m", "1")
    assert code == cli.EXIT_USAGE and "K_1,4" in err
    code, _, _ = run(capsys, "tree", str(tmp_path / "missing"), "--k", "0", "--m", "0")
    assert code == cli.EXIT_USAGE
    code, _, _ = run(capsys, "random", "--n", "5", "--prob", "1.5", "--seed", "1")
    assert code == cli.EXIT_USAGE


def test_counterexample_exit_code(capsys, monkeypatch, tmp_path):
    fake = SweepReport(counterexamples=1,
                       counterexample_records=[{"graph": P5, "record": {"k": 0}}])
    monkeypatch.setattr(cli, "sweep_exhaustive", lambda *a, **kw: fake)
    code, out, _ = run(capsys, "verify", "--exhaustive", "3",
                       "--counterexample-dir", str(tmp_path / "ce"))
    assert code == cli.EXIT_COUNTEREXAMPLE
    assert (tmp_path / "ce" / "counterexample_0000.txt").read_text() == P5


def test_output_is_reproducible(tmp_path):
    cmd = [sys.executable, "-m", "stemforge", "random", "--n", "8", "--prob", "0.6",
           "--seed", "42"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
    path = tmp_path / "g.txt"
    path.write_bytes(first)
    cmd = [sys.executable, "-m", "stemforge", "tree", str(path), "--k", "0", "--m", "0",
           "--trace"]
    assert (subprocess.run(cmd, capture_output=True).stdout
            == subprocess.run(cmd, capture_output=True).stdout)
