import json

import pytest

from src.cli.app import main
from src.graph.families import hypercube, sn_special
from src.graph.io import load_graph


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_generate_edge_lists(capsys):
    code, out = _run(capsys, "generate", "hypercube", "4")
    assert code == 0
    assert out.splitlines()[0] == "16 32"
    _, out = _run(capsys, "generate", "slice", "5", "2")
    assert out.splitlines()[0].split()[0] == "10"


def test_generate_json(capsys):
    code, out = _run(capsys, "generate", "sn-special", "4", "--graph-format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 24 and len(data["edges"]) == 36


def test_generate_writes_graph_file(capsys, tmp_path):
    edge_path = tmp_path / "cube.txt"
    json_path = tmp_path / "star.json"
    code, out = _run(capsys, "generate", "hypercube", "3", "--out", str(edge_path))
    assert code == 0 and out == ""
    assert load_graph(str(edge_path)) == hypercube(3)
    code, _ = _run(capsys, "generate", "sn-special", "4", "--graph-format", "json", "--out", str(json_path))
    assert code == 0
    assert load_graph(str(json_path)) == sn_special(4)
    assert load_graph(str(json_path)).name == "sn-special-4"


def test_curvature_commands(capsys):
    _, out = _run(capsys, "curvature", "hypercube", "5")
    assert json.loads(out)["ric"] == pytest.approx(2.0, abs=1e-8)
    _, out = _run(capsys, "curvature", "cycle", "9")
    assert json.loads(out)["ric"] == pytest.approx(0.0, abs=1e-8)
    _, out = _run(capsys, "curvature", "tree", "3", "3", "--interior")
    data = json.loads(out)
    assert data["interior_only"] is True
    assert data["ric"] == pytest.approx(-1.0, abs=1e-8)


def test_curvature_csv(capsys):
    code, out = _run(capsys, "curvature", "cycle", "5", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "vertex,kappa"
    assert len(lines) == 6


def test_text_output(capsys):
    code, out = _run(capsys, "spectrum", "complete", "3", "--format", "text")
    assert code == 0
    assert "lambda: 3" in out


def test_spectrum_and_cheeger(capsys):
    _, out = _run(capsys, "spectrum", "complete", "7")
    assert json.loads(out)["lambda"] == pytest.approx(7.0)
    _, out = _run(capsys, "cheeger", "cycle", "10", "--exact")
    assert json.loads(out)["h"] == pytest.approx(0.4)
    _, out = _run(capsys, "cheeger", "sn-special", "4", "--testset")
    data = json.loads(out)
    assert data["method"] == "testset" and data["h"] == pytest.approx(1.0)
    _, out = _run(capsys, "cheeger", "cycle", "8", "--sweep")
    assert json.loads(out)["method"] == "sweep"


def test_sparse_spectrum(capsys):
    _, out = _run(capsys, "spectrum", "cycle", "80", "--sparse")
    data = json.loads(out)
    assert data["sparse_lambda"] == pytest.approx(data["lambda"], abs=1e-6)


def test_logsobolev_and_heat(capsys):
    _, out = _run(capsys, "logsobolev", "complete", "4", "--trials", "2")
    data = json.loads(out)
    assert data["trials"] == 2 and "convention" in data
    _, out = _run(capsys, "heat", "complete", "2", "--t", "0.5")
    data = json.loads(out)
    assert data["row_sums"] == pytest.approx([1.0, 1.0])


def test_json_output_is_byte_identical(capsys):
    _, first = _run(capsys, "curvature", "sn-special", "4", "--seed", "3")
    _, second = _run(capsys, "curvature", "sn-special", "4", "--seed", "3", "--threads", "3")
    assert first == second


def test_input_file(tmp_path, capsys):
    path = tmp_path / "square.txt"
    path.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")
    code, out = _run(capsys, "curvature", "--input", str(path))
    assert code == 0
    assert json.loads(out)["ric"] == pytest.approx(2.0)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out = _run(capsys, "spectrum", "cycle", "6", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["lambda"] == pytest.approx(1.0)


@pytest.mark.parametrize(
    "argv",
    [
        ["curvature", "no-such-family", "3"],
        ["curvature", "cycle", "2"],
        ["curvature"],
        ["curvature", "cycle", "5", "--input", "x.txt"],
        ["verify", "--corpus", "quick", "--tol", "bogus=1"],
        ["cheeger", "cycle", "6", "--testset"],
    ],
)
def test_input_errors_exit_2(argv):
    assert main(argv) == 2


def test_malformed_file_exits_2(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n0 1\n1 1\n")
    assert main(["curvature", "--input", str(path)]) == 2


def test_resource_cap_exits_3():
    assert main(["cheeger", "complete", "30", "--exact"]) == 3
    assert main(["cheeger", "cycle", "12", "--cap-exact-cheeger", "10"]) == 3


def test_verify_quick(capsys):
    code, out = _run(capsys, "verify", "--corpus", "quick", "--seed", "7", "--tol", "heat=1e-8")
    lines = out.strip().splitlines()
    summary = json.loads(lines[-1])["summary"]
    assert code == 0
    assert summary["all_pass"] is True
    assert summary["seed"] == 7
    assert len(lines) == summary["total"] + 1
    record = json.loads(lines[0])
    assert {"name", "instance", "lhs", "rhs", "slack", "pass"} <= set(record)
