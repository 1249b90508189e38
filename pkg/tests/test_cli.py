from __future__ import annotations

import json

import pytest

from stabring.cli import main
from stabring.corpus import complete, cycle, two_triangles, wheel
from stabring.graph import disjoint_union, format_edge_list, format_json


@pytest.fixture
def files(tmp_path):
    graphs = {
        "c5.txt": cycle(5),
        "c7.txt": cycle(7),
        "k1.txt": complete(1),
        "k1k2.txt": disjoint_union(complete(1), complete(2)),
        "w5.txt": wheel(5),
        "remark.json": two_triangles(),
    }
    for name, g in graphs.items():
        text = format_json(g) if name.endswith(".json") else format_edge_list(g)
        (tmp_path / name).write_text(text)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_c5(files, capsys):
    code, out, _ = run(capsys, "analyze", files / "c5.txt", "--format", "json")
    assert code == 0
    rep = json.loads(out)["results"][0]["reports"][0]
    assert rep["gorenstein"]["value"] is True
    assert rep["nearly"]["value"] == "gorenstein" and rep["hPerfect"] == "verified"


def test_analyze_k1k2(files, capsys):
    code, out, _ = run(capsys, "analyze", files / "k1k2.txt", "--format", "json")
    rep = json.loads(out)["results"][0]["reports"][0]
    assert code == 0 and rep["nearly"]["value"] == "nearly-not-gorenstein"
    assert rep["spectrum"]["u"] == 2 and rep["spectrum"]["I"] == [1, 2]


def test_analyze_w5_withheld(files, capsys):
    code, out, _ = run(capsys, "analyze", files / "w5.txt")
    assert code == 3 and "hPerfect=refuted" in out and "withheld" in out
    code, out, _ = run(capsys, "analyze", files / "w5.txt", "--assume-h-perfect")
    assert code == 0


def test_text_and_json_agree(files, capsys):
    _, text, _ = run(capsys, "analyze", files / "remark.json", "--variant", "all")
    _, js, _ = run(capsys, "analyze", files / "remark.json", "--variant", "all", "--format", "json")
    for rep in json.loads(js)["results"][0]["reports"]:
        block = text.split(f"[{rep['variant']}]")[1]
        value = "true" if rep["gorenstein"]["value"] else "false"
        assert f"gorenstein: {value}" in block.split("[")[0]


def test_verify_remark_and_c7(files, capsys):
    code, out, _ = run(capsys, "verify", files / "remark.json")
    assert code == 0 and "witness-family" in out and "DISAGREE" not in out
    code, out, _ = run(capsys, "verify", files / "c7.txt", "--format", "json")
    claims = {c["claim"]: c for c in json.loads(out)["results"][0]["reports"][0]["claims"]}
    assert code == 0 and claims["gorenstein"]["oracle"] is False and claims["gorenstein"]["agree"]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "{d}/c5.txt", "--max-degree", "0"],
        ["verify", "{d}/c5.txt", "--window", "3..1"],
        ["verify", "{d}/c5.txt", "--window", "x"],
        ["analyze"],
        ["analyze", "{d}/c5.txt", "--dir", "{d}"],
        ["analyze", "{d}/missing.txt"],
        ["analyze", "{d}/c5.txt", "--variant", "stab"],
    ],
)
def test_usage_errors_exit_2(files, capsys, argv):
    argv = [a.format(d=files) for a in argv]
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse rejects unknown choices itself
        code = exc.code
    assert code == 2


def test_bad_graph_file_exit_2(files, capsys):
    (files / "bad.txt").write_text("3 2\n0 1\n")
    code, _, err = run(capsys, "analyze", files / "bad.txt")
    assert code == 2 and "edge" in err


def test_hilbert_tables(files, capsys):
    code, out, _ = run(capsys, "hilbert", files / "k1.txt", "-n", "5", "--format", "csv")
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    assert code == 0 and [int(r[2]) for r in rows] == [1, 2, 3, 4, 5, 6]
    code, out, _ = run(capsys, "hilbert", files / "c5.txt", "-n", "1", "--format", "json")
    assert json.loads(out)["results"][0]["tables"]["HSTAB"]["hilbert"] == [1, 11]


def test_hilbert_figure(files, capsys, tmp_path):
    fig = tmp_path / "c5.png"
    code, out, _ = run(capsys, "hilbert", files / "c5.txt", "-n", "4", "--figure", fig)
    assert code == 0 and fig.stat().st_size > 0
    assert out.splitlines()[0] == "variant\tN\tH\tomega"


def test_polytope_c5_qstab(files, capsys):
    code, out, _ = run(capsys, "polytope", files / "c5.txt", "--variant", "qstab", "--format", "json")
    p = json.loads(out)["results"][0]["polytopes"]["QSTAB"]
    assert code == 0 and p["integralCount"] == 11 and p["fractionalCount"] == 1
    code, out, _ = run(capsys, "polytope", files / "c5.txt", "--hrep")
    assert "1 1 1 1 1 <= 2" in out


def test_polytope_guard_exit_3(tmp_path, capsys):
    (tmp_path / "big.txt").write_text("13 0\n")
    code, _, err = run(capsys, "polytope", tmp_path / "big.txt")
    assert code == 3 and "guard" in err


def test_json_is_byte_identical(files, capsys):
    outs = [run(capsys, "verify", files / "k1k2.txt", "--format", "json", "--seed", "7")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_dir_sweep_and_output(files, tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "analyze", "--dir", files, "--format", "json", "--output", out_path)
    data = json.loads(out_path.read_text())
    assert out == "" and len(data["results"]) == 6
    assert code == 3  # W5 is in the directory
    assert data["schemaVersion"] == 1
