from __future__ import annotations

import json
import subprocess
import sys

import pytest

from helpers import DATA
from pisgraph import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None, err


def test_ring_info_zmod16(capsys):
    code, data, _ = run_json(capsys, "ring-info", "Z 16")
    assert code == 0
    assert data["schemaVersion"] == cli.SCHEMA_VERSION
    assert data["ring"]["order"] == 16
    assert data["ideals"]["nontrivialProper"] == 3
    assert data["profiles"][0]["eta"] == 4


def test_ring_info_monalg(capsys):
    _, data, _ = run_json(capsys, "ring-info", "mon 2 [x,y] / (x^2,y^2)")
    assert data["ideals"]["nontrivialProper"] == 5
    assert data["profiles"][0]["hasNilPair"] is True


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "ring-info", "Z 1")
    assert code == cli.EXIT_PARSE == 2
    assert out == ""
    assert json.loads(err)["error"]["kind"] == "parse"


def test_build_error_exit_code(capsys):
    code, _, err = run(capsys, "verify", "Z 5000")
    assert code == cli.EXIT_BUILD == 3
    assert json.loads(err)["error"]["kind"] == "build"
    code, _, _ = run(capsys, "verify", f"table {DATA / 'bad_assoc.tbl'}")
    assert code == 3


@pytest.mark.parametrize(
    "spec,vertices,edges", [("Z 16", 3, 2), ("prod(Z 2, Z 3)", 2, 0), ("GF 5", 0, 0), ("prod(Z 4, GF 2)", 4, 4)]
)
def test_pis_sizes(capsys, spec, vertices, edges):
    code, data, _ = run_json(capsys, "pis", spec)
    assert code == 0
    assert (data["pis"]["vertices"], data["pis"]["edges"]) == (vertices, edges)


def test_pis_writes_dot_and_adjacency(capsys, tmp_path):
    dot, adj = tmp_path / "g.dot", tmp_path / "g.adj"
    code, _, _ = run(capsys, "pis", "Z 16", "--dot", str(dot), "--adjacency", str(adj))
    assert code == 0
    assert dot.read_text().count(" -- ") == 2
    assert adj.read_text() == "3\n2\n2\n0 1\n"


def test_pis_unwritable_dot(capsys, tmp_path):
    code, _, err = run(capsys, "pis", "Z 16", "--dot", str(tmp_path / "missing" / "g.dot"))
    assert code == cli.EXIT_IO == 4
    assert json.loads(err)["error"]["kind"] == "io"


def test_recognize_zmod32(capsys):
    code, data, _ = run_json(capsys, "recognize", "Z 32", "--mode", "line")
    assert code == 0 and "coline" not in data
    line = data["line"]
    assert line["verdict"] is False and line["witnessKind"] == "forbidden"
    assert line["witnessDetail"]["libraryIndex"] == 1
    assert line["witnessDetail"]["degreeSequence"] == [3, 1, 1, 1]
    _, data, _ = run_json(capsys, "recognize", "Z 32", "--mode", "coline")
    assert data["coline"]["verdict"] is True and "line" not in data


def test_recognize_both(capsys):
    _, data, _ = run_json(capsys, "recognize", "prod(Z 4, GF 2)")
    assert data["line"]["verdict"] is True and data["coline"]["verdict"] is True
    assert data["line"]["witnessDetail"]["lineGraphOfRootMatches"] is True
    assert data["coline"]["witnessDetail"]["lineGraphOfRootMatches"] is True


@pytest.mark.parametrize("spec,line,coline", [("Z 16", True, True), ("mon 2 [x,y] / (x^2,y^2)", True, False)])
def test_verify(capsys, spec, line, coline):
    code, data, _ = run_json(capsys, "verify", spec)
    assert code == 0
    assert (data["line"]["verdict"], data["coline"]["verdict"]) == (line, coline)
    assert data["agreement"] == {"line": True, "coline": True}
    assert set(data) >= {"schemaVersion", "ring", "ideals", "pis", "line", "coline", "prediction", "agreement", "timings"}


def test_verify_without_timings_is_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "prod(Z 8, GF 2)", "--no-timings")
    _, second, _ = run(capsys, "verify", "prod(Z 8, GF 2)", "--no-timings")
    assert first == second
    assert "timings" not in json.loads(first)


def _census_lines(out):
    lines = [json.loads(s) for s in out.splitlines()]
    return lines[:-1], lines[-1]["summary"]


def test_census_empty_catalog(capsys, tmp_path):
    cat = tmp_path / "empty.txt"
    cat.write_text("# nothing here\n")
    code, out, _ = run(capsys, "census", "--catalog", str(cat))
    reports, summary = _census_lines(out)
    assert code == 0 and reports == [] and summary["total"] == 0


def test_census_malformed_line(capsys, tmp_path):
    cat = tmp_path / "cat.txt"
    cat.write_text("Z 4\nZ(oops\nGF 3\n")
    code, out, _ = run(capsys, "census", "--catalog", str(cat), "--no-timings")
    reports, summary = _census_lines(out)
    assert code == 1
    assert [("error" in r) for r in reports] == [False, True, False]
    assert reports[1]["error"]["kind"] == "parse"
    assert summary["errors"] == 1 and summary["disagreements"] == 0 and summary["agreements"] == 2


def test_census_missing_catalog(capsys, tmp_path):
    code, _, _ = run(capsys, "census", "--catalog", str(tmp_path / "none.txt"))
    assert code == cli.EXIT_IO


def test_census_default_catalog(capsys):
    code, out, _ = run(capsys, "census", "--no-timings")
    reports, summary = _census_lines(out)
    assert code == 0
    assert summary["total"] == len(reports) >= 35
    assert summary["disagreements"] == 0 and summary["errors"] == 0


def test_root_graph_three_fields(capsys, tmp_path):
    code, data, _ = run_json(capsys, "root-graph", "prod(GF 2, GF 3, GF 5)")
    assert code == 0
    assert data["root"]["edges"] == 6
    assert data["root"]["lineGraphMatchesPIS"] is True
    assert data["root"]["dot"].startswith("graph root {")
    dot = tmp_path / "root.dot"
    code, data, _ = run_json(capsys, "root-graph", "Z 16", "--dot", str(dot))
    assert code == 0
    assert (data["root"]["vertices"], data["root"]["edges"]) == (4, 3)
    assert "dot" not in data["root"]
    assert dot.read_text().count(" -- ") == 3


def test_root_graph_precondition(capsys):
    code, data, _ = run_json(capsys, "root-graph", "Z 32")
    assert code == cli.EXIT_PRECONDITION == 5
    assert data["line"]["witnessKind"] == "forbidden"


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit):
        cli.main(["frobnicate"])


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "pisgraph", "pis", "Z 16", "--no-timings"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert json.loads(out)["pis"]["edges"] == 2
