"""End-to-end command-line tests."""

import json

import pytest
from click.testing import CliRunner

from colorsurf.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


def test_version(runner):
    res = invoke(runner, "--version")
    assert res.exit_code == 0
    assert "colorsurf" in res.output
    assert "map-file format" in res.output


def test_full_pipeline(tmp_path, runner):
    g = str(tmp_path / "g.json")
    m = str(tmp_path / "m.bin")
    res = invoke(runner, "lattice", "gen", "--family", "hex", "--rows", "3", "--cols", "3", "--out", g)
    assert res.exit_code == 0
    res = invoke(runner, "lattice", "validate", g)
    assert res.exit_code == 0
    assert "all checks pass" in res.output
    res = invoke(runner, "map", "build", "--in", g, "--color", "r", "--out", m)
    assert res.exit_code == 0
    res = invoke(runner, "map", "verify", "--in", g, "--map", m)
    assert res.exit_code == 0
    assert "all checks pass" in res.output
    res = invoke(runner, "decode", "--map", m, "--error", "X" + "I" * 17)
    assert res.exit_code == 0
    out = json.loads(res.output)
    assert out["success"] is True and out["logicalClass"] == 0
    assert set(out) == {"correction", "success", "logicalClass"}


def test_gen_rejects_noncolorable_dims(tmp_path, runner):
    res = invoke(
        runner, "lattice", "gen", "--family", "hex", "--rows", "4", "--cols", "3",
        "--out", str(tmp_path / "x.json"),
    )
    assert res.exit_code == 1
    assert "colorable" in res.output


def test_gen_idempotent_bytes(tmp_path, runner):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for out in (a, b):
        res = invoke(runner, "lattice", "gen", "--family", "sqoct", "--rows", "2", "--out", str(out))
        assert res.exit_code == 0
    assert a.read_bytes() == b.read_bytes()


def test_usage_error_exit_code_2(runner):
    res = runner.invoke(main, ["lattice", "gen", "--family", "hex", "--rows", "3"])
    assert res.exit_code == 2  # missing --out
    res = runner.invoke(main, ["lattice", "gen", "--no-such-flag"])
    assert res.exit_code == 2


def test_map_verify_mismatch(tmp_path, runner):
    g1 = str(tmp_path / "g1.json")
    g2 = str(tmp_path / "g2.json")
    m = str(tmp_path / "m.bin")
    invoke(runner, "lattice", "gen", "--family", "hex", "--rows", "3", "--cols", "3", "--out", g1)
    invoke(runner, "lattice", "gen", "--family", "hex", "--rows", "6", "--cols", "3", "--out", g2)
    invoke(runner, "map", "build", "--in", g1, "--color", "r", "--out", m)
    res = invoke(runner, "map", "verify", "--in", g2, "--map", m)
    assert res.exit_code == 1
    assert "different lattice" in res.output


def test_validate_reports_failure(tmp_path, runner):
    g = tmp_path / "g.json"
    invoke(runner, "lattice", "gen", "--family", "hex", "--rows", "3", "--cols", "3", "--out", str(g))
    doc = json.loads(g.read_text())
    doc["genus"] = 0
    g.write_text(json.dumps(doc))
    res = invoke(runner, "lattice", "validate", str(g))
    assert res.exit_code == 1
    assert "euler" in res.output


def test_code_params_text_and_json(tmp_path, runner):
    g = str(tmp_path / "g.json")
    invoke(runner, "lattice", "gen", "--family", "hex", "--rows", "3", "--cols", "3", "--out", g)
    res = invoke(runner, "code", "params", "--in", g)
    assert res.exit_code == 0
    assert "n=18 k=4 d=4" in res.output
    res = invoke(runner, "code", "params", "--in", g, "--format", "json")
    assert json.loads(res.output) == {"n": 18, "k": 4, "d": 4}


def test_code_stabilizers_output(tmp_path, runner):
    g = str(tmp_path / "g.json")
    invoke(runner, "lattice", "gen", "--family", "hex", "--rows", "3", "--cols", "3", "--out", g)
    res = invoke(runner, "code", "stabilizers", "--in", g, "--format", "json")
    rows = json.loads(res.output)
    assert len(rows) == 18
    assert all(set(r) == {"kind", "face", "pauli"} for r in rows)
    res_text = invoke(runner, "code", "stabilizers", "--in", g)
    assert res_text.output.count("B^X") == 9


def test_map_contract_writes_surface_json(tmp_path, runner):
    g = str(tmp_path / "g.json")
    s = tmp_path / "surface.json"
    invoke(runner, "lattice", "gen", "--family", "hex", "--rows", "3", "--cols", "3", "--out", g)
    res = invoke(runner, "map", "contract", "--in", g, "--color", "r", "--out", str(s))
    assert res.exit_code == 0
    doc = json.loads(s.read_text())
    assert doc["format"] == "surface-v1"
    assert doc["vertices"] == 3 and len(doc["edges"]) == 9


def test_map_image_output(tmp_path, runner):
    g = str(tmp_path / "g.json")
    m = str(tmp_path / "m.bin")
    invoke(runner, "lattice", "gen", "--family", "hex", "--rows", "3", "--cols", "3", "--out", g)
    invoke(runner, "map", "build", "--in", g, "--color", "r", "--out", m)
    res = invoke(runner, "map", "image", "--map", m, "--pauli", "Z" + "I" * 17, "--format", "json")
    out = json.loads(res.output)
    assert len(out["copy1"]) == 9 and len(out["copy2"]) == 9
    joined = out["copy1"] + out["copy2"]
    assert set(joined) <= set("IXYZ") and joined != "I" * 18


def test_decode_from_syndrome_file(tmp_path, runner):
    g = str(tmp_path / "g.json")
    m = str(tmp_path / "m.bin")
    invoke(runner, "lattice", "gen", "--family", "hex", "--rows", "3", "--cols", "3", "--out", g)
    invoke(runner, "map", "build", "--in", g, "--color", "r", "--out", m)
    syn = tmp_path / "syn.txt"
    syn.write_text("0" * 18 + "\n")
    res = invoke(runner, "decode", "--map", m, "--syndrome", str(syn))
    out = json.loads(res.output)
    assert out["correction"] == "I" * 18
    assert out["success"] is None
    # exactly one of --syndrome/--error required
    res = runner.invoke(main, ["decode", "--map", m])
    assert res.exit_code == 2


def test_simulate_csv(tmp_path, runner):
    g = str(tmp_path / "g.json")
    out = tmp_path / "res.csv"
    invoke(runner, "lattice", "gen", "--family", "hex", "--rows", "3", "--cols", "3", "--out", g)
    res = invoke(
        runner, "simulate", "--in", g, "--color", "r", "--p", "0.0,0.02",
        "--trials", "300", "--seed", "5", "--out", str(out), "--threads", "1",
        "--no-timing",
    )
    assert res.exit_code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0].startswith("family,rows,cols,color,p")
    assert len(lines) == 3
    first = lines[1].split(",")
    assert first[4] == "0" and first[6] == "0"  # p=0 -> zero failures
    # determinism
    out2 = tmp_path / "res2.csv"
    invoke(
        runner, "simulate", "--in", g, "--color", "r", "--p", "0.0,0.02",
        "--trials", "300", "--seed", "5", "--out", str(out2), "--threads", "1",
        "--no-timing",
    )
    assert out.read_bytes() == out2.read_bytes()


def test_simulate_rejects_bad_p(tmp_path, runner):
    g = str(tmp_path / "g.json")
    invoke(runner, "lattice", "gen", "--family", "hex", "--rows", "3", "--cols", "3", "--out", g)
    res = runner.invoke(
        main,
        ["simulate", "--in", g, "--p", "0.1,foo", "--trials", "10", "--out", str(tmp_path / "x.csv")],
    )
    assert res.exit_code == 2
