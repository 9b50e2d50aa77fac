import json

from fanoweb.cli import main


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def _quad2_json():
    return {"dim": 2, "points": [[1, 0], [0, 1], [-1, 0], [-2, -1]]}


def test_classify_subcommand(tmp_path, capsys):
    path = _write(tmp_path, "p.json", _quad2_json())
    assert main(["classify", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["flags"]["canonical"] is True
    assert out["flags"]["terminal"] is False


def test_points_and_dual_subcommands(tmp_path, capsys):
    path = _write(tmp_path, "p.json", {"dim": 2, "points": [[1, 0], [0, 1], [-1, -1]]})
    assert main(["points", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert [0, 0] in out["lattice"]
    assert out["interior"] == [[0, 0]]
    assert main(["dual", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert [[2, 1], [-1, 1]] in out["polar"]["vertices"]


def test_reduce_fibers_mmp(tmp_path, capsys):
    path = _write(
        tmp_path, "p.json", {"dim": 2, "points": [[1, 0], [0, 1], [-1, 0], [-1, -1]]}
    )
    assert main(["reduce", path]) == 0
    out = json.loads(capsys.readouterr().out)
    valid = [r for r in out["reductions"] if r["valid"]]
    assert len(valid) == 1 and valid[0]["vertex"] == [-1, 0]
    assert main(["fibers", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert any(fs["mori"] for fs in out["structures"])
    assert main(["mmp", path, "--class", "terminal"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["chain"] == []


def test_connect_verify_render_roundtrip(tmp_path, capsys):
    tri = {"dim": 2, "points": [[1, 0], [0, 1], [-1, -1]]}
    s_tri = {"dim": 2, "points": [[0, 1], [-1, 0], [1, -1]]}
    a = _write(tmp_path, "a.json", tri)
    b = _write(tmp_path, "b.json", s_tri)
    cert_path = str(tmp_path / "cert.json")
    assert main(["connect", a, b, "--class", "terminal", "--out", cert_path]) == 0
    cert = json.loads(open(cert_path).read())
    assert len(cert["chain"]) == 8
    assert main(["verify", cert_path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] is True
    svg_path = str(tmp_path / "cert.svg")
    assert main(["render", cert_path, "--out", svg_path]) == 0
    svg = open(svg_path).read()
    assert svg.count("<polygon") == 8
    assert svg.count("Mfp") == 5
    # byte-identical rerun
    svg_path2 = str(tmp_path / "cert2.svg")
    assert main(["render", cert_path, "--out", svg_path2]) == 0
    assert open(svg_path2).read() == svg


def test_verify_flags_tampering(tmp_path, capsys):
    tri = {"dim": 2, "points": [[1, 0], [0, 1], [-1, -1]]}
    s_tri = {"dim": 2, "points": [[0, 1], [-1, 0], [1, -1]]}
    a = _write(tmp_path, "a.json", tri)
    b = _write(tmp_path, "b.json", s_tri)
    cert_path = str(tmp_path / "cert.json")
    assert main(["connect", a, b, "--class", "terminal", "--out", cert_path]) == 0
    cert = json.loads(open(cert_path).read())
    cert["chain"][3]["points"][0] = [2, 1]
    bad_path = _write(tmp_path, "bad.json", cert)
    assert main(["verify", bad_path]) == 3
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] is False and out["failures"]


def test_bfs_subcommand(tmp_path, capsys):
    square = _write(tmp_path, "sq.json", {"dim": 2, "points": [[1, 0], [0, 1], [-1, 0], [0, -1]]})
    quad = _write(tmp_path, "q.json", {"dim": 2, "points": [[1, 0], [0, 1], [-1, 0], [-1, -1]]})
    assert main(["bfs", square, quad, "--class", "terminal", "--box", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["sequence"]["steps"]) == 1


def test_enumerate_subcommand(capsys):
    assert main(["enumerate", "--class", "terminal", "--box", "2", "--mfp"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["count"] == 3


def test_example37_subcommand(capsys):
    assert main(["example37"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] is True


def test_malformed_input_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert main(["classify", str(path)]) == 1
    out = json.loads(capsys.readouterr().out)
    assert "error" in out
    degenerate = _write(tmp_path, "deg.json", {"dim": 2, "points": [[0, 0], [1, 1], [2, 2]]})
    assert main(["classify", degenerate]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["error"]["type"] == "DegenerateHullError"


def test_stdin_input(tmp_path, capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(_quad2_json())))
    assert main(["classify", "-"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["flags"]["reflexive"] is True


def test_seed_echoed(tmp_path, capsys):
    path = _write(tmp_path, "p.json", _quad2_json())
    assert main(["classify", path, "--seed", "7"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["seed"] == 7


def test_bfs_not_found_exit_2(tmp_path, capsys):
    square = _write(tmp_path, "sq.json", {"dim": 2, "points": [[1, 0], [0, 1], [-1, 0], [0, -1]]})
    sheared = _write(tmp_path, "t2.json", {"dim": 2, "points": [[1, 0], [2, 1], [-1, 0], [-2, -1]]})
    assert main(["bfs", square, sheared, "--class", "canonical", "--box", "1"]) == 2
    out = json.loads(capsys.readouterr().out)
    assert out["found"] is False
    assert main(["bfs", square, sheared, "--class", "canonical", "--box", "2"]) == 0
    capsys.readouterr()
