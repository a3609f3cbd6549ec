import json
from pathlib import Path

import pytest

from chevsuper.cli import main


@pytest.fixture(scope="module")
def work(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    assert main(["build", "--family", "gl", "--m", "2", "--n", "1", "--out", str(d / "g.json")]) == 0
    assert main(["roots", "--algebra", str(d / "g.json"), "--out", str(d / "r.json")]) == 0
    assert main(["chevalley", "propose", "--algebra", str(d / "g.json"), "--roots", str(d / "r.json"),
                 "--out", str(d / "b.json")]) == 0
    assert main(["evenmodule", "--algebra", str(d / "g.json"), "--out", str(d / "vt.json")]) == 0
    (d / "mt.json").write_text(json.dumps([["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]))
    assert main(["induce", "--algebra", str(d / "g.json"), "--roots", str(d / "r.json"),
                 "--evenmodule", str(d / "vt.json"), "--lattice", str(d / "mt.json"),
                 "--out", str(d / "v.json")]) == 0
    return d


def _read(p):
    return json.loads(Path(p).read_text())


def test_reports_carry_meta_and_schema(work):
    for name in ("g.json", "r.json", "b.json", "v.json"):
        data = _read(work / name)
        assert data["schema"] == 1
        assert set(data["meta"]) == {"version", "config", "seed"}


def test_root_counts(work):
    counts = _read(work / "r.json")["counts"]
    assert counts["N"] == counts["dim_g1"] == 4


def test_byte_identical(work, capsys):
    outs = []
    for _ in range(2):
        assert main(["roots", "--algebra", str(work / "g.json"), "--seed", "7"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["meta"]["seed"] == 7


def test_verify_natural_basis(work, tmp_path):
    rep = tmp_path / "rep.json"
    assert main(["chevalley", "verify", "--algebra", str(work / "g.json"), "--roots", str(work / "r.json"),
                 "--basis", str(work / "b.json"), "--report", str(rep)]) == 0
    data = _read(rep)
    assert data["max_abs_structure_constant"] <= 2


def test_verify_mutated_basis(work, tmp_path):
    basis = _read(work / "b.json")
    vec = basis["root_vectors"][0]
    basis["root_vectors"][0] = [str(2 * int(x)) for x in vec]
    (tmp_path / "bad.json").write_text(json.dumps(basis))
    rep = tmp_path / "rep.json"
    code = main(["chevalley", "verify", "--algebra", str(work / "g.json"), "--roots", str(work / "r.json"),
                 "--basis", str(tmp_path / "bad.json"), "--report", str(rep)])
    assert code == 1
    assert _read(rep)["failures"]


def test_kostant_check_and_close(work, tmp_path):
    lat = _read(work / "v.json")["lattice"]
    (tmp_path / "m.json").write_text(json.dumps(lat))
    args = ["--algebra", str(work / "g.json"), "--roots", str(work / "r.json"), "--module", str(work / "v.json")]
    assert main(["kostant", "check", *args, "--lattice", str(tmp_path / "m.json"), "--out", str(tmp_path / "o")]) == 0
    (tmp_path / "half.json").write_text(json.dumps([["1/2", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]))
    assert main(["kostant", "check", "--algebra", str(work / "g.json"), "--roots", str(work / "r.json"),
                 "--module", str(work / "vt.json"), "--lattice", str(tmp_path / "half.json"),
                 "--out", str(tmp_path / "o2")]) == 1
    assert _read(tmp_path / "o2")["violations"]
    (tmp_path / "seed.json").write_text(json.dumps([["1", "0", "0"]]))
    assert main(["kostant", "close", "--algebra", str(work / "g.json"), "--roots", str(work / "r.json"),
                 "--module", str(work / "vt.json"), "--lattice", str(tmp_path / "seed.json"),
                 "--out", str(tmp_path / "c.json")]) == 0


def test_group_eval_and_factor(work, tmp_path):
    def t(mono, num):
        return {"monomial": mono, "num": str(num), "den": "1"}

    word = [
        {"kind": "odd", "root": 1, "param": [t([1], 1)]},
        {"kind": "even", "root": 0, "param": [t([], 2), t([2, 3], 1)]},
        {"kind": "odd", "root": 4, "param": [t([4], -1)]},
        {"kind": "torus", "cartan": 1, "param": [t([], -1)]},
    ]
    w = tmp_path / "w.json"
    w.write_text(json.dumps(word))
    args = ["--module", str(work / "v.json"), "--word", str(w)]
    assert main(["group", "eval", *args, "--out", str(tmp_path / "e.json")]) == 0
    assert main(["group", "factor", *args, "--out", str(tmp_path / "f.json")]) == 0
    f = _read(tmp_path / "f.json")
    assert f["recomposition_exact"] is True
    assert len(f["theta"]) == 4


def test_selftest():
    assert main(["selftest", "--words", "2", "--out", "/dev/null"]) == 0


@pytest.mark.parametrize("argv", [
    ["build", "--family", "sl", "--m", "2", "--n", "2"],
    ["build", "--family", "p", "--m", "3", "--n", "0"],
    ["build", "--family", "gl"],
    ["nosuch"],
    [],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_malformed_json_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": 1,\n  "basis": [1, 2,, 3]}')
    assert main(["roots", "--algebra", str(bad)]) == 2
    err = capsys.readouterr().err
    assert f"{bad}:2:" in err


def test_malformed_field_path(work, tmp_path, capsys):
    data = _read(work / "g.json")
    data["basis"][3]["parity"] = 7
    (tmp_path / "g.json").write_text(json.dumps(data))
    assert main(["roots", "--algebra", str(tmp_path / "g.json")]) == 2
    assert "algebra.basis[3].parity" in capsys.readouterr().err


def test_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("CHEVSUPER_CACHE_DIR", str(tmp_path / "cache"))
    out1, out2 = tmp_path / "1.json", tmp_path / "2.json"
    assert main(["build", "--family", "gl", "--m", "1", "--n", "1", "--out", str(out1)]) == 0
    assert (tmp_path / "cache" / "gl_1_1.json").exists()
    assert main(["build", "--family", "gl", "--m", "1", "--n", "1", "--out", str(out2)]) == 0
    a, b = _read(out1), _read(out2)
    a.pop("meta"), b.pop("meta")
    assert a == b


def test_invalid_token_is_usage_error(work, tmp_path):
    w = tmp_path / "w.json"
    w.write_text(json.dumps([{"kind": "odd", "root": 0, "param": [{"monomial": [1], "num": "1", "den": "1"}]}]))
    assert main(["group", "eval", "--module", str(work / "v.json"), "--word", str(w)]) == 2
