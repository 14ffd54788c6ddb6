import json
import subprocess
import sys

import pytest

from derlab.cli import main
from derlab.serialize import dumps, encode
from derlab.shapes import arrow


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_counterexample_passes(capsys):
    code, out, _ = _run(capsys, "counterexample", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] == "pass"
    strict, pseudo = rep["checks"]
    assert strict["result"]["strict_inverse"] is None
    assert pseudo["verdict"] == "pass" and pseudo["result"]["strictly_2natural"] is False


def test_smothering2_fails_on_counterexample_functor(capsys):
    code, _, _ = _run(capsys, "smothering2", "--in", "fixture:counterexample-F")
    assert code == 1


def test_fundamental_category_of_loop_is_undetermined(capsys):
    code, out, _ = _run(capsys, "fundamental-category", "--in", "fixture:loop", "--bound", "4", "--format", "json")
    assert code == 2
    assert json.loads(out)["verdict"] == "undetermined"


def test_fundamental_category_of_horn(capsys):
    code, out, _ = _run(capsys, "fundamental-category", "--in", "fixture:horn21", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["result"]["morphisms"]) == 6


@pytest.mark.parametrize("argv", [
    ["no-such-command"],
    ["validate", "--in", "fixture:no-such-fixture"],
    ["validate", "--in", "fixture:two", "--no-such-flag"],
    ["validate"],
    ["nerve", "--in", "fixture:two", "--dim-bound", "99"],
])
def test_invalid_input_exits_3(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 3 and err


def test_validate(tmp_path, capsys):
    good = tmp_path / "two.json"
    good.write_text(dumps(arrow()), encoding="utf-8")
    assert _run(capsys, "validate", "--in", str(good))[0] == 0
    data = encode(arrow())
    data["composition"] = data["composition"][1:]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data), encoding="utf-8")
    code, out, _ = _run(capsys, "validate", "--in", str(bad), "--format", "json")
    assert code == 1
    assert json.loads(out)["witnesses"][0]["type"] == "MissingComposite"


def test_parse_error_reports_location(tmp_path, capsys):
    bad = tmp_path / "broken.json"
    bad.write_text('{\n  "kind": "category",\n}', encoding="utf-8")
    code, _, err = _run(capsys, "validate", "--in", str(bad), "--format", "json")
    assert code == 3
    info = json.loads(err)
    assert info["error"] == "ParseError" and (info["line"], info["column"]) == (3, 1)


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("DERLAB_SEED", "17")
    _, out, _ = _run(capsys, "kan-check", "--in", "fixture:iso", "--format", "json")
    assert json.loads(out)["seed"] == 17
    _, out, _ = _run(capsys, "kan-check", "--in", "fixture:iso", "--format", "json", "--seed", "5")
    assert json.loads(out)["seed"] == 5
    monkeypatch.setenv("DERLAB_SEED", "x")
    assert _run(capsys, "kan-check", "--in", "fixture:iso")[0] == 3


def test_out_file_and_determinism(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert _run(capsys, "hder-check", "--format", "json", "--out", str(p))[0] == 0
    a, b = (p.read_bytes() for p in paths)
    assert a == b and json.loads(a)["verdict"] == "pass"


def test_human_format(capsys):
    code, out, _ = _run(capsys, "qcat-check", "--in", "fixture:two")
    assert code == 0 and "pass" in out and "seed: 0" in out


def test_kan_check_fails_on_arrow(capsys):
    assert _run(capsys, "kan-check", "--in", "fixture:two")[0] == 1


def test_construction_commands(capsys):
    for argv in (["opposite", "--in", "fixture:two"],
                 ["nerve", "--in", "fixture:two", "--dim-bound", "2"],
                 ["quotient-T", "--in", "fixture:counterexample-cat"],
                 ["hn-adjunction", "--in", "fixture:iso"]):
        assert _run(capsys, *argv)[0] == 0


def test_installed_entry_point():
    r = subprocess.run([sys.executable, "-m", "derlab", "qcat-check", "--in", "fixture:iso"],
                       capture_output=True, text=True)
    assert r.returncode == 0, r.stderr
