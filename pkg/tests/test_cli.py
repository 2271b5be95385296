import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from constructible.cli import main
from constructible.documents import dumps

GOLDEN = Path(__file__).parent / "golden"
GOLDEN_RUNS = {
    "circle.ak.json": ["ak", "--complex", "fixture:circle"],
    "sphere2.ak.json": ["ak", "--complex", "fixture:sphere2"],
    "ak-X.ak.json": ["ak", "--complex", "fixture:ak-X"],
    "fold-map.pushforward.json": ["pushforward", "--complex", "fixture:fold-map"],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_fixture(tmp_path, name, part="complex"):
    path = tmp_path / f"{name}.{part}.json"
    main(["fixture", name, "--part", part, "--format", "json", "--out", str(path)])
    return path


def test_euler_circle_document(tmp_path, capsys):
    path = write_fixture(tmp_path, "circle")
    capsys.readouterr()
    code, out, _ = run(capsys, "euler", "--complex", str(path), "--format", "json")
    assert code == 0 and json.loads(out) == {"euler": True}


def test_integrate_sphere(tmp_path, capsys):
    path = write_fixture(tmp_path, "sphere2")
    capsys.readouterr()
    code, out, _ = run(capsys, "integrate", "--complex", str(path), "--function", "ones")
    assert code == 0 and out.strip() == "integral: 2"


def test_completely_euler_ak_x_exits_one(tmp_path, capsys):
    path = write_fixture(tmp_path, "ak-X")
    capsys.readouterr()
    code, out, _ = run(capsys, "completely-euler", "--complex", str(path), "--format", "json")
    report = json.loads(out)
    assert code == 1 and not report["verdict"] and report["failing_witnesses"]


def test_theta_not_euler(capsys):
    code, out, _ = run(capsys, "euler", "--complex", "fixture:theta", "--format", "json")
    assert code == 1 and json.loads(out)["witness"]["link_value"] == 3


def test_input_errors_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [')
    code, out, err = run(capsys, "euler", "--complex", str(bad))
    assert code == 2 and out == "" and "line 1" in err
    code, _, err = run(capsys, "link-along", "--complex", "fixture:path", "--set", '[["a","b"]]')
    assert code == 2 and "closed" in err
    code, _, _ = run(capsys, "euler", "--complex", "fixture:nope")
    assert code == 2


def test_link_along_with_chi(capsys):
    code, out, _ = run(
        capsys, "link-along", "--complex", "fixture:path", "--set", '[["b"]]',
        "--chi-in", '{"simplices": [["a","b"],["b","c"]], "closure": true}', "--format", "json",
    )
    assert code == 0
    assert json.loads(out) == {"chi_link": 2, "function": [[["b"], 2]]}


def test_function_document(tmp_path, capsys):
    doc = tmp_path / "f.json"
    doc.write_text(dumps({"complex": "fixture:path", "values": [[["b"], 1]]}))
    code, out, _ = run(capsys, "link", "--function", str(doc), "--format", "json")
    assert code == 0 and json.loads(out) == {"function": []}


def test_pushforward_with_map_document(tmp_path, capsys):
    path = write_fixture(tmp_path, "double-cover", "map")
    capsys.readouterr()
    code, out, _ = run(capsys, "pushforward", "--map", str(path), "--format", "json")
    assert code == 0 and all(v == 2 for _, v in json.loads(out)["function"])


def test_ak_stratified_uses_fixture_strata(capsys):
    code, out, _ = run(capsys, "ak-stratified", "--complex", "fixture:ak-X", "--format", "json")
    assert code == 1 and json.loads(out)["details"]["eps3_forms"]


def test_iterated_link_exit_code(capsys):
    code, out, _ = run(capsys, "iterated-link", "--complex", "fixture:ak-Y", "--set", '[["a"]]', "--format", "json")
    assert code == 0 and json.loads(out)["divisible"]
    code, _, _ = run(capsys, "iterated-link", "--complex", "fixture:path", "--set", '[["a"]]')
    assert code == 1


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--rounds", "10", "--format", "json")
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden_reports(name, capsys):
    code, out, _ = run(capsys, *GOLDEN_RUNS[name], "--format", "json")
    assert out == (GOLDEN / name).read_text(encoding="utf-8")
    assert code in (0, 1)


def test_golden_stable_across_processes():
    argv = GOLDEN_RUNS["ak-X.ak.json"] + ["--format", "json"]
    outs = {
        subprocess.run(
            [sys.executable, "-m", "constructible", *argv], capture_output=True, env={**os.environ, "PYTHONHASHSEED": seed}
        ).stdout
        for seed in ("1", "2", "3")
    }
    assert outs == {(GOLDEN / "ak-X.ak.json").read_bytes()}


def test_oracle_disagreement_exits_three(monkeypatch, capsys):
    import constructible.selftest as selftest

    monkeypatch.setattr(selftest, "link_op_oracle", lambda phi: phi)
    code, out, _ = run(capsys, "selftest", "--rounds", "2", "--format", "json")
    assert code == 3 and not json.loads(out)["ok"]


def test_consistency_exception_exits_three(monkeypatch, capsys):
    import constructible.cli as cli
    from constructible.errors import FormulaDisagreement

    def broken(ctx):
        raise FormulaDisagreement("two routes differ")

    monkeypatch.setitem(cli.COMMANDS, "euler", (broken, ""))
    code, _, err = run(capsys, "euler", "--complex", "fixture:circle")
    assert code == 3 and "consistency" in err
