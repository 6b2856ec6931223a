import json

import numpy as np
import pytest

from geamkit.cli import main
from geamkit.io import dumps, geam_from_dict, geam_to_dict, load_geam, read_json, write_json
from geamkit.presets import preset


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dumps_uses_17_digits():
    assert dumps({"x": 0.1}) == '{"x": 0.10000000000000001}\n'
    assert dumps([-0.0, 2, True, None]) == "[0, 2, true, null]\n"
    with pytest.raises(ValueError):
        dumps(float("nan"))


def test_geam_round_trip_is_exact():
    geam = preset("mum", 3)
    back = geam_from_dict(json.loads(dumps(geam_to_dict(geam))))
    assert np.array_equal(back.operators, geam.operators)
    assert [f.tau > 0 for f in back.frames] == [f.tau > 0 for f in geam.frames]


def test_write_json_atomic(tmp_path):
    path = tmp_path / "x.json"
    write_json(str(path), {"a": 1.5})
    assert read_json(path) == {"a": 1.5}
    assert [p.name for p in tmp_path.iterdir()] == ["x.json"]


def test_preset_command(tmp_path, capsys):
    out = tmp_path / "mub2.json"
    code, stdout, _ = run(capsys, "preset", "--name", "mub", "--dim", "2", "--out", str(out))
    assert code == 0
    assert len(load_geam(out).operators) == 6
    assert json.loads(stdout)["measured"]["S"] == pytest.approx(1 / 9, abs=1e-14)


def test_preset_sic(capsys):
    code, stdout, _ = run(capsys, "preset", "--name", "sic", "--dim", "2")
    measured = json.loads(stdout)["measured"]
    assert code == 0
    assert measured["S"] == pytest.approx(1 / 6, abs=1e-14)
    assert measured["C_max"] == pytest.approx(1 / 3, abs=1e-14)


def test_nm_povm_command(capsys):
    args = ["preset", "--name", "nm_povm", "--dim", "3", "--frames", "4", "--outcomes", "3", "--b", "0.6667"]
    assert run(capsys, *args)[0] == 0
    code, _, err = run(capsys, *args, "--basis", "gellmann")
    assert code == 1 and "PositivityViolation" in err


def test_usage_errors(capsys):
    assert run(capsys, "preset", "--name", "mub", "--dim", "6")[0] == 2
    assert run(capsys, "preset", "--name", "nope", "--dim", "2")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "validate", "--geam", "/nonexistent.json")[0] == 2


def test_validate_pass_and_fail(tmp_path, capsys):
    path = tmp_path / "g.json"
    run(capsys, "preset", "--name", "mub", "--dim", "2", "--out", str(path))
    code, stdout, _ = run(capsys, "validate", "--geam", str(path))
    assert code == 0 and json.loads(stdout)["conical_design"]["is_design"]

    data = read_json(path)
    data["frames"][0]["operators"][0]["re"][0][0] += 1e-3
    bad = tmp_path / "bad.json"
    write_json(str(bad), data)
    code, stdout, _ = run(capsys, "validate", "--geam", str(bad))
    report = json.loads(stdout)
    assert code == 1
    assert not report["conditions"]["resolution"]["passed"]


def test_build_mixed_b_not_design(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    write_json(str(cfg), {"dim": 2, "frames": [
        {"M": 2, "gamma": 1 / 3, "b": 1.0},
        {"M": 2, "gamma": 1 / 3, "b": 0.8},
        {"M": 2, "gamma": 1 / 3, "b": 0.9},
    ]})
    out = tmp_path / "g.json"
    assert run(capsys, "build", "--config", str(cfg), "--out", str(out))[0] == 0
    code, stdout, _ = run(capsys, "validate", "--geam", str(out))
    report = json.loads(stdout)
    assert code == 0
    assert not report["conical_design"]["is_design"]
    assert report["design_params"] is None


def test_measure_and_detect(tmp_path, capsys):
    geam = tmp_path / "g.json"
    run(capsys, "preset", "--name", "mub", "--dim", "2", "--out", str(geam))
    state = tmp_path / "s.json"
    assert run(capsys, "random-state", "--dim", "2", "--rank", "2", "--seed", "4", "--out", str(state))[0] == 0
    code, stdout, _ = run(capsys, "measure", "--geam", str(geam), "--state", str(state), "--munu", "0.3", "0.2,0.5")
    report = json.loads(stdout)
    assert code == 0
    assert report["ioc_direct"] == pytest.approx(report["ioc_formula"], abs=1e-12)
    for c in report["coherence"]:
        assert abs(c["direct"] - c["formula"]) < 1e-8

    bell = tmp_path / "bell.json"
    run(capsys, "random-state", "--dim", "2", "--schmidt", "0.7071067811865476,0.7071067811865476", "--out", str(bell))
    code, stdout, _ = run(capsys, "detect", "--geam", str(geam), "--state", str(bell))
    report = json.loads(stdout)
    assert code == 0
    assert report["min_schmidt_number_certified"] == 2
    assert report["concurrence_lower_bound"] == pytest.approx(1.0, abs=1e-9)

    # wrong kind of state
    assert run(capsys, "detect", "--geam", str(geam), "--state", str(state))[0] == 2


def test_random_state_is_deterministic(capsys):
    first = run(capsys, "random-state", "--dim", "3", "--bipartite", "--seed", "9")[1]
    second = run(capsys, "random-state", "--dim", "3", "--bipartite", "--seed", "9")[1]
    assert first == second
    assert json.loads(first)["bipartite"] is True


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("GEAMKIT_THREADS", "1")
    assert run(capsys, "preset", "--name", "sic", "--dim", "3")[0] == 0


def test_help_lists_defaults(capsys):
    assert main(["measure", "--help"]) == 0
    text = " ".join(capsys.readouterr().out.split())
    assert "default: [0.5, 1.0, 1.5, 2.0, 2.5, 3.0]" in text
