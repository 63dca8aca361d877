import json

import pytest

from recolle.cli import RunConfig, ConfigError, main
from recolle.report import Check, Report, Tally, single


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_verify_writes_json_and_passes(tmp_path, capsys):
    out = tmp_path / "out.json"
    code, _ = run(capsys, "verify", "--example", "quad-free", "--max-dim", "1", "1", "--max-dim-aa", "2",
                  "--json", str(out))
    assert code == 0
    data = json.loads(out.read_text())
    assert data["schema"] == 1 and data["status"] == "pass"
    ids = [c["id"] for c in data["checks"]]
    assert ids == sorted(ids)


def test_verify_zero_bound_is_trivially_fine(capsys):
    code, captured = run(capsys, "verify", "--example", "quad-free", "--max-dim", "0", "0")
    assert code == 0 and "overall: pass" in captured.out


@pytest.mark.parametrize("argv", [["verify", "--example", "nope"], ["verify", "--max-dim", "1"],
                                  ["verify", "--max-dim", "-1", "2"], ["frobnicate"],
                                  ["derived", "--functor", "q^*"], ["derived", "--object", "{not json"]])
def test_configuration_errors_exit_2(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_json_output_is_deterministic(capsys):
    argv = ["verify", "--example", "quad-vect", "--max-dim", "1", "2", "--format", "json", "--seed", "7"]
    first = run(capsys, *argv)[1].out
    second = run(capsys, *argv)[1].out
    assert first == second and json.loads(first)["seed"] == 7


@pytest.mark.parametrize("example,l2", [("quad-free", 0), ("quad-vect", 1)])
def test_derived_l2_of_i_star_f2(capsys, example, l2):
    code, captured = run(capsys, "derived", "--example", example, "--degree", "2", "--format", "json")
    assert code == 0
    check = json.loads(captured.out)["checks"][0]
    assert check["dims"]["value"]["dims"] == {"v": l2}


def test_derived_on_explicit_object(capsys):
    obj = json.dumps({"quiver": "sigma2", "dims": {"x": 1}, "arrows": {"u": {"rows": 1, "cols": 1, "data": ["0"]}}})
    code, captured = run(capsys, "derived", "--functor", "j_!", "--object", obj, "--degree", "0",
                         "--format", "json")
    assert code == 0
    assert json.loads(captured.out)["checks"][0]["dims"]["value"]["dims"] == {"v1": 1, "v2": 1}


def test_derived_rejects_invalid_object(capsys):
    bad = json.dumps({"quiver": "quad_free", "dims": {"v1": 1, "v2": 1},
                      "arrows": {"H": {"rows": 1, "cols": 1, "data": ["1"]},
                                 "P": {"rows": 1, "cols": 1, "data": ["1"]}}})
    assert run(capsys, "derived", "--object", bad)[0] == 2


def test_counterexample_prints_witness_and_gap_table(capsys):
    code, captured = run(capsys, "counterexample")
    assert code == 0
    assert "PH = [[0, 0], [1, 0]]" in captured.out
    assert "2,1           4          3" in captured.out


def test_classify(capsys):
    code, captured = run(capsys, "classify", "--max-dim", "1", "1", "--format", "json")
    assert code == 0
    assert json.loads(captured.out)["checks"][0]["dims"]["1,1"] == [3, 3]


def test_mv_on_product(capsys):
    code, captured = run(capsys, "mv", "--example", "product", "--max-dim", "1", "1")
    assert code == 0 and "equivalence=true prehereditary=true" in captured.out


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig("verify", seed=-1)
    with pytest.raises(ConfigError):
        RunConfig("verify", max_dim=(1, 2, 3))
    assert RunConfig("verify").seed == 0xF2F2


def test_report_exit_codes():
    r = Report("x")
    assert r.exit_code() == 0
    t = Tally("maybe")
    t.unsure("w")
    r.extend([t.result()])
    assert r.exit_code() == 3
    r.extend([single("no", False)])
    assert r.exit_code() == 1 and r.status == "fail"


def test_tally_keeps_first_witness_lazily():
    calls = []
    t = Tally("t")
    t.record(True, lambda: calls.append(0))
    t.record(False, lambda: calls.append(1) or "first")
    t.record(False, lambda: calls.append(2) or "second")
    assert t.result().witness == "first" and calls == [1]
    assert t.result().to_json()["count"] == 3


def test_report_text_and_json_forms():
    r = Report("s", [Check("b", "pass", 2), Check("a", "fail", 1, "why")], seed=3)
    assert [c["id"] for c in r.to_json()["checks"]] == ["a", "b"]
    assert r.dumps() == Report("s", [Check("a", "fail", 1, "why"), Check("b", "pass", 2)], seed=3).dumps()
    assert "overall: fail" in r.to_text()
