import json
import xml.etree.ElementTree as ET

import pytest

from clusterscatter.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_walk_a2_pentagon(capsys):
    code, out, _ = run(capsys, "walk", "--matrix", "A2", "--walk", "1,2,1,2,1")
    assert code == 0
    assert "G = [[0, 1], [1, 0]]" in out


def test_walk_empty(capsys):
    code, out, _ = run(capsys, "walk", "--matrix", "[[0,-1],[1,0]]", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["C"] == data["G"] == [[1, 0], [0, 1]]
    assert data["F"] == ["1", "1"]


def test_walk_reduction_warns(capsys):
    code, out, err = run(capsys, "walk", "--matrix", "A2", "--walk", "1,1")
    assert code == 0
    assert "reduces to []" in err
    assert "G = [[1, 0], [0, 1]]" in out


def test_walk_from_document(tmp_path, capsys):
    doc = tmp_path / "job.json"
    doc.write_text(json.dumps({"matrix": [[0, -1], [2, 0]], "walk": [1, 2]}))
    code, out, _ = run(capsys, "walk", "--in", str(doc))
    assert code == 0
    assert out.startswith("walk: [1, 2]")


def test_parse_error_reports_position(tmp_path, capsys):
    doc = tmp_path / "bad.json"
    doc.write_text('{"matrix": [[0, -1],\n [1 0]]}')
    code, _, err = run(capsys, "walk", "--in", str(doc))
    assert code == 2
    assert "line 2, column 5" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("walk", "--matrix", "A2", "--walk", "1,3"),
        ("walk", "--matrix", "[[0,1],[1,0]]"),
        ("walk", "--matrix", "Z9"),
        ("walk", "--matrix", "A2", "--walk", "1,x"),
        ("scatter", "--matrix", "[[0,0],[0,0]]"),
        ("scatter", "--matrix", "A3"),
        ("fan", "--matrix", "A3", "--format", "svg", "--depth", "3"),
        ("theta", "--matrix", "A2"),
        ("verify", "nonsense"),
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:") or "cones" in err


def test_fan_reports(capsys):
    code, out, _ = run(capsys, "fan", "--matrix", "G2")
    assert code == 0
    assert out.startswith("8 cones, complete")
    code, out, _ = run(capsys, "fan", "--matrix", "A11", "--depth", "10")
    assert out.startswith("21 cones, incomplete")
    assert "uncovered sector" in out


def test_fan_svg_to_file(tmp_path, capsys):
    path = tmp_path / "fan.svg"
    code, out, _ = run(capsys, "fan", "--matrix", "A2", "--format", "svg", "--out", str(path))
    assert code == 0 and out == ""
    first = path.read_bytes()
    run(capsys, "fan", "--matrix", "A2", "--format", "svg", "--out", str(path))
    assert path.read_bytes() == first
    assert ET.fromstring(first).get("viewBox") == "0 0 432 432"


def test_scatter_listing(capsys):
    code, out, _ = run(capsys, "scatter", "--matrix", "B2")
    assert code == 0
    assert "1 + yhat^(1,1)" in out and "1 + yhat^(1,2)" in out
    code, out, _ = run(capsys, "scatter", "--matrix", "A11", "--format", "json")
    walls = json.loads(out)["walls"]
    badlands = [w for w in walls if w["support"] == [[1, -1]]]
    assert badlands[0]["function"].startswith("1 + 2*yhat^(1,1) + 3*yhat^(2,2)")


def test_theta_command(capsys):
    code, out, _ = run(capsys, "theta", "--matrix", "A2", "--m0=-1,0")
    assert code == 0
    assert "theta = x^(-1,0) + x^(-1,1)" in out
    code, out, _ = run(capsys, "theta", "--matrix", "A2", "--m0=1,1", "--point", "2,5", "--format", "json")
    assert json.loads(out)["lines"] == 1


def test_verify_is_deterministic(capsys):
    code, first, _ = run(capsys, "verify", "dualities", "--budget", "20", "--seed", "3")
    assert code == 0
    assert first.startswith("suite dualities: pass")
    _, second, _ = run(capsys, "verify", "dualities", "--budget", "20", "--seed", "3")
    assert first == second


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "consistency-rank2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert data["suites"][0]["checks"]["loop consistency"] == 5


def test_verify_failure_exit_code(monkeypatch, capsys):
    from clusterscatter import cli
    from clusterscatter.suites import SuiteReport

    def broken():
        rep = SuiteReport("broken")
        rep.check("always false", False, "on purpose")
        return rep

    monkeypatch.setitem(cli.SUITES, "broken", broken)
    code, out, _ = run(capsys, "verify", "broken")
    assert code == 1
    assert "failure: always false: on purpose" in out


def test_invariant_violation_exit_code(monkeypatch, capsys):
    from clusterscatter import cli
    from clusterscatter.errors import InvariantViolation

    def explode(**_):
        raise InvariantViolation("sign-incoherent column")

    monkeypatch.setitem(cli.SUITES, "explode", explode)
    code, _, err = run(capsys, "verify", "explode")
    assert code == 3
    assert "sign-incoherent column" in err
