import json

import pytest

from nilprod.cli import main


@pytest.fixture
def spec_file(tmp_path):
    def write(doc: dict, name="g.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_describe(spec_file, capsys):
    path = spec_file({"prime": 3, "class": 2, "orders": [1, 1]})
    code, out, _ = run(capsys, ["describe", "--spec", path, "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["order"] == 27
    assert [e["entry"] for e in doc["basis"]] == ["x1", "x2", "[x2,x1]"]


def test_mul(spec_file, capsys):
    path = spec_file({"prime": 3, "class": 2, "orders": [1, 1]})
    code, out, _ = run(capsys, ["mul", "--spec", path, "--json", "x2*x1", "x1^-1"])
    assert code == 0
    assert json.loads(out)["product"] == "x2"


def test_center_and_lcs(spec_file, capsys):
    path = spec_file({"prime": 2, "class": 3, "orders": [1, 1], "variant": "k3p2"})
    code, out, _ = run(capsys, ["center", "--spec", path, "--json"])
    assert code == 0
    assert json.loads(out)["center"]["order"] == 2
    code, out, _ = run(capsys, ["lcs", "--spec", path, "--json"])
    assert code == 0
    assert json.loads(out)["orders"] == [16, 4, 2, 1]


def test_quotient(spec_file, capsys):
    path = spec_file({"prime": 3, "class": 2, "orders": [2, 2]})
    code, out, _ = run(capsys, ["quotient", "--spec", path, "--json", "--by", "[x2,x1]^3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["quotient_order"] == 3**5


def test_capable_exit_codes(spec_file, capsys):
    bad = spec_file({"prime": 3, "class": 2, "orders": [1, 2]})
    code, out, _ = run(capsys, ["capable", "--spec", bad, "--json", "--strict"])
    assert code == 1
    assert json.loads(out)["verdict"]["status"] == "not-capable"
    good = spec_file({"prime": 3, "class": 2, "orders": [1, 1]}, "g2.json")
    code, out, _ = run(capsys, ["capable", "--spec", good, "--json", "--strict", "--witness"])
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"]["status"] == "capable"
    assert doc["verdict"]["witness"]["verified"] is True


def test_capable_presentation11(spec_file, capsys):
    path = spec_file(
        {"prime": 3, "presentation11": {"alpha": 2, "beta": 2, "gamma": 1, "sigma": 0}}
    )
    code, out, _ = run(capsys, ["capable", "--spec", path, "--json"])
    assert code == 0
    assert json.loads(out)["verdict"]["status"] == "capable"
    code, out, _ = run(capsys, ["presentation11", "--spec", path, "--json"])
    assert code == 0
    assert json.loads(out)["order"] == 81


def test_witness_subcommand(spec_file, capsys):
    path = spec_file({"prime": 3, "class": 2, "orders": [1, 1]})
    code, out, _ = run(capsys, ["witness", "--spec", path, "--json", "--k-orders", "1,1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["verified"] is True
    assert doc["report"]["orders"]["|Q/Z(Q)|"] == 27


def test_extraspecial(capsys):
    code, out, _ = run(capsys, ["extraspecial", "--p", "3", "--n", "5", "--kind", "exponent_p", "--json", "--showcase"])
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"]["status"] == "not-capable"
    assert doc["showcase"]["order"] == 243
    assert doc["showcase"]["center_order"] == 3
    assert doc["showcase"]["necessity_check"] is True
    code, out, _ = run(capsys, ["extraspecial", "--p", "2", "--n", "3", "--kind", "dihedral", "--json"])
    assert json.loads(out)["verdict"]["status"] == "capable"


def test_verify_suites(spec_file, capsys):
    path = spec_file({"prime": 3, "class": 2, "orders": [1, 1]})
    code, out, _ = run(capsys, ["verify", "--suite", "identities", "--spec", path, "--json", "--samples", "25"])
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "PASS"
    assert len(doc["reports"]) == 10
    code, out, _ = run(capsys, ["verify", "--suite", "arith", "--json", "--samples", "25"])
    assert code == 0
    assert json.loads(out)["status"] == "PASS"


def test_verify_json_deterministic(spec_file, capsys):
    path = spec_file({"prime": 2, "class": 3, "orders": [1, 1], "variant": "k3p2"})
    argv = ["verify", "--suite", "identities", "--spec", path, "--json", "--samples", "20", "--seed", "7"]
    code1, out1, _ = run(capsys, argv)
    code2, out2, _ = run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_input_error_exit_code(spec_file, capsys):
    path = spec_file({"prime": 3, "class": 2, "orders": [1, 1], "bogus": 1})
    code, _, err = run(capsys, ["describe", "--spec", path])
    assert code == 2 and "unknown" in err
    code, _, err = run(capsys, ["describe", "--spec", "/nonexistent.json"])
    assert code == 2
    path2 = spec_file({"prime": 3, "class": 2, "orders": [1, 1]}, "ok.json")
    code, _, err = run(capsys, ["mul", "--spec", path2, "x1^", "x2"])
    assert code == 2 and "position" in err


def test_budget_exit_code(spec_file, capsys):
    path = spec_file({"prime": 3, "class": 2, "orders": [1, 1]})
    code, _, err = run(capsys, ["describe", "--spec", path, "--budget", "5"])
    assert code == 3 and "budget" in err.lower()
