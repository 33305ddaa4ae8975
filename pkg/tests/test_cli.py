import csv
import json

import pytest

from msncap.cli import decimal, main, rational


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


N3 = {"n": 3, "kind": "rcmsn", "events": [[2, 3], [1, 3], [1, 2]]}


def test_formatting():
    from fractions import Fraction

    assert rational(Fraction(8, 9)) == "8/9"
    assert rational(Fraction(4)) == "4/1"
    assert decimal(Fraction(8, 9)) == "0.8888888889"


def test_capacity(tmp_path, capsys):
    path = write(tmp_path, "n3.json", N3)
    assert main(["capacity", "--input", path, "--per-event"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("8/9") and out[1] == "3 3 2"
    assert main(["capacity", "--input", path, "--json", "--oracle"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["capacity"] == "8/9" and data["schema_version"] == 1


def test_capacity_of_arrangement(tmp_path, capsys):
    arr = {"lines": [{"slope": "1", "intercept": "0"}, {"slope": "-1", "intercept": "1"}, {"slope": "0", "intercept": "1/3"}]}
    assert main(["capacity", "--input", write(tmp_path, "a.json", arr), "--absolute"]) == 0
    assert "/" in capsys.readouterr().out


@pytest.mark.parametrize(
    "data",
    [
        {"n": 3, "kind": "rcmsn", "events": [[1, 2], [1, 2], [1, 3]]},
        {"n": 3, "kind": "rcmsn", "events": [[1, 2]]},
        {"n": 3, "kind": "cmsn", "events": [[1, 4]]},
        {"n": 3, "kind": "cmsn", "events": []},
        {"n": 3, "kind": "weird", "events": [[1, 2]]},
        [1, 2],
    ],
)
def test_bad_inputs_exit_2(tmp_path, data, capsys):
    assert main(["capacity", "--input", write(tmp_path, "bad.json", data)]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_file(tmp_path):
    assert main(["capacity", "--input", str(tmp_path / "none.json")]) == 2


def test_construct(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert main(["construct", "--kind", "grid", "--n", "5", "--m", "3", "--out", str(out)]) == 0
    report = json.loads((tmp_path / "g.report.json").read_text())
    assert report["absolute_capacity"] == "21/50"
    assert report["capacity"] == "7/10"
    assert json.loads(out.read_text())["lines"]
    assert main(["construct", "--kind", "opt4", "--n", "6", "--out", str(out)]) == 0
    assert json.loads((tmp_path / "g.report.json").read_text())["capacity"] == "34/39"
    assert main(["construct", "--kind", "cd-family", "--n", "12", "--s", "3", "--out", str(out)]) == 0
    assert json.loads((tmp_path / "g.report.json").read_text())["check"] == "none"


def test_construct_round_trip(tmp_path, capsys):
    out = tmp_path / "m.json"
    assert main(["construct", "--kind", "min-gmsn", "--n", "4", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["capacity", "--input", str(out)]) == 0
    assert capsys.readouterr().out.startswith("5/6")


def test_realize(tmp_path, capsys):
    path = write(tmp_path, "n3.json", N3)
    wit = tmp_path / "w.json"
    assert main(["realize", "--input", path, "--max-slopes", "3", "--witness", str(wit)]) == 0
    assert capsys.readouterr().out.startswith("realizable")
    capsys.readouterr()
    assert main(["capacity", "--input", str(wit), "--per-event"]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "3 3 2"
    assert main(["realize", "--input", path, "--max-slopes", "2"]) == 1
    assert "stage: class count" in capsys.readouterr().out
    bad = write(tmp_path, "bad.json", {"n": 4, "kind": "rcmsn", "events": [[1, 2], [3, 4], [1, 3], [2, 4], [1, 4], [2, 3]]})
    assert main(["realize", "--input", bad, "--max-slopes", "4"]) == 1
    assert "stage: wiring" in capsys.readouterr().out
    assert main(["realize", "--input", path, "--max-slopes", "5"]) == 2


def test_realize_fixed_slopes(tmp_path, capsys, fixture_json):
    path = write(tmp_path, "f.json", fixture_json("infeasible_slopes.json"))
    assert main(["realize", "--input", path, "--slopes", "1,-1,-3"]) == 1
    assert main(["realize", "--input", path, "--slopes", "0,1,vertical"]) in (0, 1)


def test_estimate(tmp_path, capsys):
    out = tmp_path / "e.csv"
    args = ["estimate", "--model", "rgmsn", "--n", "10", "--s", "2", "--trials", "5", "--seed", "1", "--csv", str(out)]
    assert main(args) == 0
    text = capsys.readouterr().out
    assert "mean 0.6000000000" in text
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["trial", "capacity"] and len(rows) == 6
    assert main(["estimate", "--model", "reach-table", "--n", "10", "--s", "3", "--trials", "3", "--seed", "1"]) == 0
    assert "P(1,2,3)" in capsys.readouterr().out
    assert main(["estimate", "--model", "rgmsn", "--n", "10", "--trials", "3", "--seed", "1"]) == 2


def test_formula(capsys):
    assert main(["formula", "--name", "expabs2", "--n", "5"]) == 0
    assert capsys.readouterr().out.startswith("7/20")
    assert main(["formula", "--name", "maxabs-limit", "--s", "3"]) == 0
    assert "0.4694" in capsys.readouterr().out
    assert main(["formula", "--name", "max4", "--n", "5"]) == 0
    assert capsys.readouterr().out.startswith("13/15")
    assert main(["formula", "--name", "nope", "--n", "5"]) == 2
