import json

import pytest

from cubeham import cli
from cubeham.basecases import exception_catalog


def write(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def square(tmp_path):
    return write(tmp_path / "inst.json", {"n": 2, "matching": [[0, 1]], "faults": []})


def test_construct_and_verify(tmp_path, square, capsys):
    out = tmp_path / "cyc.json"
    dot = tmp_path / "cyc.dot"
    assert cli.main(["construct", square, "-o", str(out), "--trace", "--dot", str(dot)]) == cli.EXIT_OK
    data = json.loads(out.read_text())
    assert data["cycle"] == [0, 1, 3, 2] and data["trace"]
    assert 'class="cycle matching"' in dot.read_text()
    assert cli.main(["verify", square, str(out)]) == cli.EXIT_OK
    assert "PASS" in capsys.readouterr().out


def test_verify_reports_fault_and_missing_edge(tmp_path, capsys):
    cyc = write(tmp_path / "c.json", {"n": 2, "cycle": ["00", "01", "11", "10"]})
    faulty = write(tmp_path / "f.json", {"n": 2, "matching": [], "faults": [["11", "10"]]})
    assert cli.main(["verify", faulty, cyc]) == cli.EXIT_FAIL
    assert "(d) avoids faults: FAIL" in capsys.readouterr().out
    present = write(tmp_path / "m.json", {"n": 2, "matching": [[0, 2]]})
    other = write(tmp_path / "c2.json", {"n": 2, "cycle": [0, 1, 3, 2]})
    assert cli.main(["verify", present, other]) == cli.EXIT_OK
    wrong = write(tmp_path / "m2.json", {"n": 3, "matching": [[0, 1]]})
    cyc3 = write(tmp_path / "c3.json", {"n": 3, "cycle": [0, 2, 3, 1, 5, 7, 6, 4]})
    assert cli.main(["verify", wrong, cyc3]) == cli.EXIT_FAIL
    assert "(c) contains matching: FAIL" in capsys.readouterr().out


def test_construct_case_a(tmp_path, capsys):
    inst = write(
        tmp_path / "a.json",
        {"n": 4, "matching": [[0, 1], [6, 7], ["1010", "1011"], [12, 13]], "faults": [[2, 3]]},
    )
    assert cli.main(["construct", inst, "--faulty"]) == cli.EXIT_CASE_A
    assert "case-a" in capsys.readouterr().err


@pytest.mark.parametrize(
    "payload",
    [
        {"n": 3, "matching": [[0, 1], [1, 3]]},
        {"n": 3, "matching": [[0, 3]]},
        {"n": 3, "matching": [["0000", "0001"]]},
        {"n": 3, "matching": [[0, 1]], "faults": [[0, 1]]},
        {"matching": []},
        [1, 2],
    ],
)
def test_malformed_input(tmp_path, payload):
    assert cli.main(["construct", write(tmp_path / "bad.json", payload)]) == cli.EXIT_PARSE


def test_unreadable_input(tmp_path):
    bad = tmp_path / "x.json"
    bad.write_text("{not json")
    assert cli.main(["construct", str(bad)]) == cli.EXIT_PARSE
    assert cli.main(["construct", str(tmp_path / "missing.json")]) == cli.EXIT_PARSE


def test_precondition_exit(tmp_path):
    inst = write(tmp_path / "p.json", {"n": 4, "matching": [[0, 1]], "faults": [[2, 3], [4, 5], [8, 9]]})
    assert cli.main(["construct", inst, "--faulty"]) == cli.EXIT_PRECONDITION
    assert cli.main(["construct", inst]) == cli.EXIT_PRECONDITION


def test_round_trip():
    data = {"n": 3, "matching": [["001", "000"], [6, 2]], "faults": [[5, 7]]}
    n, M, F = cli.parse_instance(data)
    again = cli.serialize_instance(n, M, F)
    assert cli.parse_instance(again) == (n, M, F)
    assert cli.serialize_instance(*cli.parse_instance(again)) == again


def test_sweep_command(tmp_path, capsys):
    report = tmp_path / "r.txt"
    summary = tmp_path / "r.json"
    assert cli.main(["sweep", "--theorem", "1", "--n", "3", "-o", str(report), "--json", str(summary)]) == 0
    assert report.read_text().strip().endswith("result=PASS")
    assert json.loads(summary.read_text())["passed"]
    assert cli.main(["sweep", "--theorem", "2", "--n", "4", "--cell", "4,1"]) == 0
    assert "exceptional=1" in capsys.readouterr().out
    assert cli.main(["sweep", "--theorem", "2", "--n", "4", "--cell", "4,2"]) == cli.EXIT_PARSE
    assert cli.main(["sweep", "--theorem", "1", "--n", "5"]) == cli.EXIT_PARSE
    assert cli.main(["sweep", "--theorem", "1", "--n", "5", "--cell", "9", "--sample", "5", "--coverage"]) == 0
    assert "coverage Thm1/Claim1/cross" in capsys.readouterr().out


def test_sweep_figure(tmp_path):
    pytest.importorskip("matplotlib")
    png = tmp_path / "s.png"
    assert cli.main(["sweep", "--theorem", "2", "--n", "4", "--cell", "4,1", "--figure", str(png)]) == 0
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_exceptions_command(tmp_path, capsys):
    out = tmp_path / "cat.txt"
    assert cli.main(["exceptions", "-o", str(out)]) == 0
    text = out.read_text()
    assert text == exception_catalog().export()
    assert sum(1 for line in text.splitlines() if line.startswith("3 |")) == 2
    assert sum(1 for line in text.splitlines() if line.startswith("4 |")) == 1
    assert cli.main(["exceptions", "--check", str(out)]) == 0
    out.write_text(text.replace("2-3", "4-5"))
    assert cli.main(["exceptions", "--check", str(out)]) == cli.EXIT_CATALOG


def test_usage_errors():
    assert cli.main([]) == cli.EXIT_PARSE
    assert cli.main(["sweep", "--theorem", "3", "--n", "4"]) == cli.EXIT_PARSE


def test_atomic_write_leaves_no_temp_files(tmp_path):
    target = tmp_path / "o.txt"
    cli.write_atomic(str(target), "a")
    cli.write_atomic(str(target), "b")
    assert target.read_text() == "b"
    assert [p.name for p in tmp_path.iterdir()] == ["o.txt"]
