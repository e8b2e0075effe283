import json

import pytest

from btoeplitz.cli import main
from btoeplitz.serialize import InstanceError, load_instance, parse_instance
from btoeplitz.matrix import DenseMat


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


# ---- instance parsing --------------------------------------------------------

def test_parse_scalar_matrix():
    inst = parse_instance([[0, 5], ["3+4i", 0]])
    assert (inst.matrix.n, inst.matrix.d) == (2, 1)


def test_parse_block_array_and_spec():
    blocks = [[[["1"]], [["2"]]], [[["3"]], [["1"]]]]
    assert parse_instance(blocks).matrix.n == 2
    spec = {"n": 2, "d": 1, "diag": [["1"]], "lower": [[["3"]]], "upper": [[["2"]]]}
    inst = parse_instance(spec)
    assert inst.spec is not None and inst.matrix == parse_instance(blocks).matrix


def test_parse_matrix_with_block_size():
    inst = parse_instance({"matrix": [[1, 0, 2, 0], [0, 1, 0, 2], [3, 0, 1, 0], [0, 3, 0, 1]], "d": 2})
    assert (inst.matrix.n, inst.matrix.d) == (2, 2)
    assert inst.matrix[0, 1] == DenseMat.scalar(2, 2)


@pytest.mark.parametrize("obj, where", [
    ([["3//4"]], "matrix"),
    ({"blocks": [[[["1"]], [["x"]]]]}, "blocks[0][1]"),
    ({"matrix": [[1, 2, 3], [4, 5, 6], [7, 8, 9]], "d": 2}, "matrix"),
    ({"blocks": [[[["1"]]]], "X": [["1", "0"], ["0", "1"]]}, "X"),
    ({"foo": 1}, "<root>"),
    ({"blocks": [[[["1"]]]], "algebra": {"kind": "jordan"}}, "algebra"),
    ([[[1]]], "<root>"),
])
def test_parse_errors_name_field(obj, where):
    with pytest.raises(InstanceError) as info:
        parse_instance(obj)
    assert info.value.where == where


def test_json_syntax_error_has_position(tmp_path):
    path = write(tmp_path, "bad.json", '{"blocks": [\n  [1,,]\n]}')
    with pytest.raises(InstanceError) as info:
        load_instance(path)
    assert info.value.where.startswith("line 2")


# ---- verify ------------------------------------------------------------------

def test_verify_identity(tmp_path, capsys):
    path = write(tmp_path, "id.json", {"blocks": [[[["1", "0"], ["0", "1"]], [["0", "0"], ["0", "0"]]],
                                                   [[["0", "0"], ["0", "0"]], [["1", "0"], ["0", "1"]]]]})
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "toeplitz: yes" in out
    assert "commutant of S / S^*: both" in out
    assert "normal: yes" in out


def test_verify_scalar_normal(tmp_path, capsys):
    path = write(tmp_path, "m.json", [[0, 5], ["3+4i", 0]])
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "toeplitz: yes" in out and "normal: yes" in out
    assert "criterion witness: none" in out


def test_verify_with_x(tmp_path, capsys):
    path = write(tmp_path, "c.json", [[1, 3, 2], [2, 1, 3], [3, 2, 1]])
    assert main(["verify", path, "--x", '[["1"]]']) == 0
    # X = 1 is unitary, so S_X^* is the inverse of S_X
    assert "commutant of S_X / S_X^*: both" in capsys.readouterr().out


def test_verify_non_toeplitz(tmp_path, capsys):
    path = write(tmp_path, "n.json", [[1, 0], [0, 2]])
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "toeplitz: no" in out and "not applicable" in out


def test_verify_malformed_scalar(tmp_path, capsys):
    path = write(tmp_path, "bad.json", [["3//4"]])
    assert main(["verify", path]) == 2
    assert "3//4" in capsys.readouterr().err


def test_verify_missing_file(tmp_path):
    assert main(["verify", str(tmp_path / "nope.json")]) == 2


# ---- run ---------------------------------------------------------------------

def test_run_bogus_theorem(capsys):
    with pytest.raises(SystemExit) as info:
        main(["run", "--theorem", "BOGUS"])
    assert info.value.code == 2
    assert "usage" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["run"],
    ["run", "--all", "--trials", "0"],
])
def test_run_bad_config(argv):
    assert main(argv) == 2


@pytest.mark.parametrize("flag", ["--n", "--d"])
def test_run_bad_range(flag):
    with pytest.raises(SystemExit) as info:
        main(["run", "--all", flag, "3..1"])
    assert info.value.code == 2


def test_run_single_suite_report(tmp_path, capsys):
    report = tmp_path / "r.json"
    cex = tmp_path / "cex.jsonl"
    code = main(["run", "--theorem", "T5.2", "--n", "2..4", "--d", "1..2", "--trials", "30",
                 "--json", str(report), "--counterexamples", str(cex)])
    assert code == 0
    data = json.loads(report.read_text())
    assert list(data["suites"]) == ["T5.2"]
    suite = data["suites"]["T5.2"]
    assert suite["passed"] == 30 and suite["failed"] == 0
    assert suite["criterion_true"] >= 6 and suite["criterion_false"] >= 6
    assert data["failed_total"] == 0 and data["seed"] == 42
    assert data["config"]["n_range"] == [2, 4]
    assert cex.read_text() == ""
    assert "PASS T5.2" in capsys.readouterr().out


def test_run_reports_identical_apart_from_wall_time(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["run", "--theorem", "L2.2", "--theorem", "C4.6", "--seed", "3",
                     "--trials", "10", "--json", str(p)]) == 0
    a, b = (json.loads(p.read_text()) for p in paths)
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b


def test_run_exit_one_on_failure(monkeypatch, tmp_path):
    from btoeplitz import cli
    from btoeplitz.harness import TrialOutcome

    def broken(theorem_id, config, jobs=1):
        return [TrialOutcome(theorem_id, 0, {"n": 2}, True, False)]

    monkeypatch.setattr(cli, "run_theorem_suite", broken)
    cex = tmp_path / "cex.jsonl"
    assert main(["run", "--theorem", "L2.2", "--counterexamples", str(cex)]) == 1
    line = json.loads(cex.read_text().splitlines()[0])
    assert line["theorem_id"] == "L2.2" and line["agreement"] is False
