"""Command line interface tests: exit codes, report shape, determinism."""

import json

import pytest

from strongblock import cli


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv)
    return code, json.loads(out)


def test_no_command_is_usage_error(capsys):
    assert cli.main([]) == 1
    capsys.readouterr()


def test_unknown_choice_is_usage_error(capsys):
    assert cli.main(["search", "--q", "2", "--strategy", "greedy"]) == 1
    capsys.readouterr()


def test_pipeline_small_case(capsys):
    code, doc = run_json(capsys, ["pipeline", "--q", "2", "--k", "3",
                                  "--seed", "1"])
    assert code == 0
    assert doc["schema"] == 1
    assert doc["search"]["status"] == "found"
    assert doc["union"]["size"] == 14 == doc["union"]["expected_size"]
    assert doc["strong"]["status"] == "strong"
    assert doc["code"]["minimal"] == "minimal"
    assert doc["code"]["parameters"] == [14, 3]
    assert doc["field"]["p"] == 2 and doc["field"]["m"] == 6


def test_pipeline_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert cli.main(["pipeline", "--q", "2", "--k", "3", "--seed", "5",
                         "--out", str(path)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_pipeline_saves_points(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    code, doc = run_json(capsys, ["pipeline", "--q", "2", "--k", "3",
                                  "--points-out", str(pts)])
    assert code == 0
    from strongblock.geometry import PointSet
    assert len(PointSet.load(pts)) == 14


def test_partition_report(capsys):
    code, doc = run_json(capsys, ["partition", "--q", "2", "--k", "4"])
    assert code == 0
    assert doc["cosets"] == 39
    assert doc["coset_sizes"] == [15]
    assert doc["union_size"] == 585 == doc["space_points"]
    assert doc["is_partition"]


def test_search_report(capsys):
    code, doc = run_json(capsys, ["search", "--q", "2", "--k", "4",
                                  "--strategy", "random", "--seed", "1"])
    assert code == 0
    assert doc["status"] == "found"
    assert len(doc["alphas"]) == 3
    assert doc["certification"] == "exhaustive-bset-incidence"


def test_search_budget_exceeded(capsys):
    # the exhaustive triple scan at q=3 would need 2.8e11 lines
    assert cli.main(["search", "--q", "3", "--k", "4",
                     "--strategy", "exhaustive"]) == 3
    capsys.readouterr()


def test_verify_and_code_roundtrip(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    assert cli.main(["pipeline", "--q", "2", "--k", "3",
                     "--points-out", str(pts), "--out",
                     str(tmp_path / "report.json")]) == 0
    code, doc = run_json(capsys, ["verify", "--input", str(pts)])
    assert code == 0 and doc["status"] == "strong"
    code, doc = run_json(capsys, ["verify", "--input", str(pts),
                                  "--mode", "blocking"])
    assert code == 0 and doc["status"] == "blocking"
    exported = tmp_path / "code.json"
    code, doc = run_json(capsys, ["export-code", "--input", str(pts),
                                  "--output", str(exported)])
    assert code == 0 and doc["parameters"] == [14, 3]
    code, doc = run_json(capsys, ["check-minimal", "--input", str(exported)])
    assert code == 0
    assert doc["status"] == "minimal"
    assert doc["classes"] == 21


def test_verify_rejects_weak_set(tmp_path, capsys):
    from strongblock.field import Field
    from strongblock.geometry import PointSet, ProjectiveSpace
    space = ProjectiveSpace(Field.build(2, 3), 3)
    line = space.line_through((1, 0, 0, 0), (0, 1, 0, 0))
    pts = tmp_path / "line.json"
    PointSet(space, line).save(pts)
    code, doc = run_json(capsys, ["verify", "--input", str(pts)])
    assert code == 2
    assert doc["status"] == "not-strong"
    assert "witness" in doc


def test_verify_missing_file(tmp_path, capsys):
    assert cli.main(["verify", "--input", str(tmp_path / "nope.json")]) == 1
    capsys.readouterr()


def test_bounds_all_certified(capsys):
    code, doc = run_json(capsys, ["bounds", "--q-range", "7:101",
                                  "--odd-only"])
    assert code == 0
    qs = [row["q"] for row in doc["rows"]]
    assert 9 not in qs
    assert qs[0] == 7 and qs[-1] == 101
    assert all(row["certified"] for row in doc["rows"])


def test_bounds_include_excluded(capsys):
    code, doc = run_json(capsys, ["bounds", "--q-range", "7:11",
                                  "--include-excluded"])
    assert code == 2
    bad = [row for row in doc["rows"] if not row["certified"]]
    assert [row["q"] for row in bad] == [9]
    assert bad[0]["inconclusive_e"] == [1]


def test_bounds_text_format(capsys):
    code, out = run(capsys, ["bounds", "--q-range", "7:13", "--format",
                             "text"])
    assert code == 0
    assert "q=7" in out and "certified" in out
