import json
import subprocess
import sys

import pytest

from nakct import cli, cluster, kupisch

GLUED = "1,2,3,3,3,3,3,3,2,2,2,2,2"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_classify_glued_example(capsys):
    code, data = run_json(capsys, "classify", "--series", GLUED, "--d", "2", "--n", "5")
    assert code == 0 and data["exists"] is True
    want = cluster.classify(kupisch.parse(GLUED), 2, 5).subcategory.to_json()
    assert data["subcategory"] == want


def test_classify_negative(capsys):
    code, data = run_json(capsys, "classify", "--series", "1,2", "--d", "1", "--n", "7")
    assert code == 1 and data["exists"] is False


def test_classify_necessary_only_exits_zero(capsys):
    code, data = run_json(capsys, "classify", "--series", "~5,5,5", "--d", "2", "--n", "3")
    assert code == 0 and data["exists"] is None and data["status"] == "necessary_only"


def test_check_selfinjective_file(capsys, tmp_path):
    code, data = run_json(capsys, "search", "--series", "~5,5,5", "--d", "2", "--n", "3")
    assert code == 0 and data["results"]
    path = tmp_path / "ct.json"
    path.write_text(json.dumps(data["results"][0]))
    code, verdict = run_json(capsys, "check", "--series", "~5,5,5", "--d", "2", "--n", "3", "--subcat", str(path))
    assert code == 0 and verdict["accepted"] is True
    code, verdict = run_json(capsys, "check", "--n", "3", "--subcat", str(path), "--mode", "partial")
    assert code == 0 and verdict["accepted"] is True


def test_check_rejects(capsys, tmp_path):
    data = cluster.classify(kupisch.parse(GLUED), 2, 5).subcategory.to_json()
    data["modules"] = [x for x in data["modules"] if x != [8, 9, 10]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, verdict = run_json(capsys, "check", "--n", "5", "--subcat", str(path))
    assert code == 1 and verdict["accepted"] is False and verdict["failures"]


def test_check_series_mismatch(capsys, tmp_path):
    path = tmp_path / "ct.json"
    path.write_text(json.dumps(cluster.search(kupisch.parse("~5,5,5"), 2, 3)[0].to_json()))
    assert cli.main(["check", "--series", "1,2", "--n", "3", "--subcat", str(path)]) == 2


@pytest.mark.parametrize("argv", [
    ["validate", "--series", "1,3"],
    ["validate", "--series", "~1,2"],
    ["classify", "--series", "1,2", "--d", "0", "--n", "2"],
    ["classify", "--series", "1,2", "--d", "1", "--n", "0"],
    ["ext", "--series", "1,2,3", "--d", "1", "--y", "1,5", "--x", "1,2"],
    ["check", "--n", "2", "--subcat", "/nonexistent/ct.json"],
    ["nosuchcommand"],
    [],
])
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == 2


def test_search_empty_exits_one(capsys):
    code, data = run_json(capsys, "search", "--series", GLUED, "--d", "2", "--n", "3")
    assert code == 1 and data["results"] == []


def test_validate(capsys):
    code, data = run_json(capsys, "validate", "--series", "~4,2,3,3,2,3")
    assert code == 0 and data["series"] == [2, 3, 3, 2, 3, 4] and data["cyclic"] is True
    assert data["text"] == "~2,3,3,2,3,4"


def test_ext_resolve_tau(capsys):
    code, data = run_json(capsys, "ext", "--series", "1,2,3,3,3,3,3,3", "--d", "2", "--y", "2,3,4", "--x", "1,2,3")
    assert code == 0 and data == {"y": [2, 3, 4], "x": [1, 2, 3], "degree": 2, "dim": 1}
    code, data = run_json(capsys, "resolve", "--series", "1,2,3,3,3,3,3,3", "--d", "2", "--x", "3,4,6")
    assert data["terms"] == [[2, 4, 6], [2, 3, 6]] and data["omega_d"] == [2, 3, 4]
    code, data = run_json(capsys, "resolve", "--series", "1,2,3,3,3,3,3,3", "--d", "2", "--x", "1,2,3")
    assert data["projective"] is True
    code, data = run_json(capsys, "tau", "--series", "~5,5,5", "--d", "2", "--x", "1,2,3", "--n", "3", "--inverse")
    assert data["result"] == [1, 5, 6]
    code, data = run_json(capsys, "tau", "--series", "1,2,3,3,3,3,3,3", "--d", "2", "--x", "1,2,3")
    assert data["result"] is None


def test_glue_and_deglue(capsys, tmp_path):
    a, b = kupisch.homogeneous(3, 8), kupisch.homogeneous(2, 6)
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    pa.write_text(json.dumps(cluster.search(a, 2, 5)[0].to_json()))
    pb.write_text(json.dumps(cluster.search(b, 2, 5)[0].to_json()))
    code, data = run_json(capsys, "glue", "--a", "1,2,3,3,3,3,3,3", "--b", "1,2,2,2,2,2",
                          "--subcat-a", str(pa), "--subcat-b", str(pb))
    assert code == 0 and data["series"]["series"] == [int(t) for t in GLUED.split(",")]
    assert data["subcategory"] == cluster.classify(kupisch.parse(GLUED), 2, 5).subcategory.to_json()
    assert cli.main(["glue", "--a", "1,2", "--b", "1,2", "--subcat-a", str(pa)]) == 2

    code, data = run_json(capsys, "deglue", "--series", "1,2,3,3,2,3,4", "--d", "2")
    assert code == 0 and data["pieces"] == [[1, 2, 3, 3], [1, 2, 3, 4]] and data["bridges"] == [[4, 5, 6]]
    code, data = run_json(capsys, "deglue", "--series", "1,2,3,3,3,4")
    assert code == 1 and data["decomposable"] is False
    code, data = run_json(capsys, "deglue", "--series", "~5,2,2,2,2,3,4")
    assert code == 0 and data["self_deglued"][0]["series"] == [1, 2, 2, 2, 2, 3, 4, 5]
    code, data = run_json(capsys, "deglue", "--series", "~2,2,2")
    assert code == 1


def test_arquiver(capsys, tmp_path):
    code, dot = run(capsys, "arquiver", "--series", "1,2,3,3,3,3,3,3", "--d", "2")
    assert code == 0 and dot.startswith("digraph AR {") and '"1 2 3" -> "1 2 4";' in dot
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cluster.search(kupisch.homogeneous(3, 8), 2, 5)[0].to_json()))
    code, dot = run(capsys, "arquiver", "--series", "1,2,3,3,3,3,3,3", "--d", "2", "--highlight", str(path))
    assert 'color="red"' in dot
    code, data = run_json(capsys, "arquiver", "--series", "~5,5,5", "--d", "2", "--format", "json")
    assert len(data["nodes"]) == 45


def test_verify_small(capsys):
    code, data = run_json(capsys, "verify", "--max-width", "4", "--max-ell", "3", "--max-d", "2", "--max-n", "3")
    assert code == 0 and data["ok"] is True and data["problems"] == []
    assert data["oracle_instances"] > 0 and data["search_instances"] > 0


@pytest.mark.parametrize("argv", [
    ["classify", "--series", GLUED, "--d", "2", "--n", "5"],
    ["search", "--series", "~5,5,5", "--d", "2", "--n", "3"],
    ["arquiver", "--series", "~5,5,5", "--d", "2", "--format", "json"],
])
def test_output_is_deterministic(argv, capsys, tmp_path):
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second
    out = tmp_path / "out.json"
    assert cli.main(["--out", str(out)] + argv) in (0, 1)
    assert out.read_text() == first


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nakct", "validate", "--series", "1,2,3,3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["shape"]["tag"] == "AcyclicHomogeneous"
