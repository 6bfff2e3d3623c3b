import json
import shutil
import subprocess

import pytest

from covlie.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_z5(capsys):
    code, out, _ = run(capsys, "build", "--group", "Z5", "--char", "1")
    assert code == 0
    bundle = json.loads(out)
    assert bundle["dims"] == {"gl_S": 25, "A_S_tau": 10, "g_S": 10}
    assert bundle["pi"]["domain_dim"] == 10 and len(bundle["s_action"]) == 5
    assert bundle["forms"]["g_S_chi"]["dim"] == 10


def test_build_trivial_group(capsys):
    code, out, _ = run(capsys, "build", "--group", "Z1")
    assert code == 0
    assert all(d in (0, 1) for d in json.loads(out)["dims"].values())


def test_build_character_checks(capsys):
    assert run(capsys, "build", "--group", "Z6", "--char", "1")[0] == 0
    code, _, err = run(capsys, "build", "--group", "Z6", "--char", "2")
    assert code == 2 and "not injective" in err


def test_build_non_cyclic_without_char(capsys):
    code, out, _ = run(capsys, "build", "--group", "Z2xZ2")
    assert code == 0 and json.loads(out)["forms"]["g_S_chi"] is None


def test_verify_collapsed_algebra(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "gs", "--group", "Z2xZ2")
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] and "g_S = 0" in rep["checks"][0]["detail"]["note"]


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "affine", "--group", "Z2xZ2"],
    ["verify", "--suite", "gs", "--group", "Z6", "--char", "3"],
    ["verify", "--suite", "appendix", "--group", "Z3"],
    ["verify", "--group", "Q7"],
    ["verify", "--suite", "nope", "--group", "Z3"],
    ["classify"],
    ["verify", "--suite", "gs", "--group", "Z3", "--window", "-1"],
])
def test_configuration_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as e:
        raise SystemExit(main(argv))
    assert e.value.code == 2


def test_bad_grading_element_file(capsys, tmp_path):
    bad = tmp_path / "h.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "verify", "--suite", "appendix", "--group", "Z3", "--grading-element", str(bad))
    assert code == 2


def test_verify_affine_alternate_character(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "affine", "--group", "Z5", "--char", "2", "--window", "3")
    assert code == 0 and json.loads(out)["character"] == 2


def test_grading_element_round_trip_through_files(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--suite", "appendix", "--group", "Z5", "--window", "1", "--search-h")
    assert code == 0
    grade = next(c for c in json.loads(out)["checks"] if c["name"].startswith("grading element"))
    path = tmp_path / "h.json"
    path.write_text(json.dumps(grade["detail"]))
    code, out, _ = run(capsys, "verify", "--suite", "appendix", "--group", "Z5", "--window", "1",
                       "--grading-element", str(path))
    assert code == 0 and not [c for c in json.loads(out)["checks"] if c["status"] == "skipped"]


@pytest.mark.parametrize("spec,labels", [("Z5", ["B2"]), ("Z7", ["B3"]), ("Z6", ["B1", "B1"])])
def test_classify(capsys, spec, labels):
    code, out, _ = run(capsys, "classify", "--group", spec)
    rec = json.loads(out)
    assert code == 0
    assert [b["type_label"] for b in rec["blocks"]] == labels
    assert sum(b["dimension"] for b in rec["blocks"]) == rec["quotient_dim"]


def test_markdown_and_output_file(capsys, tmp_path):
    path = tmp_path / "r.md"
    code, out, _ = run(capsys, "verify", "--suite", "delta", "--group", "Z3", "--format", "md", "-o", str(path))
    assert code == 0 and out == ""
    text = path.read_text()
    assert text.startswith("## delta on Z3") and "**PASS**" in text


def test_reports_are_byte_stable(capsys):
    a = run(capsys, "verify", "--suite", "gs", "--group", "Z6")[1]
    b = run(capsys, "verify", "--suite", "gs", "--group", "Z6")[1]
    assert a == b


def test_worker_processes_give_identical_report(capsys, monkeypatch):
    argv = ["verify", "--suite", "all", "--group", "Z3", "--window", "2"]
    serial = run(capsys, *argv)
    monkeypatch.setenv("COVLIE_THREADS", "3")
    parallel = run(capsys, *argv)
    assert serial[0] == parallel[0] == 0
    assert serial[1] == parallel[1]


@pytest.mark.skipif(shutil.which("covlie") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["covlie", "classify", "--group", "Z5", "--format", "md"], capture_output=True, text=True)
    assert p.returncode == 0 and "B2" in p.stdout


def test_full_pipeline_z5(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--group", "Z5", "--char", "1", "--window", "3")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["suite"] == "all"
    suites = {c["name"].split(":")[0] for c in rep["checks"]}
    assert suites == {"gs", "covariant", "affine", "delta", "appendix"}
