import json

from covlie.report import FAIL, PASS, SKIPPED, Check, VerificationReport, skipped


def test_witness_present_iff_failed():
    ok = Check("a", tuple_count=3)
    bad = Check("b").fail({"pair": [1, 2]})
    sk = skipped("c", "nothing to do")
    assert ok.status == PASS and ok.witness is None and "witness" not in ok.to_dict()
    assert bad.status == FAIL and bad.to_dict()["witness"] == {"pair": [1, 2]}
    assert sk.status == SKIPPED and sk.witness is None and sk


def test_report_passes_iff_no_failure():
    rep = VerificationReport("gs", "Z3", 1, None, [Check("a"), skipped("b", "r")])
    assert rep.passed
    rep.add(Check("c").fail({}))
    assert not rep.passed
    d = json.loads(rep.to_json())
    assert d["passed"] is False and d["schema_version"] == 1 and d["engine_version"]
    assert [c["status"] for c in d["checks"]] == ["pass", "skipped", "fail"]
    assert "**FAIL**" in rep.to_markdown()
