import json

import pytest

from primeplets.claims import ClaimRecord, evaluate, load_table, run_claims
from primeplets.cli import main
from primeplets.errors import ValidationError


def test_table_well_formed():
    table = load_table()
    ids = [c["claim_id"] for c in table]
    assert len(ids) == len(set(ids))
    assert all(c["anchor"] and c["command"] for c in table)


def test_all_claims_pass_or_documented():
    recs = run_claims()
    fails = [r.claim_id for r in recs if r.status == "Fail"]
    assert not fails
    skipped = [r for r in recs if r.status == "Skipped"]
    assert skipped and all(r.note for r in skipped)


def test_prefix_filters():
    recs = run_claims("Ex12")
    assert recs and all(r.claim_id.startswith("Ex12") and r.status == "Pass" for r in recs)
    cor = run_claims(claim_id="Cor3.10")
    assert cor[0].status == "Pass" and cor[0].observed == [[[3], True]]
    assert run_claims("Nothing-matches") == []
    with pytest.raises(ValidationError):
        run_claims(claim_id="Nothing")


def test_failure_is_reported():
    bad = {"claim_id": "X", "anchor": "a", "command": "twins --distance 2 --limit 13",
           "select": "a", "mode": "equals", "expected": [2, 3, 7]}
    rec = evaluate(bad)
    assert rec.status == "Fail" and rec.observed == [2, 3, 6]


def test_command_error_is_failure():
    bad = {"claim_id": "X", "anchor": "a", "command": "twins --distance 3",
           "mode": "count", "expected": 0}
    assert evaluate(bad).status == "Fail"


def test_exit_code_on_failure(monkeypatch, capsys):
    import primeplets.claims as cl

    fake = ({"claim_id": "X", "anchor": "a", "command": "family --all", "mode": "count", "expected": 1},)
    monkeypatch.setattr(cl, "load_table", lambda: fake)
    assert main(["claims"]) == 1
    out = capsys.readouterr().out
    assert json.loads(out)["status"] == "Fail"
