import json

import jsonschema
import pytest
from fastapi.testclient import TestClient

from hcschur.cli import main
from hcschur.schemas import Params, Report
from hcschur.service import UsageError, app, parse_range, parse_spec, run, spec_point

client = TestClient(app)
SCHEMA = json.loads(open(__file__.rsplit("/tests/", 1)[0] + "/docs/report_schema.json").read())


def cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parsers():
    assert parse_range("1..3", "n") == [1, 2, 3]
    assert parse_range("4", "n") == [4]
    with pytest.raises(UsageError):
        parse_range("3..1", "n")
    assert parse_spec("q=2,Q1=1/4") == {"q": "2", "Q1": "1/4"}
    with pytest.raises(UsageError):
        parse_spec("z=2")
    pt = spec_point({"q": "zeta6", "Q1": "xi*zeta6^2"})
    assert pt.order == 6 and pt.get("Q1").kind == "xizeta"
    with pytest.raises(UsageError):
        spec_point({"q": "zeta6", "Q1": "zeta8"})


def test_schur_verify_lists_every_multipartition(capsys):
    code, out, _ = cli(capsys, "schur", "verify", "--kind", "s", "--n", "4", "--m", "1", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and len(rep["records"]) == 14
    assert all(r["recursive_equals_closed"] for r in rep["records"])
    jsonschema.validate(rep, SCHEMA)


def test_scan_surfaces_worked_example(capsys):
    code, out, _ = cli(capsys, "criteria", "scan", "--family", "A2", "--e", "5", "--n", "1..3", "--weight", "1,4",
                       "--format", "json")
    rep = json.loads(out)
    assert code == 0
    flagged = rep["summary"]["flagged_cases"]
    assert [f["n"] for f in flagged] == [1, 2, 3]
    assert flagged[1]["stated_verdict"] and not flagged[1]["p_nonzero"] and flagged[1]["vanishing"]


def test_gimel_exit_zero(capsys):
    code, out, _ = cli(capsys, "algebra", "gimel", "--n", "2")
    assert code == 0 and "nu=[1, 1]" in out


def test_verification_failure_exit_one(capsys):
    code, out, _ = cli(capsys, "algebra", "forms", "--kind", "s", "--n", "2", "--m", "0", "--form", "tau",
                       "--format", "json")
    assert code == 1 and json.loads(out)["counterexamples"]


def test_usage_errors_exit_two(capsys):
    assert cli(capsys, "algebra", "gram", "--kind", "x", "--n", "1", "--m", "0")[0] == 2
    assert cli(capsys, "nonsense")[0] == 2
    assert cli(capsys, "criteria", "check", "--kind", "0", "--n", "1", "--m", "1")[0] == 2
    assert cli(capsys, "algebra", "semisimple", "--kind", "0", "--n", "2", "--m", "1", "--spec", "Q1=3")[0] == 2


def test_csv_gram(capsys):
    code, out, _ = cli(capsys, "algebra", "gram", "--kind", "s", "--n", "1", "--m", "0", "--format", "csv")
    assert code == 0 and out == "2,0\n0,2\n"


def test_semisimple_single_point(capsys):
    code, out, _ = cli(capsys, "algebra", "semisimple", "--kind", "0", "--n", "2", "--m", "1", "--spec", "q=2,Q1=1/4",
                       "--format", "json")
    rec = json.loads(out)["records"][0]
    assert code == 0 and rec["semisimple"] is False and rec["P_vanishing"] == ["Q1^2-q^-4"]


def test_text_output_stable_under_jobs(capsys):
    a = cli(capsys, "schur", "verify", "--kind", "0", "--n", "1..3", "--m", "1")[1]
    b = cli(capsys, "schur", "verify", "--kind", "0", "--n", "1..3", "--m", "1", "--jobs", "2")[1]
    assert a == b


def test_http_matches_in_process():
    params = {"kind": "0", "n": "2", "m": 1}
    r = client.post("/combinatorics/enum", json=params)
    assert r.status_code == 200
    assert Report.model_validate(r.json()) == run("combinatorics", "enum", Params(**params))
    assert client.post("/algebra/gram", json={"kind": "q"}).status_code == 400
    assert client.post("/nothing/here", json={}).status_code == 404
    assert "algebra" in client.get("/commands").json()


def test_schur_compute_at_point(capsys):
    code, out, _ = cli(capsys, "schur", "compute", "--lambda", "s,0: (1)", "--spec", "q=2", "--format", "json")
    rec = json.loads(out)["records"][0]
    assert code == 0 and rec["value_at_spec"] == "1/2"
