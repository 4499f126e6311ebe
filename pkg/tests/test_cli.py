import io
import json
import subprocess
import sys

import pytest

from cdsverify.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, Report, run


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def report(*argv):
    code, text = invoke(*argv, "--threads", "1")
    assert code == EXIT_OK
    data = json.loads(text)
    assert set(data) == {"command", "inputs", "results", "discrepancies", "elapsed_ms"}
    for d in data["discrepancies"]:
        assert set(d) == {"paper_location", "expected_per_paper", "computed", "note"}
    return data


def test_barker_search():
    data = report("barker", "search", "--max-len", "13")
    assert data["results"]["barker_lengths"] == [1, 2, 3, 4, 5, 7, 11, 13]
    assert data["results"]["matches_claimed_lengths"] is True
    assert data["discrepancies"] == []


def test_barker_check_printed_table():
    data = report("barker", "check", "--printed-table")
    audits = {a["length"]: a for a in data["results"]["audits"]}
    assert not audits[13]["is_barker"]
    locations = [d["paper_location"] for d in data["discrepancies"]]
    assert "Barker table, length 13" in locations


def test_barker_check_single():
    data = report("barker", "check", "--seq", "+,+,+,-")
    assert data["results"]["audits"][0]["is_barker"] is True


def test_ds_verify():
    data = report("ds", "verify", "--v", "7", "--set", "0,1,2,5")
    assert data["results"]["sets"][0]["params"] == [7, 4, 2, 2]


def test_ds_verify_sign_discrepancy():
    data = report("ds", "verify", "--v", "4", "--set", "3")
    assert data["results"]["sets"][0]["sequence"] == [-1, -1, -1, 1]
    assert data["discrepancies"][0]["expected_per_paper"] == [1, 1, 1, -1]


def test_ds_verify_non_difference_set():
    data = report("ds", "verify", "--v", "5", "--set", "0,1")
    assert data["results"]["sets"][0]["params"] is None


def test_ds_complement_theta():
    data = report("ds", "complement", "--v", "4", "--set", "3")
    assert data["results"]["complement"] == [0, 1, 2]
    assert data["results"]["params"] == data["results"]["formula_params"] == [4, 3, 2, 1]
    data = report("ds", "theta", "--v", "7", "--set", "0,1,2,5", "--w", "7")
    assert data["results"]["theta"] == "X^5 + X^2 + X + 1"


def test_ds_lemmas_listed():
    assert report("ds", "lemma5", "--listed")["results"]["all_hold"] is True
    data = report("ds", "lemma6", "--listed")
    assert data["results"]["all_hold"] is True
    assert any("bound" in d["paper_location"] for d in data["discrepancies"])


def test_ds_lemma6_custom_counts():
    data = report("ds", "lemma6", "--v", "4", "--set", "3", "--w", "4", "--counts", "0,0,0,0")
    assert data["results"]["all_hold"] is False


def test_menon_commands():
    data = report("menon", "system")
    assert data["results"]["polynomials"]["f6"]["poly"] == "-u^4 + u^3"
    data = report("menon", "lemma7")
    assert data["results"]["all_match_printed"] is True
    assert any("zeta^2" in d["paper_location"] for d in data["discrepancies"])
    data = report("menon", "enumerate", "--u-max", "2")
    assert data["results"]["points"][1] == [0, 0, 0, 1, 1]
    data = report("menon", "params", "--u", "1", "--sign", "+")
    assert data["results"]["params"] == [4, 3, 2, 1]


def test_groebner_commands():
    data = report("groebner", "verify-claim")
    assert data["results"]["membership"] == {"lex": True, "grevlex": True, "canonical": True}
    assert data["results"]["certificate"]["holds"] is True
    data = report("groebner", "member", "--poly", "u")
    assert data["results"]["member"] is False
    data = report("groebner", "basis", "--vars", "x,y", "--gens", "x^2 + y; x*y + 1")
    assert data["results"]["basis"] == ["x - y^2", "y^3 + 1"]
    data = report("groebner", "nf", "--vars", "x", "--gens", "x - 1", "--poly", "x^2")
    assert data["results"]["normal_form"] == "1"


def test_hadamard_commands():
    data = report("hadamard", "check", "--row", "1,1,1,-1")
    assert data["results"]["is_circulant_hadamard"] is True
    data = report("hadamard", "search", "--max-order", "12", "--reduce")
    assert data["results"]["orders"] == [1, 4]
    assert data["results"]["rows"]["4"] == [[1, 1, 1, -1]]
    data = report("hadamard", "detbound", "--row", "1,1,1,-1")
    assert data["results"]["checks"][0]["abs_det"] == 16
    data = report("hadamard", "detbound", "--all-up-to", "6")
    assert data["results"]["equality_iff_hadamard"] is True


@pytest.mark.parametrize(
    "argv",
    [
        ["ds", "verify", "--v", "7", "--set", "0,0,1"],
        ["ds", "verify", "--v", "7", "--set", "a,b"],
        ["groebner", "member", "--poly", "x0 +"],
        ["barker", "check", "--seq", "1,2"],
        ["ds", "lemma5", "--v", "5", "--set", "0,1"],
        ["barker", "check"],
    ],
)
def test_usage_errors(argv):
    assert invoke(*argv)[0] == EXIT_USAGE


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        run(["nonsense"])
    assert exc.value.code == EXIT_USAGE


def test_budget_error():
    assert invoke("barker", "search", "--max-len", "30")[0] == EXIT_BUDGET
    assert invoke("menon", "enumerate", "--max-work", "10")[0] == EXIT_BUDGET


def test_deterministic_output_and_round_trip():
    argv = ("hadamard", "search", "--max-order", "10")
    a = json.loads(invoke(*argv, "--threads", "1")[1])
    b = json.loads(invoke(*argv, "--threads", "2")[1])
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b
    code, text = invoke("groebner", "verify-claim")
    r = Report.from_json(text)
    assert r.to_json() == text.rstrip("\n")


def test_text_format():
    code, text = invoke("menon", "params", "--u", "1", "--format", "text")
    assert code == EXIT_OK
    assert "params: [4, 1, 0, 1]" in text


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cdsverify", "ds", "verify", "--v", "3", "--set", "0,1"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["results"]["sets"][0]["params"] == [3, 2, 1, 1]
