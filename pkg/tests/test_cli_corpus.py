"""Tests for the JSON conventions, the scenario runner, and the CLI."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from k3ord import jsonio
from k3ord.cli import main
from k3ord.errors import MissingCorpus, ParseError, SchemaError
from k3ord.matrices import IntMatrix
from k3ord.runner import (
    ERROR,
    FAIL,
    PASS,
    exit_code,
    run_check,
    run_corpus,
    run_scenario,
    summary_tree,
)

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


# --- jsonio --------------------------------------------------------------------------


def test_encode_integers_as_strings():
    assert jsonio.encode(5) == "5"
    assert jsonio.encode(-12) == "-12"
    assert jsonio.encode(True) is True
    assert jsonio.encode(None) is None
    assert jsonio.encode(Fraction(-3, 4)) == {"num": "-3", "den": "4"}
    assert jsonio.encode(IntMatrix.from_rows([[1, -2]])) == [["1", "-2"]]
    assert jsonio.encode({"a": [1, 2]}) == {"a": ["1", "2"]}


def test_parse_rejects_raw_numbers():
    with pytest.raises(ParseError):
        jsonio.loads_strict('{"a": 5}')
    with pytest.raises(ParseError):
        jsonio.loads_strict("[1.5]")
    with pytest.raises(ParseError):
        jsonio.loads_strict("{not json")
    assert jsonio.loads_strict('{"a": "5"}') == {"a": "5"}


def test_decoders_reject_wrong_shapes():
    assert jsonio.as_int("-7") == -7
    with pytest.raises(SchemaError):
        jsonio.as_int("7.5")
    with pytest.raises(SchemaError):
        jsonio.as_int("")
    with pytest.raises(SchemaError):
        jsonio.as_int(7)
    assert jsonio.as_fraction({"num": "1", "den": "2"}) == Fraction(1, 2)
    assert jsonio.as_fraction("3") == Fraction(3)
    with pytest.raises(SchemaError):
        jsonio.as_fraction({"num": "1", "den": "0"})
    with pytest.raises(SchemaError):
        jsonio.as_int_matrix([["1", "2"], ["3"]])
    with pytest.raises(SchemaError):
        jsonio.check_schema({"schema": "other/9"})


def test_canonical_dump_is_sorted_and_stable():
    a = jsonio.dumps_canonical({"b": "1", "a": "2"})
    b = jsonio.dumps_canonical({"a": "2", "b": "1"})
    assert a == b
    assert a.endswith("\n")


def test_encode_decode_round_trip_matrix():
    m = IntMatrix.from_rows([[0, 1], [1, 0]])
    tree = jsonio.encode(m)
    text = jsonio.dumps_canonical(tree)
    assert jsonio.as_int_matrix(jsonio.loads_strict(text)) == m


# --- run_check dispatch --------------------------------------------------------------


def _h1_payload():
    return {
        "gram": [["-2"]],
        "action": [["-1"]],
        "order": "2",
        "classes": [{"name": "d", "vector": ["1"]}],
    }


def test_run_check_h1_pass_and_fail():
    expected = {
        "invariant_factors": ["2"],
        "classes": {"d": {"cocycle": True, "coboundary": False}},
    }
    outcome = run_check("h1", "h1", _h1_payload(), expected)
    assert outcome.verdict == PASS
    assert outcome.diff is None
    wrong = {"invariant_factors": ["4"]}
    outcome = run_check("h1", "h1", _h1_payload(), wrong)
    assert outcome.verdict == FAIL
    assert outcome.diff == (
        {"field": "invariant_factors", "expected": ["4"], "computed": ["2"]},
    )


def test_run_check_unknown_kind_is_error():
    outcome = run_check("x", "no-such-kind", {}, None)
    assert outcome.verdict == ERROR
    assert "SchemaError" in outcome.error


def test_run_check_domain_error_is_reported():
    payload = _h1_payload()
    payload["action"] = [["2"]]
    outcome = run_check("h1", "h1", payload, None)
    assert outcome.verdict == ERROR
    assert "ActionNotIsometric" in outcome.error


def test_run_check_without_expected_passes_on_success():
    outcome = run_check("h1", "h1", _h1_payload(), None)
    assert outcome.verdict == PASS
    assert outcome.computed["invariant_factors"] == ["2"]
    assert outcome.timing_ms is None


def test_order_classify_check():
    payload = {
        "surface": "p2",
        "ramification": [{"class": ["6"], "e": "2"}],
        "cover_degree": "2",
    }
    outcome = run_check("classify", "order-classify", payload, None)
    assert outcome.verdict == PASS
    assert outcome.computed["kind"] == "numerically-calabi-yau"
    assert outcome.computed["canonical_class"] == [{"num": "0", "den": "1"}]


def test_twist_check_payload():
    payload = {
        "model": {"elliptic_count": "1"},
        "endo": {"order": "3"},
        "element": {"elliptic": [{"symbol": "eps", "order": "3"}]},
    }
    outcome = run_check("twist", "twist-check", payload, None)
    assert outcome.computed == {"cocycle": True, "coboundary": False}


# --- scenarios and the corpus --------------------------------------------------------


def test_run_scenario_on_corpus_case():
    report = run_scenario(CORPUS / "quadric")
    assert report.verdict == PASS
    assert report.case_id == "quadric"
    assert [c.name for c in report.checks] == [
        "embedding",
        "isometry",
        "h1",
        "quotient",
        "ample",
    ]


def test_report_round_trips_through_json():
    report = run_scenario(CORPUS / "f2")
    text = jsonio.dumps_canonical(report.to_tree())
    assert jsonio.loads_strict(text) == report.to_tree()


def test_full_corpus_passes():
    reports = run_corpus(CORPUS)
    assert all(r.verdict == PASS for r in reports)
    assert exit_code(reports) == 0


def test_corpus_runs_are_byte_identical():
    first = jsonio.dumps_canonical(summary_tree(run_corpus(CORPUS)))
    second = jsonio.dumps_canonical(summary_tree(run_corpus(CORPUS)))
    assert first == second


def test_sextic_filter_matches_sixteen_cases():
    reports = run_corpus(CORPUS, case_glob="sextic-*")
    assert len(reports) == 16
    assert sorted(r.case_id for r in reports) == [
        f"sextic-n{n:02d}" for n in range(3, 19)
    ]


def test_empty_filter_is_fine():
    reports = run_corpus(CORPUS, case_glob="no-such-case-*")
    assert reports == []
    assert exit_code(reports) == 0


def test_missing_corpus_raises():
    with pytest.raises(MissingCorpus):
        run_corpus("/no/such/directory")


def test_witness_case_reports_non_integral():
    report = run_scenario(CORPUS / "witness-nonintegral")
    assert report.verdict == PASS
    assert report.checks[0].computed["integral"] is False


def _write(path, tree):
    path.write_text(jsonio.dumps_canonical(tree), encoding="utf-8")


def test_bad_expected_value_fails_with_diff(tmp_path):
    case = tmp_path / "case-a"
    case.mkdir()
    _write(
        case / "scenario.json",
        {
            "schema": "k3ord/1",
            "id": "case-a",
            "checks": [
                {
                    "name": "h1",
                    "kind": "h1",
                    "payload": _h1_payload(),
                }
            ],
        },
    )
    _write(
        case / "expected.json",
        {"schema": "k3ord/1", "expected": {"h1": {"free_rank": "9"}}},
    )
    report = run_scenario(case)
    assert report.verdict == FAIL
    assert report.checks[0].diff == (
        {"field": "free_rank", "expected": "9", "computed": "0"},
    )


def test_duplicate_check_names_rejected(tmp_path):
    case = tmp_path / "case-b"
    case.mkdir()
    check = {"name": "same", "kind": "h1", "payload": _h1_payload()}
    _write(
        case / "scenario.json",
        {"schema": "k3ord/1", "id": "case-b", "checks": [check, check]},
    )
    report = run_scenario(case)
    assert report.verdict == ERROR
    assert "duplicate" in report.error


def test_stray_expected_name_rejected(tmp_path):
    case = tmp_path / "case-c"
    case.mkdir()
    _write(
        case / "scenario.json",
        {
            "schema": "k3ord/1",
            "id": "case-c",
            "checks": [{"name": "h1", "kind": "h1", "payload": _h1_payload()}],
        },
    )
    _write(
        case / "expected.json",
        {"schema": "k3ord/1", "expected": {"typo": {}}},
    )
    report = run_scenario(case)
    assert report.verdict == ERROR
    assert "typo" in report.error


def test_malformed_scenario_is_error_report(tmp_path):
    case = tmp_path / "case-d"
    case.mkdir()
    (case / "scenario.json").write_text("{broken", encoding="utf-8")
    report = run_scenario(case)
    assert report.verdict == ERROR
    assert "ParseError" in report.error


# --- CLI -----------------------------------------------------------------------------


def test_cli_corpus_run_json(capsys):
    code = main(["corpus", "run", "--corpus", str(CORPUS), "--format", "json"])
    assert code == 0
    tree = json.loads(capsys.readouterr().out)
    assert tree["totals"]["pass"] == "39"
    assert tree["totals"]["fail"] == "0"
    assert tree["totals"]["error"] == "0"


def test_cli_corpus_filter(capsys):
    code = main(
        [
            "corpus",
            "run",
            "--corpus",
            str(CORPUS),
            "--case",
            "sextic-*",
            "--format",
            "json",
        ]
    )
    assert code == 0
    tree = json.loads(capsys.readouterr().out)
    assert len(tree["reports"]) == 16


def test_cli_missing_corpus_exit_2(capsys):
    code = main(["corpus", "run", "--corpus", "/no/such/dir"])
    assert code == 2
    assert "MissingCorpus" in capsys.readouterr().err


def test_cli_signature(tmp_path, capsys):
    doc = {"schema": "k3ord/1", "gram": [["0", "1"], ["1", "0"]]}
    path = tmp_path / "gram.json"
    _write(path, doc)
    code = main(["signature", str(path), "--format", "json"])
    assert code == 0
    tree = json.loads(capsys.readouterr().out)
    assert tree["checks"][0]["computed"] == {
        "positive": "1",
        "negative": "1",
        "zero": "0",
    }


def test_cli_single_check_with_expectation(tmp_path, capsys):
    payload = {"schema": "k3ord/1", "kind": "h1", "payload": _h1_payload()}
    payload_path = tmp_path / "h1.json"
    _write(payload_path, payload)
    expect_good = tmp_path / "expect-good.json"
    _write(
        expect_good,
        {"schema": "k3ord/1", "expected": {"invariant_factors": ["2"]}},
    )
    assert main(["h1", str(payload_path), "--expect", str(expect_good)]) == 0
    capsys.readouterr()
    expect_bad = tmp_path / "expect-bad.json"
    _write(
        expect_bad,
        {"schema": "k3ord/1", "expected": {"invariant_factors": ["3"]}},
    )
    assert main(["h1", str(payload_path), "--expect", str(expect_bad)]) == 1
    out = capsys.readouterr().out
    assert "mismatch invariant_factors" in out


def test_cli_kind_mismatch_rejected(tmp_path, capsys):
    payload = {"schema": "k3ord/1", "kind": "h1", "payload": _h1_payload()}
    path = tmp_path / "h1.json"
    _write(path, payload)
    assert main(["ample", str(path)]) == 2
    assert "SchemaError" in capsys.readouterr().err


def test_cli_rank_mismatched_action_is_schema_error(tmp_path, capsys):
    doc = {
        "schema": "k3ord/1",
        "payload": {
            "target": [["2"]],
            "source_gram": [["2"]],
            "columns": [["1"]],
            "action": [["1", "0"], ["0", "1"]],
        },
    }
    path = tmp_path / "bad.json"
    _write(path, doc)
    code = main(["isometry", str(path), "--format", "json"])
    assert code == 2
    tree = json.loads(capsys.readouterr().out)
    assert tree["verdict"] == ERROR
    assert "SchemaError" in tree["checks"][0]["error"]


def test_cli_timing_opt_in(tmp_path, capsys):
    payload = {"schema": "k3ord/1", "payload": _h1_payload()}
    path = tmp_path / "h1.json"
    _write(path, payload)
    assert main(["h1", str(path), "--format", "json"]) == 0
    tree = json.loads(capsys.readouterr().out)
    assert tree["checks"][0]["timing_ms"] is None
    assert main(["h1", str(path), "--format", "json", "--timing"]) == 0
    tree = json.loads(capsys.readouterr().out)
    assert tree["checks"][0]["timing_ms"] is not None
