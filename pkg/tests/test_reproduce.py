import json

import pytest

from hypercover import DomainError
from hypercover.reproduce import (
    QUARANTINED,
    SUITES,
    Certificate,
    certificate_from_json,
    check_certificate,
    dumps,
    emit_report,
    reproduce,
)

SMALL = {"max_n": 3, "max_t": 2, "ehc_max_n": 3}


@pytest.fixture(scope="module")
def small_runs():
    return {s: reproduce(s, **SMALL) for s in sorted(SUITES)}


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_certificates_reverify_from_json(suite, small_runs):
    certs = small_runs[suite]
    assert certs
    for c in certs:
        d = json.loads(dumps(c.to_json()))
        assert certificate_from_json(d).to_json() == c.to_json()
        if suite not in QUARANTINED:
            assert c.status in ("confirmed", "oracle-skipped")
        if c.status != "discrepancy":
            assert check_certificate(d) == [], (suite, c.instance)


def test_quarantined_suite_reports_literal_mismatch(small_runs):
    certs = small_runs["pdc-discrepancy"]
    assert any(c.status == "discrepancy" for c in certs)
    for c in certs:
        assert c.instance["formula_innext"] == c.oracle_value
        if c.status == "discrepancy":
            # the literal witness or the literal formula is what fails
            assert check_certificate(c.to_json()) or c.formula_value != c.oracle_value


def test_runs_are_byte_identical():
    a = emit_report(reproduce("hamming-ball", max_n=3), "json")
    b = emit_report(reproduce("hamming-ball", max_n=3), "json")
    assert a == b
    a = emit_report(reproduce("alon-furedi", max_n=2), "table")
    assert a == emit_report(reproduce("alon-furedi", max_n=2), "table")


def test_unknown_suite():
    with pytest.raises(DomainError):
        reproduce("nope")


def test_emit_report_shapes(small_runs):
    assert emit_report([], "table").count("\n") == 2
    assert json.loads(emit_report([], "json")) == []
    mixed = small_runs["pdc-discrepancy"][:3] + small_runs["symmetric-multiplicity-one"][:3]
    table = emit_report(mixed, "table")
    assert "discrepancies in: pdc-discrepancy" in table
    assert "✓ confirmed" in table
    with pytest.raises(DomainError):
        emit_report(mixed, "xml")


def test_tampered_certificates_are_caught(small_runs):
    c = next(c for c in small_runs["symmetric-multiplicity-one"] if c.formula_value >= 2).to_json()
    bad = json.loads(json.dumps(c))
    bad["witness"]["measure"] += 1
    assert check_certificate(bad)
    bad = json.loads(json.dumps(c))
    bad["witness"]["hyperplanes"] = bad["witness"]["hyperplanes"][:-1]
    assert check_certificate(bad)
    bad = json.loads(json.dumps(c))
    bad["oracle_value"] = bad["formula_value"] + 1
    assert check_certificate(bad)
    idx = next(c for c in small_runs["index-symmetric"] if c.formula_value >= 1).to_json()
    idx["witness"]["coords"] = []
    assert check_certificate(idx)


def test_certificate_sort_is_stable():
    c1 = Certificate("a", "x", {"n": 2, "t": 1}, 1, 1, {"type": "none"})
    c2 = Certificate("a", "x", {"n": 1, "t": 2}, 1, 1, {"type": "none"})
    assert sorted([c1, c2], key=Certificate.sort_key) == [c2, c1]
