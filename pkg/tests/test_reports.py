import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nliouville.reports import (
    CHECK_FIELDS,
    SCHEMA_VERSION,
    Check,
    ReportIOError,
    VerificationReport,
    failed_check,
    from_json,
    render,
    table_csv,
    to_csv,
    to_json,
    write_text,
)


def _report(*checks):
    return VerificationReport(command="verify", n=2, inputs=(("lambda", 1.0), ("source", "exact")), checks=checks)


def test_check_pass_rules():
    assert Check("a", 1.0, 1.0, 0.0, 1e-8).passed
    assert not Check("a", 1.0, 2.0, 1.0, 1e-8).passed
    assert not Check("a", None, None, math.nan, 1e-8).passed
    assert not failed_check("a", 1e-8, ValueError("boom")).passed


def test_summary_and_ok():
    rep = _report(Check("a", 1.0, 1.0, 0.0, 1e-8), Check("b", 1.0, 2.0, 1.0, 1e-8))
    assert rep.summary == {"total": 2, "passed": 1, "failed": 1}
    assert not rep.ok


def test_json_layout_and_roundtrip():
    rep = _report(Check("a", 0.1, 0.1, 0.0, 1e-8), failed_check("b", 1e-6, RuntimeError("x")))
    text = to_json(rep)
    assert text.endswith("\n") and "\r" not in text
    assert '"lhs": 0.10000000000000001' in text
    assert '"error": "RuntimeError: x"' in text
    keys = [line.split('"')[1] for line in text.splitlines() if line.startswith('  "')]
    assert keys == ["schema_version", "command", "n", "inputs", "checks", "summary", "timing_ms"]
    back = from_json(text)
    assert back == rep
    assert to_json(back) == text


def test_non_finite_becomes_null():
    rep = _report(Check("a", math.inf, math.nan, math.nan, 1e-8))
    assert '"lhs": null' in to_json(rep)
    assert to_csv(rep).splitlines()[1] == "a,,,,1e-08,false"


def test_schema_version_enforced():
    text = to_json(_report()).replace(f'"schema_version": "{SCHEMA_VERSION}"', '"schema_version": "0"')
    with pytest.raises(ValueError):
        from_json(text)


def test_csv_header_and_format():
    csv_text = render(_report(Check("x", 1.0, 2.0, 3.0, 4.0)), "csv")
    lines = csv_text.split("\n")
    assert lines[0] == ",".join(CHECK_FIELDS)
    assert lines[1] == "x,1,2,3,4,true"
    with pytest.raises(ValueError):
        render(_report(), "xml")


def test_table_csv_quotes_commas():
    assert table_csv(["a"], [["p,q"]]) == 'a\n"p,q"\n'


def test_write_text_errors(tmp_path):
    target = tmp_path / "out.json"
    write_text("abc\n", str(target))
    assert target.read_bytes() == b"abc\n"
    with pytest.raises(ReportIOError):
        write_text("abc", str(tmp_path / "missing" / "x.json"))


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_floats_roundtrip_exactly(x):
    rep = _report(Check("a", x, x, abs(x), 1.0))
    back = from_json(to_json(rep))
    assert back.checks[0].lhs == x
