"""Verification records and their byte-stable JSON/CSV serialization.

Floats are written with 17 significant digits (``%.17g``), which round-trips
every IEEE double.  Non-finite floats become ``null`` in JSON and empty
cells in CSV.  Key order is fixed by the record definitions, never by dict
iteration of user input.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

from .errors import LiouvilleError

SCHEMA_VERSION = "1"
CHECK_FIELDS = ("name", "lhs", "rhs", "residual", "tolerance", "pass")
REPORT_FIELDS = ("schema_version", "command", "n", "inputs", "checks", "summary", "timing_ms")


class ReportIOError(LiouvilleError, OSError):
    """Report or dump could not be written."""


@dataclass(frozen=True)
class Check:
    """One verified relation; passes iff the residual is finite and within tolerance."""

    name: str
    lhs: Optional[float]
    rhs: Optional[float]
    residual: Optional[float]
    tolerance: float
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        r = self.residual
        return self.error is None and r is not None and math.isfinite(r) and r <= self.tolerance

    def as_dict(self) -> Dict[str, Any]:
        out = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


def failed_check(name: str, tolerance: float, exc: BaseException) -> Check:
    return Check(name, None, None, None, tolerance, error=f"{type(exc).__name__}: {exc}")


@dataclass(frozen=True)
class VerificationReport:
    command: str
    n: int
    inputs: Tuple[Tuple[str, Any], ...]
    checks: Tuple[Check, ...]
    timing_ms: int = 0
    schema_version: str = SCHEMA_VERSION

    @property
    def summary(self) -> Dict[str, int]:
        passed = sum(1 for c in self.checks if c.passed)
        return {"total": len(self.checks), "passed": passed, "failed": len(self.checks) - passed}

    @property
    def ok(self) -> bool:
        return self.summary["failed"] == 0

    def as_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "n": self.n,
            "inputs": dict(self.inputs),
            "checks": [c.as_dict() for c in self.checks],
            "summary": self.summary,
            "timing_ms": self.timing_ms,
        }


# ---------------------------------------------------------------------------
# JSON


def format_float(x: float) -> str:
    return "%.17g" % x


def _encode(value: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value) if math.isfinite(value) else "null"
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in value) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    # numpy scalars and anything float-like
    return _encode(float(value), indent, level)


def to_json(report: VerificationReport, indent: int = 2) -> str:
    return _encode(report.as_dict(), indent, 0) + "\n"


def report_from_dict(data: Dict[str, Any]) -> VerificationReport:
    """Inverse of :meth:`VerificationReport.as_dict` (``null`` floats stay ``None``)."""
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
    checks = tuple(
        Check(
            name=c["name"],
            lhs=c["lhs"],
            rhs=c["rhs"],
            residual=c["residual"],
            tolerance=c["tolerance"],
            error=c.get("error"),
        )
        for c in data["checks"]
    )
    return VerificationReport(
        command=data["command"],
        n=data["n"],
        inputs=tuple(data["inputs"].items()),
        checks=checks,
        timing_ms=data["timing_ms"],
        schema_version=data["schema_version"],
    )


def from_json(text: str) -> VerificationReport:
    return report_from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# CSV


def _cell(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format_float(x) if math.isfinite(x) else ""
    if isinstance(x, str):
        return x
    return _cell(float(x))


def table_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def to_csv(report: VerificationReport) -> str:
    return table_csv(
        CHECK_FIELDS,
        ((c.name, c.lhs, c.rhs, c.residual, c.tolerance, c.passed) for c in report.checks),
    )


def render(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    raise ValueError(f"unknown format {fmt!r}")


def write_text(text: str, path: Optional[str]) -> None:
    """Write UTF-8 text with LF line endings; ``None`` or ``-`` means stdout."""
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportIOError(f"cannot write {path}: {exc.strerror or exc}") from exc


def emit_report(report: VerificationReport, fmt: str = "json", path: Optional[str] = None) -> None:
    write_text(render(report, fmt), path)
