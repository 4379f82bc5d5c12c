"""Report rows and their JSON-lines / CSV serializations."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, TextIO

CSV_HEADER = ("id", "params", "expected", "computed", "status")


@dataclass(frozen=True)
class ReportRow:
    id: str
    params: dict
    computed: Any
    passed: bool
    expected: Any = None
    witness: Optional[dict] = field(default=None)

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("failing rows must carry a counterexample payload")

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "params": self.params,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
            "witness": self.witness,
        }


def _default(obj):
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_default, separators=(", ", ": "))


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return json.dumps(value, default=_default, separators=(",", ":"))


def csv_params(params: dict) -> str:
    return ";".join(f"{k}={_cell(v)}" for k, v in params.items())


class RowWriter:
    """Streams rows as newline-delimited JSON or CSV; tracks overall status."""

    def __init__(self, out: TextIO, fmt: str = "json"):
        if fmt not in ("json", "csv"):
            raise ValueError(f"unknown format {fmt!r}")
        self.out = out
        self.fmt = fmt
        self.rows = 0
        self.failures = 0
        self._csv = None
        if fmt == "csv":
            self._csv = csv.writer(out, lineterminator="\n")
            self._csv.writerow(CSV_HEADER)

    def write(self, row: ReportRow) -> None:
        self.rows += 1
        self.failures += not row.passed
        if self._csv is not None:
            self._csv.writerow(
                (row.id, csv_params(row.params), _cell(row.expected), _cell(row.computed), row.status)
            )
        else:
            self.out.write(dumps(row.to_dict()) + "\n")
        self.out.flush()

    def write_all(self, rows: Iterable[ReportRow]) -> "RowWriter":
        for row in rows:
            self.write(row)
        return self

    @property
    def ok(self) -> bool:
        return self.failures == 0


def render(rows: Iterable[ReportRow], fmt: str = "json") -> str:
    buf = io.StringIO()
    RowWriter(buf, fmt).write_all(rows)
    return buf.getvalue()
