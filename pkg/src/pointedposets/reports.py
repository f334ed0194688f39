"""
Machine-readable results.

Every check produces a `CaseReport`; sweeps collect them in a `SweepReport`,
which renders as JSON, CSV or plain text. Numbers are written as decimal strings
so that no consumer ever rounds a large integer.

```python
from pointedposets.reports import CaseReport, SweepReport, Verdict

report = SweepReport(title="demo", rows=[CaseReport(name="A(n=3)", verdict=Verdict.PASS)])
print(report.to_text())
# demo: 1 passed, 0 failed
# PASS  A(n=3)
```
"""

from __future__ import annotations

import csv
import enum
import io
import json
from typing import Any

from pydantic import BaseModel, Field

from pointedposets.partitions import Family, FamilySpec


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"


def decimal_strings(value: Any) -> Any:
    """Replace every integer inside `value` by its decimal string."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {str(k): decimal_strings(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [decimal_strings(v) for v in value]
    return value


class CaseReport(BaseModel):
    """Outcome of one check."""

    name: str
    verdict: Verdict
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def row(self) -> dict[str, Any]:
        """JSON-ready mapping with numbers as decimal strings."""
        return decimal_strings(self.model_dump(mode="json"))


class TheoremCase(BaseModel):
    """One family member to compare against its closed form."""

    family: Family
    n: int
    i: int | None = None

    @property
    def spec(self) -> FamilySpec:
        return FamilySpec(self.family, self.n, self.i)

    def __str__(self) -> str:
        return str(self.spec)


class TheoremCaseReport(CaseReport):
    """Computed characteristic polynomial and constant against the closed form."""

    family: Family
    n: int
    i: int | None = None
    expected: str = ""
    computed: str = ""
    expected_constant: int = 0
    computed_constant: int = 0


class LemmaFailure(BaseModel):
    parameters: dict[str, int]
    point: dict[str, str] = Field(default_factory=dict)
    lhs: str
    rhs: str


class LemmaReport(CaseReport):
    """Exact check of an identity over a parameter grid."""

    lemma: str
    checked: int = 0
    failures: list[LemmaFailure] = Field(default_factory=list)


class IntervalReport(CaseReport):
    """Homology of the proper part of one interval `[bottom, top]`."""

    bottom: str
    top: str
    rank: int
    betti: dict[int, int] = Field(default_factory=dict)
    torsion: dict[int, list[int]] = Field(default_factory=dict)
    mobius: int
    euler: int


class CohenMacaulayReport(CaseReport):
    """Every interval of rank at least 2 of one poset; failures first in `intervals`."""

    checked: int = 0
    intervals: list[IntervalReport] = Field(default_factory=list)


class CountsReport(CaseReport):
    """Element counts by rank against the generating-function prediction."""

    family: Family
    n: int
    i: int | None = None
    by_rank: list[int] = Field(default_factory=list)
    total: int = 0
    projected: int | None = None
    egf_by_rank: list[int] | None = None


class SweepReport(BaseModel):
    """Ordered collection of case reports."""

    title: str
    rows: list[CaseReport] = Field(default_factory=list)
    stopped_early: bool = False

    @property
    def passed(self) -> bool:
        return not self.stopped_early and all(r.passed for r in self.rows)

    @property
    def failures(self) -> list[CaseReport]:
        return [r for r in self.rows if not r.passed]

    def to_json(self) -> str:
        payload = {
            "title": self.title,
            "passed": self.passed,
            "stopped_early": self.stopped_early,
            "rows": [r.row() for r in self.rows],
        }
        return json.dumps(payload, indent=2, sort_keys=False)

    def to_csv(self) -> str:
        """Header row, then one row per case; nested values as compact JSON."""
        rows = [r.row() for r in self.rows]
        header: list[str] = []
        for row in rows:
            header.extend(k for k in row if k not in header)
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(
                {
                    k: json.dumps(v, separators=(",", ":")) if isinstance(v, (list, dict)) else v
                    for k, v in row.items()
                }
            )
        return buffer.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.title}: {len(self.rows) - len(self.failures)} passed, {len(self.failures)} failed"]
        if self.stopped_early:
            lines[0] += " (stopped early)"
        for r in self.rows:
            suffix = f"  {r.detail}" if r.detail else ""
            lines.append(f"{r.verdict.value.upper():<5} {r.name}{suffix}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        """Render as `json`, `csv` or `text`."""
        renderers = {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}
        if fmt not in renderers:
            raise ValueError(f"Unknown format {fmt!r}; expected one of {sorted(renderers)}.")
        return renderers[fmt]()


class Table(BaseModel):
    """Plain data with named columns, such as the elements of a poset."""

    title: str
    columns: list[str]
    rows: list[list[Any]] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return True

    def records(self) -> list[dict[str, Any]]:
        return [dict(zip(self.columns, decimal_strings(row))) for row in self.rows]

    def to_json(self) -> str:
        return json.dumps({"title": self.title, "rows": self.records()}, indent=2)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for record in self.records():
            writer.writerow(
                json.dumps(v, separators=(",", ":")) if isinstance(v, (list, dict)) else v
                for v in record.values()
            )
        return buffer.getvalue()

    def to_text(self) -> str:
        lines = [self.title]
        for record in self.records():
            lines.append("\t".join(" ".join(v) if isinstance(v, list) else str(v) for v in record.values()))
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        """Render as `json`, `csv` or `text`."""
        renderers = {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}
        if fmt not in renderers:
            raise ValueError(f"Unknown format {fmt!r}; expected one of {sorted(renderers)}.")
        return renderers[fmt]()
