"""
Report layer - claims, verification reports, JSON persistence and table rendering.

This module holds no solver logic and can be imported independently of
the CLI and the verification engine (the board viewer only needs this).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from kneser_defects import UsageError


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


STATUS_STYLES = {
    Status.PASS: "green",
    Status.FAIL: "bold red",
    Status.INCONCLUSIVE: "yellow",
}


@dataclass
class Claim:
    """One checked statement: what was predicted, what was computed, and whether they agree."""

    id: str
    params: dict[str, Any]
    predicted: Any
    computed: dict[str, Any]
    status: Status
    detail: str = ""

    def sort_key(self) -> tuple[Any, ...]:
        return (self.id, tuple((k, self.params[k]) for k in sorted(self.params)))

    def to_json(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "params": self.params,
            "predicted": self.predicted,
            "computed": self.computed,
            "status": self.status.value,
            "detail": self.detail,
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> Claim:
        try:
            return cls(
                id=obj["id"],
                params=dict(obj.get("params", {})),
                predicted=obj.get("predicted"),
                computed=dict(obj.get("computed", {})),
                status=Status(obj["status"]),
                detail=obj.get("detail", ""),
            )
        except (KeyError, ValueError, TypeError) as e:
            raise UsageError(f"Malformed claim object: {e}") from e


def format_params(params: dict[str, Any]) -> str:
    return " ".join(f"{k}={params[k]}" for k in sorted(params))


@dataclass
class VerificationReport:
    """A set of claims plus the metadata needed to reproduce them."""

    kind: str
    metadata: dict[str, Any]
    claims: list[Claim] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def sort_claims(self) -> None:
        self.claims.sort(key=Claim.sort_key)

    def summary(self) -> dict[str, int]:
        counts = {status.value: 0 for status in Status}
        for claim in self.claims:
            counts[claim.status.value] += 1
        counts["total"] = len(self.claims)
        return counts

    def exit_code(self) -> int:
        """0 if every claim passed, 1 if any failed, 2 if some are inconclusive and none failed."""
        statuses = {claim.status for claim in self.claims}
        if Status.FAIL in statuses:
            return 1
        if Status.INCONCLUSIVE in statuses:
            return 2
        return 0

    def to_json(self, include_timing: bool = True) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "kind": self.kind,
            "metadata": self.metadata,
            "summary": self.summary(),
            "claims": [claim.to_json() for claim in self.claims],
        }
        if include_timing:
            obj["timing"] = {"elapsed_seconds": round(self.elapsed_seconds, 3)}
        return obj

    def dumps(self, include_timing: bool = True) -> str:
        return json.dumps(self.to_json(include_timing=include_timing), indent=2)

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> VerificationReport:
        try:
            claims = [Claim.from_json(c) for c in obj["claims"]]
            return cls(
                kind=obj.get("kind", "unknown"),
                metadata=dict(obj.get("metadata", {})),
                claims=claims,
                elapsed_seconds=float(obj.get("timing", {}).get("elapsed_seconds", 0.0)),
            )
        except (KeyError, TypeError, AttributeError) as e:
            raise UsageError(f"Malformed report: {e}") from e


def save_report(report: VerificationReport, path: Path | str) -> None:
    Path(path).write_text(report.dumps() + "\n")


def load_report(path: Path | str) -> VerificationReport:
    """Load a report written by save_report() or `--json` output."""
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from e
    return VerificationReport.from_json(obj)


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, dict):
        return " ".join(f"{k}={_cell(v)}" for k, v in value.items())
    if isinstance(value, list):
        return "[" + ", ".join(_cell(v) for v in value) + "]"
    return str(value)


def report_table(report: VerificationReport) -> Table:
    """Aligned human table of a report, one row per claim."""
    summary = report.summary()
    table = Table(
        title=f"{report.kind} report",
        caption=(f"{summary['pass']} pass, {summary['fail']} fail, "
                 f"{summary['inconclusive']} inconclusive"),
    )
    table.add_column("claim", no_wrap=True)
    table.add_column("params")
    table.add_column("predicted")
    table.add_column("computed")
    table.add_column("status", no_wrap=True)
    for claim in report.claims:
        style = STATUS_STYLES[claim.status]
        table.add_row(
            claim.id,
            escape(format_params(claim.params)),
            escape(_cell(claim.predicted)),
            escape(_cell(claim.computed)),
            f"[{style}]{claim.status.value}[/]",
        )
    return table


def key_value_table(title: str, rows: dict[str, Any]) -> Table:
    """Two-column table for single results (chi, cd, ecd)."""
    table = Table(title=title, show_header=False)
    table.add_column("field", style="bold")
    table.add_column("value")
    for key, value in rows.items():
        table.add_row(key, escape(_cell(value)))
    return table


def print_table(table: Table, console: Console | None = None) -> None:
    (console or Console()).print(table)
