"""Structured verification records and their serialization.

A VerificationReport captures one identity check: which identity, at
which parameters, exact or numeric, the residual, and pass/fail/error.
Emission sorts records by (identity id, parameters) so output is
independent of execution order; json-lines writes one object per record
with a fixed key order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ConfigError

STATUSES = ("pass", "fail", "error")
MODES = ("exact", "numeric")


@dataclass
class VerificationReport:
    identity_id: str
    parameters: dict[str, str]
    mode: str
    residual: str
    status: str
    elapsed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"invalid mode {self.mode!r}")
        if self.status not in STATUSES:
            raise ConfigError(f"invalid status {self.status!r}")
        self.parameters = {str(k): str(v) for k, v in self.parameters.items()}

    def sort_key(self):
        return (self.identity_id, sorted(self.parameters.items()))

    def to_json(self) -> str:
        return json.dumps(
            {
                "identity_id": self.identity_id,
                "parameters": self.parameters,
                "mode": self.mode,
                "residual": self.residual,
                "status": self.status,
                "elapsed": self.elapsed,
            },
            sort_keys=False,
        )


def sort_reports(reports: list[VerificationReport]) -> list[VerificationReport]:
    return sorted(reports, key=VerificationReport.sort_key)


def emit_json_lines(reports: list[VerificationReport]) -> str:
    """One JSON object per line, sorted; empty input gives empty output."""
    lines = [r.to_json() for r in sort_reports(reports)]
    return "\n".join(lines) + ("\n" if lines else "")


def emit_text(reports: list[VerificationReport]) -> str:
    """Aligned human-readable columns, sorted like the json-lines stream."""
    rows = []
    for r in sort_reports(reports):
        params = " ".join(f"{k}={v}" for k, v in sorted(r.parameters.items()))
        rows.append((r.identity_id, r.status, r.mode, r.residual, params, str(r.elapsed)))
    if not rows:
        return ""
    header = ("identity", "status", "mode", "residual", "parameters", "ms")
    widths = [
        max(len(header[i]), max(len(row[i]) for row in rows))
        for i in range(len(header))
    ]
    out_lines = [
        "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()
    ]
    for row in rows:
        out_lines.append(
            "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        )
    return "\n".join(out_lines) + "\n"


def emit(reports: list[VerificationReport], fmt: str) -> str:
    if fmt == "json-lines":
        return emit_json_lines(reports)
    if fmt == "text":
        return emit_text(reports)
    raise ConfigError(f"unknown format {fmt!r}")


def exit_status(reports: list[VerificationReport]) -> int:
    """0 if all records pass, 1 if any fail, 2 if any errored."""
    if any(r.status == "error" for r in reports):
        return 2
    if any(r.status == "fail" for r in reports):
        return 1
    return 0
