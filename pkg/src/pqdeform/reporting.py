"""Deterministic report documents: JSON/CSV rendering and atomic output.

Identical inputs must produce byte-identical output, so records are sorted
by a total key, JSON keys are sorted, and the timestamp can be suppressed.
Floats are serialized with Python's shortest round-trip representation,
which is decimal, unambiguous and re-reads to the identical double.
"""

from __future__ import annotations

import csv
import datetime
import io
import json
import os
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from .relations import DOC, FAIL, PASS, VACUOUS, ResidualReport

SCHEMA_VERSION = 1
TOOL_NAME = "pqdeform"

CSV_COLUMNS = ("suite", "p", "q", "alpha", "gamma", "l", "nu0", "dim",
               "residual", "verdict", "note")

_NULL_NUM = float("-inf")


def _schema() -> dict:
    text = resources.files("pqdeform").joinpath("report_schema.json").read_text()
    return json.loads(text)


def record_sort_key(rec: dict) -> tuple:
    def num(x):
        return _NULL_NUM if x is None else float(x)
    return (rec["suite"], rec.get("check", ""),
            num(rec.get("p")), num(rec.get("q")), num(rec.get("alpha")),
            num(rec.get("gamma")), num(rec.get("l")), num(rec.get("nu0")),
            -1 if rec.get("dim") is None else int(rec["dim"]),
            rec.get("variant") or "", rec.get("verdict", ""),
            rec.get("note", ""))


def summarize(records: list[dict]) -> dict:
    counts = {"pass": 0, "fail": 0, "vacuous": 0, "documented": 0, "rejected": 0}
    for rec in records:
        v = rec["verdict"]
        if v == PASS:
            counts["pass"] += 1
        elif v == FAIL:
            counts["fail"] += 1
        elif v == VACUOUS:
            counts["vacuous"] += 1
        elif v == DOC:
            counts["documented"] += 1
        elif v.startswith("rejected"):
            counts["rejected"] += 1
        else:
            raise ValueError(f"unknown verdict {v!r}")
    counts["total"] = len(records)
    return counts


@dataclass
class ReportDocument:
    """Envelope for a batch of residual records."""

    inputs: dict
    records: list = field(default_factory=list)
    timestamp: str | None = None

    @classmethod
    def build(cls, inputs: dict, reports: list[ResidualReport],
              with_timestamp: bool = True) -> "ReportDocument":
        records = sorted((r.as_record() for r in reports), key=record_sort_key)
        ts = None
        if with_timestamp:
            ts = datetime.datetime.now(datetime.timezone.utc).isoformat()
        return cls(inputs=inputs, records=records, timestamp=ts)

    def as_dict(self) -> dict:
        from . import __version__
        return {
            "schema_version": SCHEMA_VERSION,
            "tool": {"name": TOOL_NAME, "version": __version__},
            "timestamp": self.timestamp,
            "inputs": self.inputs,
            "records": self.records,
            "summary": summarize(self.records),
        }

    def validate(self) -> None:
        jsonschema.validate(self.as_dict(), _schema())

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in self.records:
            writer.writerow([_csv_cell(rec.get(col)) for col in CSV_COLUMNS])
        return buf.getvalue()

    @property
    def failed(self) -> bool:
        return summarize(self.records)["fail"] > 0


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def atomic_write(path: str, text: str) -> None:
    """All-or-nothing file emission via a temp file and rename."""
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def rejection(suite: str, exc: Exception, params_dict: dict,
              dim: int | None = None, nu0: float | None = None,
              check: str = "") -> ResidualReport:
    """Record for a grid point whose preconditions a suite rejects."""
    return ResidualReport(suite=suite, check=check or suite,
                          params=params_dict, variant=None, dim=dim, nu0=nu0,
                          residual=0.0, tolerance=None,
                          verdict=f"rejected: {type(exc).__name__}",
                          note=str(exc))


def aggregate(reports: list[ResidualReport], suite: str, params_dict: dict,
              dim: int | None) -> ResidualReport:
    """Collapse a suite's records at one grid point into a single record.

    Verdict precedence: fail > rejected > doc > pass > vacuous.  The
    residual is the worst one among gated (pass/fail) constituents, or
    among all of them when nothing is gated.
    """
    if not reports:
        return ResidualReport(suite=suite, check="*", params=params_dict,
                              variant=None, dim=dim, nu0=None, residual=0.0,
                              tolerance=None, verdict=VACUOUS,
                              note="no checks ran")
    verdicts = [r.verdict for r in reports]
    if FAIL in verdicts:
        verdict = FAIL
    elif any(v.startswith("rejected") for v in verdicts):
        verdict = next(v for v in verdicts if v.startswith("rejected"))
    elif DOC in verdicts:
        verdict = DOC
    elif PASS in verdicts:
        verdict = PASS
    else:
        verdict = VACUOUS
    gated = [r for r in reports if r.verdict in (PASS, FAIL)]
    pool = gated or list(reports)
    worst = max(pool, key=lambda r: r.residual)
    notes = []
    doc_names = sorted({r.check for r in reports if r.verdict == DOC})
    if doc_names:
        notes.append("documented: " + ",".join(doc_names))
    rej = [r for r in reports if r.verdict.startswith("rejected")]
    if rej:
        notes.append(rej[0].note)
    notes.insert(0, f"worst: {worst.check}")
    tol = worst.tolerance if worst.verdict in (PASS, FAIL) else None
    nu0s = {r.nu0 for r in reports}
    return ResidualReport(suite=suite, check="*", params=params_dict,
                          variant=None, dim=dim,
                          nu0=nu0s.pop() if len(nu0s) == 1 else None,
                          residual=worst.residual, tolerance=tol,
                          verdict=verdict, note="; ".join(notes))
