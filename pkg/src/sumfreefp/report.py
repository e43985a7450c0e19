"""Self-auditing verification reports and their CSV/JSON serialization.

Every case carries lhs, rhs, abs_err, tolerance and a pass flag; report-only
observations (ineffective-constant ratios and the like) live in the metadata
map and are never pass/fail.  JSON artifacts contain no timestamps, so a run
is byte-identical given the same config and seed.

CSV schema (fixed): suite,case_id,p,n,lhs,rhs,abs_err,tol,pass
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

CSV_HEADER = ("suite", "case_id", "p", "n", "lhs", "rhs", "abs_err", "tol", "pass")


@dataclass
class Case:
    case_id: str
    p: int
    n: int
    lhs: float
    rhs: float
    abs_err: float
    tol: float | None
    passed: bool
    metadata: dict = field(default_factory=dict)

    def to_obj(self) -> dict:
        return {
            "case_id": self.case_id,
            "p": self.p,
            "n": self.n,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_err": self.abs_err,
            "tol": self.tol,
            "pass": self.passed,
            "metadata": self.metadata,
        }

    @staticmethod
    def from_obj(obj: dict) -> "Case":
        return Case(case_id=obj["case_id"], p=obj["p"], n=obj["n"],
                    lhs=obj["lhs"], rhs=obj["rhs"], abs_err=obj["abs_err"],
                    tol=obj["tol"], passed=obj["pass"],
                    metadata=obj.get("metadata", {}))


def equality_case(case_id: str, p: int, n: int, lhs: float, rhs: float,
                  tol: float, extra_ok: bool = True, metadata: dict | None = None) -> Case:
    err = abs(lhs - rhs)
    return Case(case_id=case_id, p=p, n=n, lhs=float(lhs), rhs=float(rhs),
                abs_err=float(err), tol=tol, passed=bool(err <= tol and extra_ok),
                metadata=metadata or {})


def bound_case(case_id: str, p: int, n: int, lhs: float, rhs: float,
               strict: bool = False, tol: float = 0.0,
               extra_ok: bool = True, metadata: dict | None = None) -> Case:
    """lhs <= rhs + tol (or strict <) with abs_err = violation amount."""
    ok = (lhs < rhs) if strict else (lhs <= rhs + tol)
    err = max(0.0, float(lhs) - float(rhs))
    return Case(case_id=case_id, p=p, n=n, lhs=float(lhs), rhs=float(rhs),
                abs_err=err, tol=tol, passed=bool(ok and extra_ok),
                metadata=metadata or {})


def report_case(case_id: str, p: int, n: int, lhs: float, rhs: float = 0.0,
                metadata: dict | None = None) -> Case:
    """Report-only observation; always passes, never asserted."""
    md = dict(metadata or {})
    md["report_only"] = True
    return Case(case_id=case_id, p=p, n=n, lhs=float(lhs), rhs=float(rhs),
                abs_err=0.0, tol=None, passed=True, metadata=md)


@dataclass
class VerificationReport:
    suite: str
    provenance: dict
    cases: list[Case]

    @property
    def summary(self) -> dict:
        total = len(self.cases)
        passed = sum(1 for c in self.cases if c.passed)
        return {"total": total, "passed": passed, "failed": total - passed}

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_obj(self) -> dict:
        return {
            "suite": self.suite,
            "provenance": self.provenance,
            "cases": [c.to_obj() for c in self.cases],
            "summary": self.summary,
        }

    @staticmethod
    def from_obj(obj: dict) -> "VerificationReport":
        return VerificationReport(
            suite=obj["suite"],
            provenance=obj["provenance"],
            cases=[Case.from_obj(c) for c in obj["cases"]],
        )


def report_to_json(reports: list[VerificationReport] | VerificationReport) -> str:
    if isinstance(reports, VerificationReport):
        obj = reports.to_obj()
    else:
        obj = [r.to_obj() for r in reports]
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def reports_from_json(text: str) -> list[VerificationReport]:
    obj = json.loads(text)
    if isinstance(obj, dict):
        obj = [obj]
    return [VerificationReport.from_obj(o) for o in obj]


def _fmt(x: float | None) -> str:
    return "" if x is None else repr(float(x))


def report_to_csv(reports: list[VerificationReport] | VerificationReport) -> str:
    if isinstance(reports, VerificationReport):
        reports = [reports]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rep in reports:
        for c in rep.cases:
            writer.writerow([rep.suite, c.case_id, c.p, c.n, _fmt(c.lhs),
                             _fmt(c.rhs), _fmt(c.abs_err), _fmt(c.tol),
                             "true" if c.passed else "false"])
    return buf.getvalue()
