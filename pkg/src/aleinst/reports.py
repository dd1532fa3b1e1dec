"""Structured outcome of a verification run."""

from __future__ import annotations

from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "flagged")


@dataclass
class CheckReport:
    check: str
    status: str
    details: list = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"check": self.check, "status": self.status, "details": list(self.details)}

    @staticmethod
    def combine(name: str, reports: list) -> "CheckReport":
        """Worst status wins; details are prefixed by the sub-check name."""
        details = []
        status = "pass"
        for rep in reports:
            details.extend(f"{rep.check}: {d}" for d in rep.details)
            if rep.status == "fail":
                status = "fail"
            elif rep.status == "flagged" and status == "pass":
                status = "flagged"
        return CheckReport(name, status, details)
