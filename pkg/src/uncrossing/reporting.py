"""Pass/fail reports shared by the verification suites and the CLI."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    status: str  # "pass" or "fail"
    witness: Any = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": self.witness}


@dataclass
class Report:
    subject: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)

    def add(self, name: str, passed: bool, witness: Any = None) -> Check:
        check = Check(name, "pass" if passed else "fail", witness)
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(
                Check(prefix + check.name, check.status, check.witness)
            )

    def failed(self) -> list[Check]:
        return [check for check in self.checks if not check.ok]

    def to_dict(self) -> dict:
        return {
            "poset": self.subject,
            "checks": [check.to_dict() for check in self.checks],
        }

    def to_json(self, path: str | None = None) -> str:
        text = json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        return text

    def to_csv(self, path: str) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["check", "status", "witness"])
            for check in self.checks:
                witness = "" if check.witness is None else json.dumps(
                    check.witness, sort_keys=True, ensure_ascii=False
                )
                writer.writerow([check.name, check.status, witness])

    def summary_lines(self) -> list[str]:
        return ["%s: %s" % (check.name, check.status) for check in self.checks]
