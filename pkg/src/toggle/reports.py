"""Claim reports shared by the verification suites and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

HOLDS = "holds"
VIOLATED = "violated"


@dataclass
class ClaimReport:
    claim: str
    checked: str
    status: str = HOLDS
    counterexample: dict[str, Any] | None = None
    cases: list[dict[str, Any]] = field(default_factory=list)
    incomplete: bool = False

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def add(self, ok: bool, **case) -> None:
        case["ok"] = bool(ok)
        self.cases.append(case)
        if not ok and self.status == HOLDS:
            self.status = VIOLATED
            self.counterexample = {k: v for k, v in case.items() if k != "ok"}

    def lines(self, fmt: str = "text") -> list[str]:
        if fmt == "json-lines":
            out = [json.dumps({"claim": self.claim, **c}, sort_keys=True) for c in self.cases]
            out.append(json.dumps({"claim": self.claim, "checked": self.checked,
                                   "status": self.status, "incomplete": self.incomplete,
                                   "counterexample": self.counterexample}, sort_keys=True))
            return out
        if fmt == "csv":
            keys = sorted({k for c in self.cases for k in c})
            out = [",".join(keys)]
            for c in self.cases:
                out.append(",".join(_csv_cell(c.get(k, "")) for k in keys))
            return out
        out = [f"claim {self.claim}: {self.status} ({self.checked})"]
        if self.incomplete:
            out.append("  incomplete: some cases ran over budget")
        for c in self.cases:
            out.append("  " + " ".join(f"{k}={_text_cell(v)}" for k, v in c.items()))
        if self.counterexample is not None:
            out.append("  counterexample: " + " ".join(
                f"{k}={_text_cell(v)}" for k, v in self.counterexample.items()))
        return out


def _text_cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v)) if v else "-"
    return str(v)


def _csv_cell(v) -> str:
    s = _text_cell(v)
    return f'"{s}"' if "," in s else s
