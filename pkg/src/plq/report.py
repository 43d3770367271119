"""Report assembly and serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from plq import __version__
from plq.suites import CheckRecord

SCHEMA = 1


@dataclass
class Report:
    case: dict
    run: dict
    checks: list[CheckRecord] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def failed(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "info": 0, "skip": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "schema": SCHEMA,
            "version": __version__,
            "case": self.case,
            "run": self.run,
            "warnings": list(self.warnings),
            "summary": {**self.counts(), "ok": self.ok},
            "checks": [c.as_dict(timings) for c in self.checks],
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True) + "\n"

    def to_text(self, timings: bool = False) -> str:
        head = ", ".join(f"{k}={v}" for k, v in self.case.items())
        lines = [f"plq report ({head})"]
        lines += [f"warning: {w}" for w in self.warnings]
        suite = None
        for c in self.checks:
            if c.suite != suite:
                suite = c.suite
                lines.append(f"[{suite}]")
            extra = f"  numeric={c.numeric:.3e}" if c.numeric is not None else ""
            if timings:
                extra += f"  {c.elapsed * 1000:.1f}ms"
            note = f"  ({c.note})" if c.note else ""
            lines.append(f"  {c.status.upper():4} {c.name:<40} residual={_short(c.residual)}{extra}{note}")
        k = self.counts()
        lines.append(f"{k['pass']} passed, {k['fail']} failed, {k['info']} informational, {k['skip']} skipped")
        return "\n".join(lines) + "\n"


def _short(text: str, width: int = 60) -> str:
    return text if len(text) <= width else text[: width - 3] + "..."
