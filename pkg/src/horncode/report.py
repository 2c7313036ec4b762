"""Check results and machine-readable run reports."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    """One named check: measured against expected within a tolerance.

    ``tolerance`` is None for exact checks; values are stored as given and
    rendered with repr so reports are byte-stable.
    """

    name: str
    measured: object
    expected: object
    tolerance: float | None
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": _jsonable(self.measured),
            "expected": _jsonable(self.expected),
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def check_close(name, measured, expected, tolerance) -> CheckResult:
    ok = abs(float(measured) - float(expected)) <= tolerance
    return CheckResult(name, measured, expected, tolerance, ok)


def check_equal(name, measured, expected) -> CheckResult:
    return CheckResult(name, measured, expected, None, measured == expected)


def check_true(name, condition, detail="") -> CheckResult:
    return CheckResult(name, detail or bool(condition), True, None,
                       bool(condition))


def _jsonable(value):
    from fractions import Fraction

    if isinstance(value, Fraction):
        from .rationals import format_rational

        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return repr(value)


@dataclass
class RunReport:
    """Outcome of one CLI invocation: echoed command, input digests, checks."""

    command: list[str]
    seed: int
    inputs: dict[str, str] = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check: CheckResult) -> None:
        names = [c.name for c in self.checks]
        if check.name in names:
            raise ValueError(f"duplicate check name {check.name!r}")
        self.checks.append(check)

    def extend(self, checks) -> None:
        for c in checks:
            self.add(c)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_jsonl(self) -> str:
        lines = [json.dumps({"command": self.command, "seed": self.seed,
                             "inputs": self.inputs}, sort_keys=True)]
        lines += [json.dumps(c.to_dict(), sort_keys=True) for c in self.checks]
        lines.append(json.dumps({"passed": self.passed,
                                 "total": len(self.checks),
                                 "failed": sum(not c.passed for c in self.checks)},
                                sort_keys=True))
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        out = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            tol = "" if c.tolerance is None else f" (tol {c.tolerance:g})"
            out.append(f"[{status}] {c.name}: measured "
                       f"{_render(c.measured)} vs expected "
                       f"{_render(c.expected)}{tol}")
        n_fail = sum(not c.passed for c in self.checks)
        out.append(f"{len(self.checks) - n_fail}/{len(self.checks)} checks passed")
        return "\n".join(out) + "\n"


def _render(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(_jsonable(value))


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()
