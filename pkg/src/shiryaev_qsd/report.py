"""Typed result containers with deterministic JSON and CSV rendering.

The serializer is hand-rolled instead of json.dumps so float formatting
is pinned: every number renders through format(x, '.17g'), which
round-trips doubles exactly and never varies between runs or platforms.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .errors import DomainError

__all__ = ["ResultRow", "CheckRow", "EvalReport", "SCHEMA_VERSION"]

SCHEMA_VERSION = "1.0.0"

_PROVENANCES = frozenset({"closed_form", "quadrature", "identity"})


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise DomainError(f"reports must not carry non-finite numbers, got {x!r}")
    return format(x, ".17g")


def _escape(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _emit(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, complex):
        return f'{{"re":{_fmt_float(obj.real)},"im":{_fmt_float(obj.imag)}}}'
    if isinstance(obj, str):
        return _escape(obj)
    if isinstance(obj, dict):
        items = (f"{_escape(str(k))}:{_emit(v)}" for k, v in obj.items())
        return "{" + ",".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_emit(v) for v in obj) + "]"
    raise DomainError(f"no JSON rendering for {type(obj).__name__}")


@dataclass(frozen=True)
class ResultRow:
    """One computed quantity: a name, its value, and how it was obtained."""

    name: str
    value: float | complex
    provenance: str

    def __post_init__(self) -> None:
        if self.provenance not in _PROVENANCES:
            raise DomainError(
                f"provenance must be one of {sorted(_PROVENANCES)}, "
                f"got {self.provenance!r}"
            )


@dataclass(frozen=True)
class CheckRow:
    """One verification outcome; residual is the measured metric, whatever
    the check's own scale is (relative error, signed slack, ...)."""

    name: str
    passed: bool
    residual: float


@dataclass
class EvalReport:
    command: str
    inputs: dict
    results: list[ResultRow] = field(default_factory=list)
    checks: list[CheckRow] = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> str:
        doc = {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "results": [
                {"name": r.name, "value": r.value, "provenance": r.provenance}
                for r in self.results
            ],
            "checks": [
                {"name": c.name, "passed": c.passed, "residual": c.residual}
                for c in self.checks
            ],
            "ok": self.ok,
        }
        return _emit(doc)

    def to_csv(self) -> str:
        """Results as a flat table; a report with only checks tabulates
        those instead (the verify command has nothing else to print)."""
        buf = io.StringIO(newline="")
        w = csv.writer(buf, lineterminator="\n")
        if self.results:
            w.writerow(["name", "value", "provenance"])
            for r in self.results:
                if isinstance(r.value, complex):
                    sign = "+" if r.value.imag >= 0 else "-"
                    val = (
                        _fmt_float(r.value.real)
                        + sign
                        + _fmt_float(abs(r.value.imag))
                        + "j"
                    )
                else:
                    val = _fmt_float(r.value)
                w.writerow([r.name, val, r.provenance])
        else:
            w.writerow(["name", "passed", "residual"])
            for c in self.checks:
                w.writerow([c.name, str(c.passed).lower(), _fmt_float(c.residual)])
        return buf.getvalue()
