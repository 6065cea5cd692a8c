"""Structured findings shared by conversion and validation."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .rdf.terms import BlankNode, Iri


class Code(str, Enum):
    LOSSY_DROP = "LOSSY_DROP"
    AMBIGUOUS_SOURCE_TERM = "AMBIGUOUS_SOURCE_TERM"
    UNKNOWN_TERM = "UNKNOWN_TERM"
    MULTI_TYPED_NODE = "MULTI_TYPED_NODE"
    MISSING_LINK = "MISSING_LINK"
    BAD_GRANULARITY = "BAD_GRANULARITY"
    PARSE_ERROR = "PARSE_ERROR"
    NON_ABSOLUTE_ID = "NON_ABSOLUTE_ID"
    UNTYPED_NODE = "UNTYPED_NODE"

    def __str__(self) -> str:
        return self.value


class Severity(str, Enum):
    error = "error"
    warning = "warning"
    info = "info"

    def __str__(self) -> str:
        return self.value


# codes whose severity is fixed regardless of where they are raised
_FIXED = {
    Code.LOSSY_DROP: Severity.warning,
    Code.AMBIGUOUS_SOURCE_TERM: Severity.warning,
    Code.PARSE_ERROR: Severity.error,
}


def subject_text(node: Iri | BlankNode | str) -> str:
    return node if isinstance(node, str) else str(node)


@dataclass(frozen=True)
class Diagnostic:
    code: Code
    subject: str
    detail: str
    severity: Severity = Severity.warning
    rule: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "code", Code(self.code))
        object.__setattr__(self, "severity", Severity(self.severity))
        fixed = _FIXED.get(self.code)
        if fixed is not None and self.severity is not fixed:
            raise ValueError(f"{self.code} must have severity {fixed}")

    def line(self) -> str:
        return f"{self.severity.value.upper()} {self.code.value} {self.subject} — {self.detail}"

    def to_dict(self) -> dict:
        out = {
            "code": self.code.value,
            "subject": self.subject,
            "detail": self.detail,
            "severity": self.severity.value,
        }
        if self.rule:
            out["rule"] = self.rule
        return out


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.severity is Severity.error for d in diagnostics)


def diagnostics_json(diagnostics: Iterable[Diagnostic]) -> str:
    return json.dumps({"diagnostics": [d.to_dict() for d in diagnostics]}, indent=2, ensure_ascii=False) + "\n"
