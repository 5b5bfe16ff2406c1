"""Report records shared by every checker, plus the package-wide input error."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


class InputError(ValueError):
    """Malformed input: bad widths, unknown identifiers, broken files, exceeded caps."""


@dataclass(frozen=True)
class PropertyReport:
    """Verdict for one property.

    ``witness`` maps the quantified variable names (``X``, ``Y``, ``A``, ...) to
    the identifiers of a violating assignment; it is ``None`` when the property
    holds or the check was skipped.
    """

    property: str
    holds: bool
    witness: Optional[dict[str, Any]] = None
    checked: int = 0
    skipped: bool = False
    reason: Optional[str] = None

    @classmethod
    def skip(cls, prop: str, reason: str) -> "PropertyReport":
        return cls(property=prop, holds=False, skipped=True, reason=reason)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "property": self.property,
            "holds": self.holds,
            "witness": self.witness,
            "checked": self.checked,
            "skipped": self.skipped,
        }
        if self.reason is not None:
            out["reason"] = self.reason
        return out

    def render(self, prefix: str = "") -> str:
        if self.skipped:
            tag = "SKIP"
        else:
            tag = "PASS" if self.holds else "FAIL"
        line = f"[{tag}] {prefix}{self.property} (checked {self.checked})"
        if self.skipped:
            line += f": {self.reason}"
        elif self.witness is not None:
            line += " witness " + render_witness(self.witness)
        return line


def render_witness(witness: dict[str, Any]) -> str:
    parts = []
    for name, value in witness.items():
        if isinstance(value, (list, tuple)):
            value = "{" + ",".join(value) + "}"
        parts.append(f"{name}={value}")
    return " ".join(parts)


@dataclass(frozen=True)
class TheoremReport:
    theorem: str
    hypotheses: list[PropertyReport] = field(default_factory=list)
    conclusions: list[PropertyReport] = field(default_factory=list)
    identities: list[PropertyReport] = field(default_factory=list)

    def all_reports(self) -> list[PropertyReport]:
        return [*self.hypotheses, *self.conclusions, *self.identities]

    @property
    def overall(self) -> bool:
        return all(r.holds for r in self.all_reports() if not r.skipped)

    @property
    def skipped(self) -> list[PropertyReport]:
        return [r for r in self.all_reports() if r.skipped]

    def to_json(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "hypotheses": [r.to_json() for r in self.hypotheses],
            "conclusions": [r.to_json() for r in self.conclusions],
            "identities": [r.to_json() for r in self.identities],
            "overall": self.overall,
        }

    def render(self) -> str:
        lines = [f"theorem {self.theorem}"]
        for label, group in (
            ("hypothesis", self.hypotheses),
            ("conclusion", self.conclusions),
            ("identity", self.identities),
        ):
            lines.extend(r.render(label + " ") for r in group)
        lines.append(f"overall: {'true' if self.overall else 'false'}")
        return "\n".join(lines)
