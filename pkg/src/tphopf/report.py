"""Verification reports carrying explicit counterexample witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .exactlin import format_rational


def format_vector(v: Sequence[Fraction], names: Sequence[str]) -> str:
    """Render a coordinate vector as a linear combination of named basis vectors."""
    terms = []
    for c, name in zip(v, names):
        if not c:
            continue
        if name == "1":
            body = format_rational(abs(c))
        elif abs(c) == 1:
            body = name
        else:
            coef = format_rational(abs(c))
            body = f"({coef}){name}" if "/" in coef else f"{coef}{name}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return x


@dataclass(frozen=True)
class Witness:
    """One violated instance of a law: where it fails and both evaluated sides."""

    law: str
    at: tuple
    lhs: Any
    rhs: Any

    def to_json(self) -> dict:
        return {"law": self.law, "at": list(self.at), "lhs": _jsonable(self.lhs), "rhs": _jsonable(self.rhs)}

    def __str__(self) -> str:
        return f"{self.law} at {self.at}: lhs={_jsonable(self.lhs)} rhs={_jsonable(self.rhs)}"


@dataclass
class Report:
    subject: str
    laws: list[str] = field(default_factory=list)
    witnesses: list[Witness] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def __bool__(self) -> bool:
        return self.passed

    def law(self, name: str) -> None:
        if name not in self.laws:
            self.laws.append(name)

    def compare(self, law: str, at: tuple, lhs, rhs) -> bool:
        self.law(law)
        if lhs != rhs:
            self.witnesses.append(Witness(law, tuple(at), lhs, rhs))
            return False
        return True

    def fail(self, law: str, at: tuple, lhs, rhs) -> None:
        self.law(law)
        self.witnesses.append(Witness(law, tuple(at), lhs, rhs))

    def merge(self, other: "Report") -> "Report":
        for name in other.laws:
            self.law(name)
        self.witnesses.extend(other.witnesses)
        return self

    def failed_laws(self) -> list[str]:
        seen: list[str] = []
        for w in self.witnesses:
            if w.law not in seen:
                seen.append(w.law)
        return seen

    def witnesses_for(self, law: str) -> list[Witness]:
        return [w for w in self.witnesses if w.law == law]

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "pass": self.passed,
            "laws": list(self.laws),
            "witnesses": [w.to_json() for w in self.witnesses],
        }

    def summary(self, limit: int = 5) -> str:
        head = f"{self.subject}: {'PASS' if self.passed else 'FAIL'} ({len(self.laws)} laws checked"
        if self.passed:
            return head + ")"
        lines = [head + f", {len(self.witnesses)} witnesses)"]
        lines += [f"  {w}" for w in self.witnesses[:limit]]
        if len(self.witnesses) > limit:
            lines.append(f"  ... {len(self.witnesses) - limit} more")
        return "\n".join(lines)
