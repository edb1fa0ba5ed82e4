"""Check reports with exact cross-multiplied sides."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

HOLDS = "holds"
FAILS = "fails"
INAPPLICABLE = "inapplicable"

_RELATIONS = {
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "==": lambda a, b: a == b,
}


def decide(lhs, relation: str, rhs) -> str:
    return HOLDS if _RELATIONS[relation](lhs, rhs) else FAILS


def _ratio(lhs, rhs) -> Optional[float]:
    if rhs == 0:
        return None
    try:
        return float(Fraction(lhs) / Fraction(rhs))
    except OverflowError:
        return None


def to_jsonable(x: Any) -> Any:
    """Fractions become ``"p/q"`` strings; tuples become lists; dict order is kept."""
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return str(x)


def parse_rational(s):
    """Inverse of :func:`to_jsonable` on numbers and nested lists or dicts of numbers."""
    if isinstance(s, (list, tuple)):
        return [parse_rational(x) for x in s]
    if isinstance(s, dict):
        return {k: parse_rational(v) for k, v in s.items()}
    return Fraction(s)


@dataclass
class CheckReport:
    check_id: str
    instance: dict
    lhs_power: Any = None
    relation: str = "<="
    rhs_power: Any = None
    verdict: str = INAPPLICABLE
    ratio_float: Optional[float] = None
    constants: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    subreports: list = field(default_factory=list)

    @classmethod
    def compare(cls, check_id: str, instance: dict, lhs, relation: str, rhs, **kw) -> "CheckReport":
        return cls(check_id, instance, lhs, relation, rhs, decide(lhs, relation, rhs), _ratio(lhs, rhs), **kw)

    @classmethod
    def inapplicable(cls, check_id: str, instance: dict, reason: str, **kw) -> "CheckReport":
        return cls(check_id, instance, verdict=INAPPLICABLE, notes=[reason], **kw)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def ok(self) -> bool:
        return self.verdict != FAILS and all(r.ok for r in self.subreports)

    def failures(self) -> list["CheckReport"]:
        out = [self] if self.verdict == FAILS else []
        for r in self.subreports:
            out.extend(r.failures())
        return out

    def recompute_verdict(self) -> str:
        if self.verdict == INAPPLICABLE:
            return INAPPLICABLE
        return decide(parse_rational(self.lhs_power), self.relation, parse_rational(self.rhs_power))

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "instance": to_jsonable(self.instance),
            "lhs_power": to_jsonable(self.lhs_power),
            "relation": self.relation,
            "rhs_power": to_jsonable(self.rhs_power),
            "verdict": self.verdict,
            "ratio_float": self.ratio_float,
            "constants": to_jsonable(self.constants),
            "witnesses": to_jsonable(self.witnesses),
            "bounds": to_jsonable(self.bounds),
            "notes": list(self.notes),
            "subreports": [r.to_dict() for r in self.subreports],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        return cls(
            d["check_id"], d["instance"], d["lhs_power"], d["relation"], d["rhs_power"], d["verdict"],
            d.get("ratio_float"), d.get("constants", {}), d.get("witnesses", {}),
            d.get("bounds", {}), d.get("notes", []),
            [cls.from_dict(r) for r in d.get("subreports", [])],
        )


def all_ok(reports) -> bool:
    return all(r.ok for r in reports)
