"""Check reports and their serialization.

Every check returns a :class:`Report`; the JSON form is
``{"check", "params", "pass", "data"}`` with keys sorted, so identical runs give
byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .scalar import Scalar

__all__ = ["Report", "jsonable", "dumps"]


@dataclass
class Report:
    check: str
    params: dict = field(default_factory=dict)
    passed: bool = True
    data: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self, q0=None) -> dict:
        return {
            "check": self.check,
            "params": jsonable(self.params, q0),
            "pass": bool(self.passed),
            "data": jsonable(self.data, q0),
        }


def jsonable(obj: Any, q0=None) -> Any:
    """Convert scalars, fractions, tuples and nested containers to JSON types.

    With ``q0`` given, scalars are evaluated there and emitted as exact
    rational strings.
    """
    if isinstance(obj, Scalar):
        if q0 is not None:
            return _frac(obj.evaluate(q0))
        return obj.to_json()
    if isinstance(obj, Fraction):
        return _frac(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return float(obj)
    if hasattr(obj, "to_json"):
        try:
            return obj.to_json(q0) if q0 is not None else obj.to_json()
        except TypeError:
            return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v, q0) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v, q0) for v in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return jsonable(obj.item(), q0)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def to_csv(rows: list[dict]) -> str:
    """Flat CSV of a list of row dicts (nested values JSON-encoded)."""
    if not rows:
        return ""
    keys = sorted({k for row in rows for k in row})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: v if isinstance(v, (str, int, float)) else json.dumps(v, sort_keys=True)
                    for k, v in row.items()})
    return buf.getvalue()
