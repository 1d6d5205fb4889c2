"""VerificationReport and its JSON form."""

from __future__ import annotations

import json
import math
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction


def fmt_value(x) -> str:
    """Exact values as 'p/q' strings, floats and complex numbers by repr."""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        if x.imag == 0:
            return repr(x.real)
        return repr(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


@dataclass
class VerificationReport:
    identity_id: str
    parameters: dict
    lhs: str
    rhs: str
    abs_error: float
    rel_error: float
    tolerance: float | None
    tail_bounds: dict = field(default_factory=dict)
    passed: bool = False
    runtime_ms: int = 0
    notes: dict = field(default_factory=dict)

    def recompute_pass(self) -> bool:
        if self.tolerance is None:
            return self.abs_error == 0
        return self.rel_error <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "parameters": self.parameters,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "tolerance": self.tolerance,
            "tail_bounds": self.tail_bounds,
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
            "notes": self.notes,
        }

    def sort_key(self):
        items = []
        for k, v in sorted(self.parameters.items()):
            if isinstance(v, (int, float)) and not isinstance(v, bool):
                items.append((k, 0, float(v), ""))
            else:
                items.append((k, 1, 0.0, json.dumps(v, sort_keys=True)))
        return (self.identity_id, tuple(items))


def exact_report(identity_id: str, parameters: dict, lhs, rhs, notes: dict | None = None) -> VerificationReport:
    """Both sides exact (Fraction, int or PiRational): pass iff equal."""
    ok = lhs == rhs
    if ok:
        err = rel = 0.0
    else:
        err = abs(float(lhs) - float(rhs))
        rel = err / max(abs(float(lhs)), abs(float(rhs)), 1e-300)
    return VerificationReport(
        identity_id, parameters, fmt_value(lhs), fmt_value(rhs), err, rel, None, {}, ok, 0, notes or {}
    )


def numeric_report(
    identity_id: str,
    parameters: dict,
    lhs,
    rhs,
    tolerance: float,
    tail_bounds: dict | None = None,
    scale: float | None = None,
    notes: dict | None = None,
) -> VerificationReport:
    """Relative error against max(|lhs|, |rhs|, scale).

    ``scale`` lets a caller supply the size of the individual terms when the
    two sides cancel to (near) zero; it is recorded in the notes.
    """
    diff = abs(complex(lhs) - complex(rhs))
    denom = max(abs(complex(lhs)), abs(complex(rhs)))
    notes = dict(notes or {})
    if scale is not None:
        notes["error_scale"] = scale
        denom = max(denom, scale)
    rel = diff / denom if denom > 0 else (0.0 if diff == 0 else math.inf)
    return VerificationReport(
        identity_id,
        parameters,
        fmt_value(lhs),
        fmt_value(rhs),
        float(diff),
        float(rel),
        tolerance,
        tail_bounds or {},
        bool(rel <= tolerance),
        0,
        notes,
    )


@contextmanager
def timed(reports: list, enabled: bool):
    """Fill runtime_ms of reports appended inside the block (kept at 0 unless enabled)."""
    start = time.perf_counter()
    n0 = len(reports)
    yield
    if enabled:
        ms = int(round((time.perf_counter() - start) * 1000))
        new = reports[n0:]
        for r in new:
            r.runtime_ms = ms // max(1, len(new))


def dump_reports(reports) -> str:
    ordered = sorted(reports, key=lambda r: r.sort_key())
    return json.dumps([r.to_dict() for r in ordered], indent=2, sort_keys=False) + "\n"
