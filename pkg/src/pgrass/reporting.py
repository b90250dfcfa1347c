"""Run reports, canonical JSON, and CSV curve emission.

Reports serialize to JSON with insertion-ordered keys and every float
written with 17 significant digits, so identical configurations and
seeds produce identical bytes apart from the timestamp field.  Curves
go to CSV with the header  t,eig_1,...,eig_n.
"""

import csv
import json
import time
from dataclasses import dataclass, field

import numpy as np

TOOL_NAME = "pgrass"
SCHEMA_VERSION = 1


def _fmt_float(x):
    if x != x:  # NaN
        return "null"
    if x in (float("inf"), float("-inf")):
        return json.dumps(str(x))
    text = format(float(x), ".17g")
    # Keep a float marker so round-trips preserve the type.
    if "." not in text and "e" not in text and "E" not in text:
        text += ".0"
    return text


def dumps_canonical(obj, indent=0):
    """JSON with deterministic float formatting and insertion-order keys."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, complex):
        return dumps_canonical([obj.real, obj.imag], indent)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [
            f"{inner}{json.dumps(str(k), ensure_ascii=False)}: "
            f"{dumps_canonical(v, indent + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            return "[]"
        flat = all(
            isinstance(v, (int, float, bool, np.integer, np.floating)) for v in items
        )
        if flat:
            return "[" + ", ".join(dumps_canonical(v) for v in items) + "]"
        rows = [f"{inner}{dumps_canonical(v, indent + 1)}" for v in items]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj)!r}")


@dataclass(frozen=True)
class Check:
    """One verification record: a measured value against its bound."""

    name: str
    passed: bool
    value: float = None
    bound: float = None
    residual: float = None
    detail: str = ""

    def to_dict(self):
        d = {"name": self.name, "status": "pass" if self.passed else "fail"}
        if self.value is not None:
            d["value"] = self.value
        if self.bound is not None:
            d["bound"] = self.bound
        if self.residual is not None:
            d["residual"] = self.residual
        if self.detail:
            d["detail"] = self.detail
        return d


def residual_check(name, residual, bound, detail=""):
    return Check(
        name=name,
        passed=bool(residual <= bound),
        residual=float(residual),
        bound=float(bound),
        detail=detail,
    )


def value_check(name, value, expected, tol=0.0, detail=""):
    """Check |value - expected| <= tol (exact when tol = 0)."""
    err = abs(value - expected)
    return Check(
        name=name,
        passed=bool(err <= tol),
        value=float(value) if isinstance(value, float) else value,
        bound=float(expected) if isinstance(expected, float) else expected,
        residual=float(err),
        detail=detail,
    )


def flag_check(name, ok, detail=""):
    return Check(name=name, passed=bool(ok), detail=detail)


@dataclass
class Report:
    """Tool report: config echo, per-check records, optional data arrays."""

    command: str
    config: dict
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def extend(self, checks):
        self.checks.extend(checks)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self, timestamp=None):
        from . import __version__

        failed = [c for c in self.checks if not c.passed]
        d = {
            "schema_version": SCHEMA_VERSION,
            "tool": {"name": TOOL_NAME, "version": __version__},
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
            if timestamp is None
            else timestamp,
            "command": self.command,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "summary": {
                "total": len(self.checks),
                "passed": len(self.checks) - len(failed),
                "failed": len(failed),
            },
        }
        if self.data:
            d["data"] = self.data
        return d

    def render_text(self):
        lines = [f"{TOOL_NAME} {self.command}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            extra = []
            if c.value is not None:
                extra.append(f"value={c.value}")
            if c.residual is not None:
                extra.append(f"residual={c.residual:.3e}")
            if c.bound is not None:
                extra.append(f"bound={c.bound}")
            if c.detail:
                extra.append(c.detail)
            lines.append(f"  [{status}] {c.name}" + (": " + ", ".join(extra) if extra else ""))
        ok = sum(c.passed for c in self.checks)
        lines.append(f"  {ok}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def write_report(report, path, timestamp=None):
    text = dumps_canonical(report.to_dict(timestamp)) + "\n"
    path.write_text(text, encoding="utf-8")
    return path


def write_curve_csv(path, rows):
    """Rows are (t, eigenvalues); emits header t,eig_1,...,eig_n."""
    rows = [(t, np.asarray(vals, dtype=float)) for t, vals in rows]
    if not rows:
        raise ValueError("no curve rows to write")
    n = rows[0][1].size
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t"] + [f"eig_{i + 1}" for i in range(n)])
        for t, vals in rows:
            writer.writerow(
                [format(t, ".17g")] + [format(v, ".17g") for v in vals]
            )
    return path
