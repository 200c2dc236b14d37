"""Named exact checks with witnesses, and reports that collect them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


def _fmt(x):
    if isinstance(x, np.ndarray):
        return [_fmt(v) for v in x.tolist()]
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, (np.integer, int)):
        return str(int(x))
    return str(x)


@dataclass
class Check:
    name: str
    ok: bool
    witness: dict | None = None
    note: str | None = None

    def __bool__(self):
        return bool(self.ok)

    def to_json(self):
        d = {"ok": bool(self.ok)}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.note:
            d["note"] = self.note
        return d


def compare(name, lhs, rhs, labels=None, note=None):
    """Entrywise equality of two arrays; on failure record the first differing index."""
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    if lhs.shape != rhs.shape:
        return Check(name, False, {"shape": [list(lhs.shape), list(rhs.shape)]}, note)
    diff = np.argwhere(np.asarray(lhs != rhs, dtype=bool).reshape(lhs.shape))
    if len(diff) == 0:
        return Check(name, True, None, note)
    idx = tuple(int(i) for i in diff[0])
    w = {"index": list(idx), "lhs": _fmt(lhs[idx]), "rhs": _fmt(rhs[idx])}
    if labels:
        w["labels"] = list(labels)[: len(idx)]
    return Check(name, False, w, note)


def holds(name, ok, witness=None, note=None):
    return Check(name, bool(ok), witness, note)


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, check):
        if isinstance(check, Report):
            for c in check.checks:
                self.checks.append(Check(f"{check.title}.{c.name}", c.ok, c.witness, c.note))
        else:
            self.checks.append(check)
        return check

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def __bool__(self):
        return self.ok

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def to_json(self):
        return {"title": self.title, "pass": self.ok,
                "checks": {c.name: c.to_json() for c in self.checks}, **({"data": self.data} if self.data else {})}

    def summary(self):
        lines = [f"{'PASS' if self.ok else 'FAIL'} {self.title}"]
        for c in self.checks:
            mark = "ok  " if c.ok else "FAIL"
            extra = f"  witness={c.witness}" if c.witness else ""
            lines.append(f"  {mark} {c.name}{extra}")
        return "\n".join(lines)
