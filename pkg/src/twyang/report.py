"""Check results shared by all suites."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

__all__ = ["Case", "Report", "as_witness"]


@dataclass
class Case:
    case_id: str
    status: str  # pass | fail | skip
    witness: str = ""
    elapsed_ms: float = 0.0

    @property
    def ok(self):
        return self.status != "fail"


def as_witness(res):
    """Normalize a check outcome to '' (pass) or a witness string."""
    if res is None or res is True:
        return ""
    if res is False:
        return "identity does not hold"
    return str(res)


@dataclass
class Report:
    name: str = ""
    cases: list = field(default_factory=list)

    def add(self, case_id, res, elapsed_ms=0.0):
        w = as_witness(res)
        self.cases.append(Case(case_id, "fail" if w else "pass", w, elapsed_ms))
        return not w

    def skip(self, case_id, why=""):
        self.cases.append(Case(case_id, "skip", why, 0.0))

    def check(self, case_id, fn, *args, **kw):
        t0 = time.perf_counter()
        try:
            res = fn(*args, **kw)
        except (ArithmeticError, ValueError) as e:
            res = "error: %s" % e
        return self.add(case_id, res, (time.perf_counter() - t0) * 1000)

    def extend(self, other, prefix=""):
        for c in other.cases:
            self.cases.append(Case(prefix + c.case_id, c.status, c.witness, c.elapsed_ms))
        return self

    @property
    def ok(self):
        return all(c.ok for c in self.cases)

    @property
    def failures(self):
        return [c for c in self.cases if c.status == "fail"]

    def __iter__(self):
        return iter(self.cases)

    def __len__(self):
        return len(self.cases)

    def __bool__(self):
        return True

    def summary(self):
        lines = []
        for c in self.cases:
            s = "%-4s %s" % (c.status, c.case_id)
            if c.status == "fail":
                s += "  [" + c.witness + "]"
            lines.append(s)
        return "\n".join(lines)
