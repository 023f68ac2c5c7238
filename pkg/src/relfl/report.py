"""Report rows shared by the symbolic and enumerative checks."""

import json
from dataclasses import dataclass, field
from fractions import Fraction


class MismatchReport(AssertionError):
    def __init__(self, report):
        super().__init__("%s failed: lhs=%s rhs=%s" % (report.check, report.lhs, report.rhs))
        self.report = report


def render_value(x):
    if hasattr(x, "render"):
        return x.render()
    if isinstance(x, Fraction):
        return str(x)
    return str(x)


@dataclass
class OrbReport:
    check: str
    params: dict
    lhs: object
    rhs: object
    factor: int = 1
    status: str = "pass"
    seed: object = None
    detail: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, check, params, lhs, rhs, factor=1, seed=None, **detail):
        status = "pass" if lhs == rhs else "fail"
        return cls(check, params, lhs, rhs, factor, status, seed, detail)

    @property
    def ok(self):
        return self.status == "pass"

    def as_row(self):
        row = {
            "check": self.check,
            "params": self.params,
            "lhs": render_value(self.lhs),
            "rhs": render_value(self.rhs),
            "factor": int(self.factor),
            "status": self.status,
            "seed": self.seed,
        }
        if self.detail:
            row["detail"] = {k: render_value(v) if not isinstance(v, (int, str, list, dict, type(None))) else v
                             for k, v in self.detail.items()}
        return row

    def to_json(self):
        return json.dumps(self.as_row(), sort_keys=True)

    def raise_on_fail(self):
        if not self.ok:
            raise MismatchReport(self)
        return self
