"""Tabular check results shared by the weights and diagnostics modules."""

import io
import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Row:
    index: object
    measured: float
    bound: float
    ratio: float
    passed: bool
    extra: dict = field(default_factory=dict)


@dataclass
class ErrorReport:
    """A labelled table of measured values against bounds."""

    label: str
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    mode: str = "absolute"

    @property
    def passed(self):
        return all(r.passed for r in self.rows)

    def add(self, index, measured, bound, passed=None, **extra):
        """Append a row; by default it passes when |measured| <= bound."""
        measured = float(measured)
        bound = float(bound)
        if passed is None:
            passed = abs(measured) <= bound
        ratio = abs(measured) / bound if bound not in (0.0,) and math.isfinite(bound) else math.nan
        self.rows.append(Row(index, measured, bound, ratio, bool(passed), dict(extra)))
        return self.rows[-1]

    def column(self, name):
        if name in ("index", "measured", "bound", "ratio", "passed"):
            return [getattr(r, name) for r in self.rows]
        return [r.extra.get(name) for r in self.rows]

    def to_csv(self):
        out = io.StringIO()
        out.write(f"#label={self.label}\n")
        out.write(f"#mode={self.mode}\n")
        for k, v in self.metadata.items():
            out.write(f"#{k}={_fmt(v)}\n")
        extras = []
        for r in self.rows:
            for k in r.extra:
                if k not in extras:
                    extras.append(k)
        out.write(",".join(["index", "measured", "bound", "ratio", "passed"] + extras) + "\n")
        for r in self.rows:
            cells = [str(r.index), _fmt(r.measured), _fmt(r.bound), _fmt(r.ratio),
                     "1" if r.passed else "0"]
            cells += [_fmt(r.extra.get(k, "")) for k in extras]
            out.write(",".join(cells) + "\n")
        return out.getvalue()


def _fmt(v):
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)
