"""Primal-space cutting planes derived from improving files.

A file with aggregated deltas and gain w yields the valid inequality

    sum_m delta_m * s_m + sum_n delta_n * x_n >= w

where s_m = (row activity - rhs) is the nonnegative surplus of canonical
>= row m.  Equality rows have identically zero surplus and are omitted.
Substituting the surplus definitions gives an ordinary row over the
structural variables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NonImprovingFile
from .model import CanonRow

COEF_TOL = 1e-12


@dataclass
class BranchingCut:
    file_id: str
    slack_coefs: dict        # canonical >= row id -> coefficient
    var_coefs: dict          # var id -> coefficient
    rhs: float               # the file gain


@dataclass
class ExpandedCut:
    """Pure-variable form of a branching cut, canonical >= orientation."""

    file_id: str
    coefs: dict
    rhs: float

    def as_canon_row(self, tag=""):
        return CanonRow(f"cut({self.file_id}{tag})", "ge", dict(self.coefs),
                        self.rhs, ("cut", self.file_id))

    def original_form(self, canonical):
        """(coefs, kind, rhs) in the presentation of the original sense:
        maximize inputs read more naturally as <= rows."""
        if canonical.maximize_origin:
            return ({n: -a for n, a in self.coefs.items()}, "le", -self.rhs)
        return (dict(self.coefs), "ge", self.rhs)

    def evaluate(self, point):
        return sum(a * point.get(n, 0.0) for n, a in self.coefs.items())


@dataclass
class CutVerdict:
    valid: bool
    violators: list


def generate_cut(file, canonical):
    """Slack-form cut from an improving file."""
    if file.gain <= 0.0:
        raise NonImprovingFile(f"file {file.id} has no gain; no cut exists")
    slack = {}
    for r in canonical.rows:
        if r.kind != "ge":
            continue
        d = file.delta.get(("row", r.id), 0.0)
        if abs(d) > COEF_TOL:
            slack[r.id] = d
    var = {}
    for n in canonical.variables:
        d = file.delta.get(("var", n), 0.0)
        if abs(d) > COEF_TOL:
            var[n] = d
    return BranchingCut(file.id, slack, var, file.gain)


def expand_cut(cut, canonical):
    """Substitute s_m = activity_m - b_m to get a pure-variable >= row."""
    coefs = dict(cut.var_coefs)
    rhs = cut.rhs
    for rid, d in cut.slack_coefs.items():
        row = canonical.row(rid)
        for n, a in row.coefs.items():
            coefs[n] = coefs.get(n, 0.0) + d * a
        rhs += d * row.rhs
    coefs = {n: a for n, a in coefs.items() if abs(a) > COEF_TOL}
    return ExpandedCut(cut.file_id, coefs, rhs)


def verify_cut(cut, canonical, points, tol=1e-9):
    """Check the expanded cut against integer-feasible points."""
    expanded = cut if isinstance(cut, ExpandedCut) else expand_cut(cut, canonical)
    violators = [p for p in points if expanded.evaluate(p) < expanded.rhs - tol]
    return CutVerdict(not violators, violators)
