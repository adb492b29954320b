"""Case differentiations on fractional integer variables.

A branching on variable n at fractional value q produces two child LPs
(the "cases"): one with -x_n >= -floor(q) appended and one with
x_n >= floor(q)+1.  Per case we record the delta vector -- the drop of
each parent dual value and each reduced cost -- and the objective gain.
Cases are then aggregated into a file: deltas by pointwise max, gain by
min, optionally after the normalization rescale that equalizes all case
gains at the file minimum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ContractViolation
from .model import INT_TOL, CanonRow
from .simplex import objective_gain, solve_lp

GAIN_EPS = 1e-9   # below this a case gain counts as zero progress


@dataclass
class Case:
    file_id: str
    case_id: int
    branch_row: CanonRow
    solution: object          # LpSolution of the child, or None for synthetic cases
    delta: dict               # r-index -> delta value
    gain: float


@dataclass
class File:
    id: str
    cases: list
    delta: dict               # r-index -> max over cases
    gain: float               # min over case gains
    normalized: bool
    improving: bool


@dataclass
class Fixing:
    """One case was infeasible: the opposite branch row holds permanently."""

    var: str
    row: CanonRow


def fractional_candidates(solution, canonical):
    """Integer-flagged variables whose LP value is fractional, model order."""
    if solution.status != "optimal":
        raise ContractViolation("fractional_candidates needs an optimal solution")
    out = []
    for v in canonical.variables:
        if v in canonical.integer:
            val = solution.x[v]
            if abs(val - round(val)) > INT_TOL:
                out.append(v)
    return out


def make_case_models(canonical, n, q):
    """Child models for branching variable n at fractional value q."""
    if n not in canonical.integer:
        raise ContractViolation(f"{n} is not integer-flagged")
    if abs(q - round(q)) <= INT_TOL:
        raise ContractViolation(f"{n} is integral (value {q}); nothing to branch on")
    lo = math.floor(q)
    down = CanonRow(f"branch({n}<={lo})", "ge", {n: -1.0}, -float(lo),
                    ("branch", n, "dn"))
    up = CanonRow(f"branch({n}>={lo + 1})", "ge", {n: 1.0}, float(lo + 1),
                  ("branch", n, "up"))
    return canonical.with_rows([down]), canonical.with_rows([up])


def case_delta(parent, child, canonical):
    """Delta vector: parent dual minus child dual per shared >= row, parent
    reduced cost minus child reduced cost per variable.

    The branch row's own dual is excluded from the map; it enters only
    through the child's reduced costs.
    """
    parent_rows = {r.id for r in canonical.rows}
    child_rows = set(child.y.keys())
    extra = child_rows - parent_rows
    if len(extra) > 1 or not parent_rows <= child_rows:
        raise ContractViolation(
            f"child row set differs from parent by {sorted(extra)}; expected one branch row")
    delta = {}
    for r in canonical.rows:
        if r.kind == "ge":
            delta[("row", r.id)] = parent.y.get(r.id, 0.0) - child.y.get(r.id, 0.0)
    for v in canonical.variables:
        delta[("var", v)] = parent.reduced.get(v, 0.0) - child.reduced.get(v, 0.0)
    return delta


def build_file(cases, normalize=True):
    """Aggregate >= 2 cases of one differentiation into a file."""
    if not cases:
        raise ContractViolation("build_file: empty case list")
    fid = cases[0].file_id
    if any(c.file_id != fid for c in cases):
        raise ContractViolation("build_file: cases from different files")
    gains = [c.gain for c in cases]
    gmin = min(gains)
    improving = gmin > GAIN_EPS
    out_cases = list(cases)
    normalized = False
    if normalize and improving:
        normalized = True
        out_cases = []
        for c in cases:
            scale = gmin / c.gain
            if abs(scale - 1.0) <= 1e-15:
                out_cases.append(c)
            else:
                out_cases.append(replace(
                    c,
                    delta={r: scale * d for r, d in c.delta.items()},
                    gain=gmin,
                ))
    keys = set()
    for c in out_cases:
        keys.update(c.delta)
    delta = {r: max(c.delta.get(r, 0.0) for c in out_cases) for r in keys}
    gain = gmin if improving else 0.0
    return File(id=fid, cases=out_cases, delta=delta, gain=gain,
                normalized=normalized, improving=improving)


def differentiate(canonical, parent, var, normalize=True, warm=True):
    """Solve both cases for one candidate and assemble the outcome.

    Returns a File when both children are feasible, a Fixing when exactly
    one case is infeasible, and None when the whole differentiation shows
    the root problem infeasible (both cases dead).
    """
    q = parent.x[var]
    down_model, up_model = make_case_models(canonical, var, q)
    start = parent.basis if warm else None
    down = solve_lp(down_model, start=start)
    up = solve_lp(up_model, start=start)
    if down.status == "optimal" and up.status == "optimal":
        cases = [
            Case(var, 1, down_model.rows[-1], down,
                 case_delta(parent, down, canonical), objective_gain(parent, down)),
            Case(var, 2, up_model.rows[-1], up,
                 case_delta(parent, up, canonical), objective_gain(parent, up)),
        ]
        return build_file(cases, normalize=normalize)
    if down.status == "optimal" and up.status == "infeasible":
        return Fixing(var, down_model.rows[-1])
    if up.status == "optimal" and down.status == "infeasible":
        return Fixing(var, up_model.rows[-1])
    return None
