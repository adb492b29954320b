"""Brute-force ground truth for desk-scale validation.

Enumerates every integer assignment inside the variable bounds; mixed
instances get their continuous part solved by the simplex per assignment.
Objectives are reported in the model's original sense.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import LatticeTooLarge, ModelError
from .model import FEAS_TOL, Model, Row, Variable, canonicalize
from .simplex import solve_lp

LATTICE_LIMIT = 2 ** 20


@dataclass
class OracleResult:
    optimum: float           # original sense; None when infeasible
    argmin: dict
    enumerated: int

    @property
    def feasible(self):
        return self.optimum is not None


def _integer_ranges(model):
    ranges = []
    size = 1
    for v in model.variables:
        if not v.integer:
            continue
        if not (math.isfinite(v.lb) and math.isfinite(v.ub)):
            raise ModelError(f"integer variable {v.id} needs finite bounds")
        lo, hi = math.ceil(v.lb - FEAS_TOL), math.floor(v.ub + FEAS_TOL)
        width = max(0, hi - lo + 1)
        size *= width
        if size > LATTICE_LIMIT:
            raise LatticeTooLarge(f"more than {LATTICE_LIMIT} integer assignments")
        ranges.append((v.id, range(lo, hi + 1)))
    return ranges


def _row_ok(row, point):
    act = sum(a * point[n] for n, a in row.coefs.items())
    if row.kind == "ge":
        return act >= row.rhs - FEAS_TOL
    if row.kind == "le":
        return act <= row.rhs + FEAS_TOL
    return abs(act - row.rhs) <= FEAS_TOL


def _continuous_submodel(model, fixed):
    """Model over the continuous variables with the integers substituted."""
    cont = [v for v in model.variables if not v.integer]
    rows = []
    for r in model.rows:
        coefs = {n: a for n, a in r.coefs.items() if n not in fixed}
        shift = sum(a * fixed[n] for n, a in r.coefs.items() if n in fixed)
        rows.append(Row(r.id, r.kind, coefs, r.rhs - shift))
    return Model(model.name, model.sense, cont, rows)


def _iterate(model):
    ranges = _integer_ranges(model)
    ids = [n for n, _ in ranges]
    has_continuous = any(not v.integer for v in model.variables)
    count = 0
    sign = -1.0 if model.sense == "max" else 1.0
    obj = {v.id: v.obj for v in model.variables}
    int_rows = [r for r in model.rows
                if all(n in set(ids) for n in r.coefs)] if has_continuous else model.rows
    for combo in itertools.product(*(rng for _, rng in ranges)):
        count += 1
        point = dict(zip(ids, combo))
        if not all(_row_ok(r, point) for r in int_rows):
            continue
        if has_continuous:
            sub = _continuous_submodel(model, point)
            sol = solve_lp(canonicalize(sub))
            if sol.status != "optimal":
                continue
            full = dict(point)
            full.update(sol.x)
            value = sum(obj[n] * full[n] for n in obj)
            yield full, value, count
        else:
            value = sum(obj[n] * point[n] for n in obj)
            yield dict(point), value, count
    # Ensure the caller can learn the enumeration size even with no hits.
    yield None, sign * math.inf, count


def brute_force_optimum(model):
    """Exact optimum over all integer assignments (original sense)."""
    best = None
    best_val = math.inf if model.sense == "min" else -math.inf
    better = (lambda a, b: a < b) if model.sense == "min" else (lambda a, b: a > b)
    count = 0
    for point, value, count in _iterate(model):
        if point is not None and better(value, best_val):
            best, best_val = point, value
    if best is None:
        return OracleResult(None, None, count)
    return OracleResult(best_val, best, count)


def enumerate_integer_feasible(model):
    """All integer-feasible points, deterministic order."""
    points = []
    for point, _, _ in _iterate(model):
        if point is not None:
            points.append(point)
    return points
