"""Solution-shaping passes.

``integrity_search`` iterates over the optimal face of the LP relaxation,
freezing the objective and re-optimizing a coefficient pattern that
rewards variables for settling on integers.

``refined_case_solve`` re-solves one branch child in dual space with a
distance penalty so the returned dual point eats less of the combining
stock per unit of gain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .branching import Case, case_delta
from .duals import dual_lp, dual_objective, dual_point, dual_var
from .errors import ConbranchError, ContractViolation
from .model import INT_TOL, OPT_TOL, CanonRow
from .simplex import solve_lp

D_FLOOR = 0.01      # lower limit for the distance weights
D_EPS = 1e-9


@dataclass
class DistanceWeights:
    values: dict             # r-index -> d_r >= 0
    floor: float = D_FLOOR

    def __getitem__(self, r):
        return self.values[r]


def distance_weights(l, floor=D_FLOOR):
    """d_r = max(1/l_r, floor) for positive stock, the floor otherwise."""
    values = {}
    for r, stock in l.items():
        if stock > D_EPS:
            values[r] = max(1.0 / stock, floor)
        else:
            values[r] = floor
    return DistanceWeights(values, floor)


def case_distance(delta, weights):
    """D = sum_r d_r * max(0, delta_r): stock eaten by one case."""
    return sum(weights.values.get(r, weights.floor) * d
               for r, d in delta.items() if d > 0.0)


def integrity_objective(x0, canonical, literal=False):
    """Objective coefficients that push integer variables toward integers.

    The default coefficient for an integer variable with fractional part f
    is 1 - 2f (variables past one half get pushed up).  ``literal=True``
    selects the uniformly-downward variant 1 + 2f for comparison.
    """
    coefs = {}
    for n in canonical.variables:
        if n not in canonical.integer:
            coefs[n] = 0.0
            continue
        frac = x0[n] - math.floor(x0[n])
        coefs[n] = (1.0 + 2.0 * frac) if literal else (1.0 - 2.0 * frac)
    return coefs


def _fractional_count(x, canonical):
    return sum(1 for n in canonical.integer
               if abs(x[n] - round(x[n])) > INT_TOL)


def integrity_search(canonical, x0, max_iters, eps=0.0, literal=False):
    """Walk the optimal face reducing the number of fractional integers.

    Stops when the fractional count stops decreasing or after max_iters;
    returns the assignment with the fewest fractional variables seen.
    """
    omega = sum(canonical.objective.get(n, 0.0) * x0[n] for n in canonical.variables)
    best = dict(x0)
    best_count = _fractional_count(x0, canonical)
    current = dict(x0)
    for _ in range(max_iters):
        freeze = CanonRow("freeze(obj)", "eq", dict(canonical.objective),
                          omega, ("freeze",))
        boxes = []
        for n in canonical.integer:
            lo = math.floor(current[n] - eps)
            boxes.append(CanonRow(f"box-lo({n})", "ge", {n: 1.0}, float(lo),
                                  ("box", n)))
            boxes.append(CanonRow(f"box-hi({n})", "ge", {n: -1.0}, -float(lo + 1),
                                  ("box", n)))
        restricted = canonical.with_rows([freeze] + boxes)
        restricted.objective = integrity_objective(current, canonical, literal=literal)
        sol = solve_lp(restricted)
        if sol.status != "optimal":
            raise ConbranchError(
                "integrity search: restricted LP not optimal "
                f"({sol.status}); boxes are built around the current point")
        count = _fractional_count(sol.x, canonical)
        if count < best_count:
            best = dict(sol.x)
            best_count = count
            current = dict(sol.x)
        else:
            break
    return best


def refined_case_solve(parent, child_model, weights, canonical,
                       file_id="file", case_id=1, iterations=1):
    """Solve one branch child, then re-solve it in dual space with the
    distance-penalized objective; gain per unit of eaten stock never drops.
    """
    first = solve_lp(child_model, start=parent.basis)
    if first.status != "optimal":
        raise ContractViolation(f"child LP is {first.status}; nothing to refine")
    branch_row = child_model.rows[-1]
    delta = case_delta(parent, first, canonical)
    gain = first.objective - parent.objective
    case = Case(file_id, case_id, branch_row, first, delta, gain)
    if gain <= OPT_TOL:
        return case
    for _ in range(iterations):
        d0 = case_distance(case.delta, weights)
        if d0 <= D_EPS:
            return case
        refined = _solve_penalized(parent, child_model, canonical, weights,
                                   case.gain, d0)
        if refined is None:
            return case
        y, new_gain = refined
        delta = {}
        for r in canonical.rows:
            if r.kind == "ge":
                delta[("row", r.id)] = parent.y.get(r.id, 0.0) - y.get(r.id, 0.0)
        for n in canonical.variables:
            delta[("var", n)] = (parent.reduced.get(n, 0.0)
                                 - child_model.reduced_cost(n, y))
        case = Case(file_id, case_id, branch_row, None, delta, new_gain)
    return case


def _solve_penalized(parent, child_model, canonical, weights, gain0, d0):
    """Maximize (dual gain) - (gain0/d0) * D over the child's dual polytope."""
    lp = dual_lp(child_model)
    omega0 = parent.objective
    extra = [CanonRow(
        "member(gain)", "ge",
        {dual_var(r.id): r.rhs for r in child_model.rows if r.rhs != 0.0},
        omega0, ("member",))]
    z_vars = []
    for r in canonical.rows:
        if r.kind != "ge":
            continue
        z = f"z(row:{r.id})"
        z_vars.append((z, ("row", r.id)))
        # z >= parent_y - y'
        extra.append(CanonRow(f"zdom(row:{r.id})", "ge",
                              {z: 1.0, dual_var(r.id): 1.0},
                              parent.y.get(r.id, 0.0), ("zdom",)))
    for n in canonical.variables:
        z = f"z(var:{n})"
        z_vars.append((z, ("var", n)))
        # z >= l_n - r_n(y')  <=>  z - sum a y' >= l_n - c_n
        coefs = {z: 1.0}
        for rid, a in child_model.columns[n]:
            if a != 0.0:
                coefs[dual_var(rid)] = coefs.get(dual_var(rid), 0.0) - a
        extra.append(CanonRow(
            f"zdom(var:{n})", "ge", coefs,
            parent.reduced.get(n, 0.0) - child_model.objective.get(n, 0.0),
            ("zdom",)))
    lp = lp.with_rows(extra)
    lp.variables = lp.variables + [z for z, _ in z_vars]
    penalty = gain0 / d0
    objective = dict(lp.objective)
    for z, r in z_vars:
        lp.nonneg[z] = True
        objective[z] = penalty * weights.values.get(r, weights.floor)
    lp.objective = objective
    lp.__post_init__()
    sol = solve_lp(lp)
    if sol.status != "optimal":
        return None
    y = dual_point(child_model, sol)
    new_gain = dual_objective(child_model, y) - omega0
    return y, new_gain
