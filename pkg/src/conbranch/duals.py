"""Explicit dual LP construction for a canonical model.

The dual of   min c'x,  a_m'x >= b_m (dual y_m >= 0),  a_m'x = b_m (free),
x_n >= 0 where flagged nonnegative, is

    max b'y   s.t.   sum_m a_{m,n} y_m <= c_n   (= c_n for free x_n).

It is delivered as a CanonicalModel in minimize form so the same simplex
solves it; callers append extra restriction rows for warm-start style
dual-space searches.
"""

from __future__ import annotations

from .model import CanonicalModel, CanonRow


def dual_var(rid):
    return f"y({rid})"


def dual_lp(canonical):
    """Build the explicit dual of a canonical model (minimize form)."""
    variables = [dual_var(r.id) for r in canonical.rows]
    nonneg = {dual_var(r.id): (r.kind == "ge") for r in canonical.rows}
    objective = {dual_var(r.id): -r.rhs for r in canonical.rows if r.rhs != 0.0}
    rows = []
    for n in canonical.variables:
        coefs = {}
        for rid, a in canonical.columns[n]:
            if a != 0.0:
                coefs[dual_var(rid)] = coefs.get(dual_var(rid), 0.0) - a
        kind = "ge" if canonical.nonneg[n] else "eq"
        c_n = canonical.objective.get(n, 0.0)
        rows.append(CanonRow(f"dfeas({n})", kind, coefs, -c_n, ("dual", n)))
    return CanonicalModel(
        name=f"dual({canonical.name})",
        variables=variables,
        objective=objective,
        integer=set(),
        nonneg=nonneg,
        rows=rows,
    )


def dual_objective(canonical, y):
    """b'y for a dual point keyed by row id."""
    return sum(r.rhs * y.get(r.id, 0.0) for r in canonical.rows if r.rhs != 0.0)


def dual_point(canonical, dual_solution):
    """Extract y (keyed by original row id) from a solved dual LP."""
    return {r.id: dual_solution.x[dual_var(r.id)] for r in canonical.rows}
