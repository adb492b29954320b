"""Combining LPs: merge many case differentiations into one improved bound.

Four routes are provided:

* the simple weighted form (one weight per file, stock rows per r-index),
* the complex form with several columns per file plus gain-free anchor
  columns generated from alternative optimal root duals,
* the sequential form that restricts every child's dual space by the stock
  already consumed, so the accepted files combine at full weight, and
* the single huge LP whose variables include the root dual point and every
  case dual point, each feasible point of which certifies a bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .branching import Case, File, build_file
from .duals import dual_lp, dual_objective, dual_point, dual_var
from .errors import SizeLimitExceeded
from .model import OPT_TOL, CanonicalModel, CanonRow
from .simplex import solve_lp

DROP_TOL = 1e-12   # a stock row with no positive coefficient can never bind
ACTIVE_TOL = 1e-7


@dataclass
class CombineResult:
    lambdas: dict            # column key -> weight
    improvement: float
    bound: float             # canonical (minimize) sense: omega_0 + improvement
    degree: float            # sum of weights
    files: list = None       # files actually used, when the route builds them


@dataclass
class AnchorColumn:
    """Gain-free column from an alternative optimal root dual point."""

    index: int
    y: dict
    delta: dict


def _r_label(r):
    return f"{r[0]}:{r[1]}"


def _stock_rows(columns, l):
    """Rows  sum_k coef_k * lam_k <= l_r  in canonical >= form, with rows
    whose coefficients are all nonpositive dropped."""
    rows = []
    for r, stock in l.items():
        coefs = {}
        keep = False
        for key, delta in columns:
            d = delta.get(r, 0.0)
            if d != 0.0:
                coefs[key] = -d
            if d > DROP_TOL:
                keep = True
        if keep:
            rows.append(CanonRow(f"stock({_r_label(r)})", "ge", coefs, -stock,
                                 ("stock", r)))
    return rows


def _lp_from_columns(name, columns, objective):
    variables = [key for key, _ in columns]
    return CanonicalModel(
        name=name,
        variables=variables,
        objective={k: -w for k, w in objective.items() if w != 0.0},
        integer=set(),
        nonneg={v: True for v in variables},
        rows=[],
    )


def build_combining_lp(files, l):
    """The simple-form LP: one weight per improving file, maximize the
    weighted gains subject to the stock constraints."""
    columns = [(f"lam({f.id})", f.delta) for f in files]
    lp = _lp_from_columns("combine", columns, {f"lam({f.id})": f.gain for f in files})
    lp.rows.extend(_stock_rows(columns, l))
    lp.__post_init__()
    return lp


def combine(files, l, omega0):
    """Solve the simple combining LP and report weights, bound and degree."""
    files = [f for f in files if f.improving]
    if not files:
        return CombineResult({}, 0.0, omega0, 0.0, [])
    lp = build_combining_lp(files, l)
    sol = solve_lp(lp)
    lambdas = {f.id: sol.x[f"lam({f.id})"] for f in files}
    improvement = max(0.0, -sol.objective)
    return CombineResult(lambdas, improvement, omega0 + improvement,
                         sum(lambdas.values()), files)


def combine_complex(file_columns, anchors, l, omega0):
    """Complex form: several columns per file plus gain-free anchors."""
    columns = []
    objective = {}
    for fid, cols in file_columns.items():
        for k, f in enumerate(cols):
            if not f.improving:
                continue
            key = f"lam({fid},{k})"
            columns.append((key, f.delta))
            objective[key] = f.gain
    for a in anchors:
        key = f"lam0({a.index})"
        columns.append((key, a.delta))
        objective[key] = 0.0
    if not columns:
        return CombineResult({}, 0.0, omega0, 0.0, [])
    lp = _lp_from_columns("combine-complex", columns, objective)
    lp.rows.extend(_stock_rows(columns, l))
    lp.__post_init__()
    sol = solve_lp(lp)
    lambdas = {}
    for fid, cols in file_columns.items():
        for k, f in enumerate(cols):
            if f.improving:
                lambdas[(fid, k)] = sol.x[f"lam({fid},{k})"]
    for a in anchors:
        lambdas[("anchor", a.index)] = sol.x[f"lam0({a.index})"]
    improvement = max(0.0, -sol.objective)
    degree = sum(w for key, w in lambdas.items() if key[0] != "anchor")
    return CombineResult(lambdas, improvement, omega0 + improvement, degree, None)


def merge_columns(file_columns, result):
    """Merge the active columns of each file into one (convexity of the
    deltas lets the case displacements be summed case-wise)."""
    merged = {}
    for fid, cols in file_columns.items():
        active = [(k, result.lambdas.get((fid, k), 0.0)) for k in range(len(cols))]
        active = [(k, w) for k, w in active if w > ACTIVE_TOL]
        if len(active) <= 1:
            merged[fid] = cols[active[0][0]] if active else cols[0]
            continue
        case_ids = [c.case_id for c in cols[active[0][0]].cases]
        cases = []
        for j, cid in enumerate(case_ids):
            delta = {}
            gain = 0.0
            for k, w in active:
                case = cols[k].cases[j]
                gain += w * case.gain
                for r, d in case.delta.items():
                    delta[r] = delta.get(r, 0.0) + w * d
            cases.append(Case(fid, cid, cols[active[0][0]].cases[j].branch_row,
                              None, delta, gain))
        merged[fid] = build_file(cases, normalize=False)
    return merged


def anchor_columns(canonical, root, count, seed=0):
    """Alternative optimal root duals found by random objectives over the
    optimal face of the explicit dual LP."""
    if count <= 0:
        return []
    base = dual_lp(canonical)
    omega0 = root.objective
    freeze = CanonRow("freeze(obj)", "eq",
                      {dual_var(r.id): r.rhs for r in canonical.rows if r.rhs != 0.0},
                      omega0, ("freeze",))
    rng = np.random.default_rng(seed)
    anchors = []
    for k in range(count):
        lp = base.with_rows([freeze])
        lp.objective = {v: float(rng.uniform(-1.0, 1.0)) for v in lp.variables}
        sol = solve_lp(lp)
        if sol.status != "optimal":
            continue
        y = dual_point(canonical, sol)
        delta = {}
        for r in canonical.rows:
            if r.kind == "ge":
                delta[("row", r.id)] = root.y.get(r.id, 0.0) - y.get(r.id, 0.0)
        for n in canonical.variables:
            delta[("var", n)] = root.reduced.get(n, 0.0) - canonical.reduced_cost(n, y)
        anchors.append(AnchorColumn(k, y, delta))
    return anchors


def _branch_rows(n, q):
    lo = math.floor(q)
    down = CanonRow(f"branch({n}<={lo})", "ge", {n: -1.0}, -float(lo),
                    ("branch", n, "dn"))
    up = CanonRow(f"branch({n}>={lo + 1})", "ge", {n: 1.0}, float(lo + 1),
                  ("branch", n, "up"))
    return down, up


def sequential_combine(canonical, root, candidates, l, omega0, normalize=True):
    """Process candidates in order; each child LP is solved in dual space
    with the remaining stock as extra restrictions, so every accepted file
    enters at weight one."""
    stock = dict(l)
    lambdas = {}
    files = []
    total = 0.0
    for var in candidates:
        q = root.x[var]
        if abs(q - round(q)) <= 1e-6:
            continue
        cases = []
        ok = True
        for j, branch in enumerate(_branch_rows(var, q), start=1):
            child = canonical.with_rows([branch])
            lp = dual_lp(child)
            extra = []
            # Gain may not fall below the root objective.
            extra.append(CanonRow(
                "member(gain)", "ge",
                {dual_var(r.id): r.rhs for r in child.rows if r.rhs != 0.0},
                omega0, ("member",)))
            for r in canonical.rows:
                if r.kind != "ge":
                    continue
                floor_val = root.y.get(r.id, 0.0) - stock[("row", r.id)]
                if floor_val > OPT_TOL:
                    extra.append(CanonRow(f"keep(row:{r.id})", "ge",
                                          {dual_var(r.id): 1.0}, floor_val,
                                          ("keep", r.id)))
            for n in canonical.variables:
                floor_val = root.reduced.get(n, 0.0) - stock[("var", n)]
                if floor_val > OPT_TOL:
                    coefs = {}
                    for rid, a in child.columns[n]:
                        if a != 0.0:
                            coefs[dual_var(rid)] = coefs.get(dual_var(rid), 0.0) - a
                    c_n = child.objective.get(n, 0.0)
                    extra.append(CanonRow(f"keep(var:{n})", "ge", coefs,
                                          floor_val - c_n, ("keep", n)))
            sol = solve_lp(lp.with_rows(extra))
            if sol.status != "optimal":
                ok = False
                break
            y = dual_point(child, sol)
            gain = dual_objective(child, y) - omega0
            delta = {}
            for r in canonical.rows:
                if r.kind == "ge":
                    delta[("row", r.id)] = root.y.get(r.id, 0.0) - y.get(r.id, 0.0)
            for n in canonical.variables:
                delta[("var", n)] = (root.reduced.get(n, 0.0)
                                     - child.reduced_cost(n, y))
            cases.append(Case(var, j, branch, None, delta, gain))
        if not ok:
            continue
        f = build_file(cases, normalize=normalize)
        if not f.improving:
            continue
        files.append(f)
        lambdas[f.id] = 1.0
        total += f.gain
        for r, d in f.delta.items():
            stock[r] -= d
    return CombineResult(lambdas, total, omega0 + total, float(len(files)), files)


def build_huge_lp(canonical, differentiations, var_limit=20000):
    """One LP over the root dual point, all case dual points, the per-file
    delta and gain variables, and the stock constraints tying them together.

    differentiations: sequence of (variable id, floor value).
    """
    ge_rows = [r for r in canonical.rows if r.kind == "ge"]
    r_space = [("row", r.id) for r in ge_rows]
    r_space += [("var", n) for n in canonical.variables]

    n_vars = len(canonical.rows)
    cases = []
    for i, (var, lo) in enumerate(differentiations):
        down, up = _branch_rows(var, lo + 0.5)
        for j, branch in ((1, down), (2, up)):
            cases.append((i, j, var, branch))
            n_vars += len(canonical.rows) + 1
    n_vars += len(differentiations) * (len(r_space) + 1)
    if n_vars > var_limit:
        raise SizeLimitExceeded(
            f"huge LP would have {n_vars} variables (limit {var_limit})")

    def y0(rid):
        return f"y0({rid})"

    def yc(i, j, rid):
        return f"y[{i},{j}]({rid})"

    def dv(i, r):
        return f"D[{i}]({_r_label(r)})"

    def wv(i):
        return f"W[{i}]"

    variables = []
    nonneg = {}
    for r in canonical.rows:
        variables.append(y0(r.id))
        nonneg[y0(r.id)] = r.kind == "ge"
    for i, j, var, branch in cases:
        for r in canonical.rows:
            variables.append(yc(i, j, r.id))
            nonneg[yc(i, j, r.id)] = r.kind == "ge"
        variables.append(yc(i, j, branch.id))
        nonneg[yc(i, j, branch.id)] = True
    for i in range(len(differentiations)):
        for r in r_space:
            variables.append(dv(i, r))
            nonneg[dv(i, r)] = False
        variables.append(wv(i))
        nonneg[wv(i)] = True

    rows = []
    # Dual feasibility of the root point.
    for n in canonical.variables:
        coefs = {y0(rid): -a for rid, a in canonical.columns[n] if a != 0.0}
        kind = "ge" if canonical.nonneg[n] else "eq"
        rows.append(CanonRow(f"dfeas0({n})", kind, coefs,
                             -canonical.objective.get(n, 0.0), ("huge",)))
    for i, j, var, branch in cases:
        # Dual feasibility of the case point (branch row included).
        for n in canonical.variables:
            coefs = {yc(i, j, rid): -a for rid, a in canonical.columns[n] if a != 0.0}
            if n == var and branch.coefs.get(n, 0.0) != 0.0:
                coefs[yc(i, j, branch.id)] = -branch.coefs[n]
            kind = "ge" if canonical.nonneg[n] else "eq"
            rows.append(CanonRow(f"dfeas[{i},{j}]({n})", kind, coefs,
                                 -canonical.objective.get(n, 0.0), ("huge",)))
        bc = {yc(i, j, r.id): r.rhs for r in canonical.rows if r.rhs != 0.0}
        if branch.rhs != 0.0:
            bc[yc(i, j, branch.id)] = branch.rhs
        # Case objective at least the root objective.
        gcoefs = dict(bc)
        for r in canonical.rows:
            if r.rhs != 0.0:
                gcoefs[y0(r.id)] = gcoefs.get(y0(r.id), 0.0) - r.rhs
        rows.append(CanonRow(f"gain[{i},{j}]", "ge", gcoefs, 0.0, ("huge",)))
        # File gain capped by every case gain.
        wcoefs = dict(gcoefs)
        wcoefs[wv(i)] = -1.0
        rows.append(CanonRow(f"wcap[{i},{j}]", "ge", wcoefs, 0.0, ("huge",)))
        # File delta dominates the case delta per r-index.
        for r in ge_rows:
            rows.append(CanonRow(
                f"dom[{i},{j}](row:{r.id})", "ge",
                {dv(i, ("row", r.id)): 1.0, y0(r.id): -1.0, yc(i, j, r.id): 1.0},
                0.0, ("huge",)))
        # D_i^n >= r_n(y0) - r_n^child(y) = (sum_m a y_c + a_br y_br) - sum_m a y0
        for n in canonical.variables:
            coefs = {dv(i, ("var", n)): 1.0}
            for rid, a in canonical.columns[n]:
                if a != 0.0:
                    coefs[yc(i, j, rid)] = coefs.get(yc(i, j, rid), 0.0) - a
                    coefs[y0(rid)] = coefs.get(y0(rid), 0.0) + a
            if n == var and branch.coefs.get(n, 0.0) != 0.0:
                key = yc(i, j, branch.id)
                coefs[key] = coefs.get(key, 0.0) - branch.coefs[n]
            rows.append(CanonRow(f"dom[{i},{j}](var:{n})", "ge", coefs, 0.0,
                                 ("huge",)))
    # Stock: the file deltas together never exceed what the root point holds.
    nfiles = len(differentiations)
    for r in ge_rows:
        coefs = {y0(r.id): 1.0}
        for i in range(nfiles):
            coefs[dv(i, ("row", r.id))] = -1.0
        rows.append(CanonRow(f"stock(row:{r.id})", "ge", coefs, 0.0, ("huge",)))
    for n in canonical.variables:
        coefs = {}
        for rid, a in canonical.columns[n]:
            if a != 0.0:
                coefs[y0(rid)] = coefs.get(y0(rid), 0.0) - a
        for i in range(nfiles):
            coefs[dv(i, ("var", n))] = -1.0
        rows.append(CanonRow(f"stock(var:{n})", "ge", coefs,
                             -canonical.objective.get(n, 0.0), ("huge",)))

    objective = {}
    for r in canonical.rows:
        if r.rhs != 0.0:
            objective[y0(r.id)] = -r.rhs
    for i in range(nfiles):
        objective[wv(i)] = -1.0

    return CanonicalModel(
        name=f"huge({canonical.name})",
        variables=variables,
        objective=objective,
        integer=set(),
        nonneg=nonneg,
        rows=rows,
    )


def combine_huge(canonical, differentiations, omega0, var_limit=20000):
    """Build and solve the huge LP; its optimum is the best combined bound."""
    if not differentiations:
        return CombineResult({}, 0.0, omega0, 0.0, [])
    lp = build_huge_lp(canonical, differentiations, var_limit=var_limit)
    sol = solve_lp(lp)
    if sol.status != "optimal":
        return CombineResult({}, 0.0, omega0, 0.0, [])
    bound = -sol.objective
    improvement = max(0.0, bound - omega0)
    return CombineResult({}, improvement, omega0 + improvement, 0.0, [])
