"""Dense two-phase primal simplex over CanonicalModel.

Returns primal values, row duals, reduced costs and a reusable basis.
Free variables (original lower bound below zero) are split into a
positive and a negative part internally; their reduced cost is pinned to
zero at any dual-feasible point, which is exactly what the theory expects
for a variable without a sign restriction.

Warm starts take a parent basis, patch rows that are new relative to the
basis's origin with their surplus columns, and repair primal infeasibility
with a single artificial column before phase 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, SolverFailure
from .model import FEAS_TOL, OPT_TOL

PIVOT_TOL = 1e-10


@dataclass
class LpSolution:
    status: str          # 'optimal' | 'infeasible' | 'unbounded'
    x: dict
    y: dict              # row id -> dual value (canonical orientation)
    reduced: dict        # var id -> reduced cost
    objective: float
    basis: tuple         # column identities of the final basis
    iterations: int = 0


@dataclass(frozen=True)
class Basis:
    """Ordered basic column identities; cardinality equals the row count."""

    columns: tuple

    def __iter__(self):
        return iter(self.columns)

    def __len__(self):
        return len(self.columns)


class _Tableau:
    """Full-tableau simplex state for one canonical model."""

    def __init__(self, canonical):
        self.model = canonical
        rows = canonical.rows
        self.m = len(rows)
        self.row_ids = [r.id for r in rows]

        # Column identities: structural (with splits), surpluses, artificials.
        cols = []
        self.var_cols = {}
        for v in canonical.variables:
            self.var_cols[v] = len(cols)
            cols.append(("x", v))
            if not canonical.nonneg[v]:
                cols.append(("xneg", v))
        self.surplus_cols = {}
        for r in rows:
            if r.kind == "ge":
                self.surplus_cols[r.id] = len(cols)
                cols.append(("s", r.id))
        self.art_cols = {}
        for r in rows:
            self.art_cols[r.id] = len(cols)
            cols.append(("a", r.id))
        self.cols = cols
        self.col_pos = {c: i for i, c in enumerate(cols)}
        n = len(cols)

        A = np.zeros((self.m, n))
        b = np.zeros(self.m)
        vpos = {v: i for i, v in enumerate(canonical.variables)}
        for i, r in enumerate(rows):
            b[i] = r.rhs
            for v, a in r.coefs.items():
                j = self.var_cols[v]
                A[i, j] += a
                if cols[j + 1][0] == "xneg" and cols[j + 1][1] == v:
                    A[i, j + 1] -= a
            if r.kind == "ge":
                A[i, self.surplus_cols[r.id]] = -1.0
        # Flip rows so b >= 0; artificial columns form the identity afterwards.
        self.rowsign = np.where(b < 0, -1.0, 1.0)
        A *= self.rowsign[:, None]
        b *= self.rowsign
        for i, r in enumerate(rows):
            A[i, self.art_cols[r.id]] = 1.0
        self.A = A
        self.b = b

        c = np.zeros(n)
        for v, coef in canonical.objective.items():
            j = self.var_cols[v]
            c[j] = coef
            if cols[j + 1][0] == "xneg" and cols[j + 1][1] == v:
                c[j + 1] = -coef
        self.cost = c


def _pivot(T, xb, basis, k, j):
    piv = T[k, j]
    T[k, :] /= piv
    xb[k] /= piv
    col = T[:, j].copy()
    col[k] = 0.0
    T -= np.outer(col, T[k, :])
    xb -= col * xb[k]
    basis[k] = j


REFACTOR_EVERY = 100


def _run(T, xb, basis, cost, allow, max_iter, refactor=None):
    """Primal simplex to optimality. Returns ('optimal'|'unbounded', iters).

    ``refactor(T, xb, basis)`` rebuilds the tableau from the original data
    in place; it is invoked periodically and before any terminal verdict,
    because accumulated pivot error can otherwise fabricate rays.
    """
    m, n = T.shape
    stall_limit = 3 * (m + n)
    stall = 0
    last = np.inf
    it = 0
    since_refactor = 0
    fresh = refactor is None
    banned = np.zeros(n, dtype=bool)   # zero-cost rays skipped at this basis
    while True:
        if it >= max_iter:
            raise SolverFailure("iteration limit reached", iterations=it)
        if refactor is not None and since_refactor >= REFACTOR_EVERY:
            fresh = refactor(T, xb, basis)
            since_refactor = 0
        cb = cost[basis]
        r = cost - cb @ T
        r[basis] = 0.0
        cand = np.where(allow & ~banned & (r < -OPT_TOL * 0.1))[0]
        if cand.size == 0:
            if not fresh and refactor(T, xb, basis):
                fresh = True
                since_refactor = 0
                continue
            return "optimal", it
        if stall <= stall_limit:
            j = cand[np.argmin(r[cand])]
        else:
            j = cand[0]  # Bland's rule: lowest eligible index
        col = T[:, j]
        pos = np.where(col > PIVOT_TOL)[0]
        if pos.size == 0:
            if not fresh and refactor(T, xb, basis):
                fresh = True
                since_refactor = 0
                continue
            if r[j] < -1e-6:
                return "unbounded", it
            # A ray whose cost is zero up to roundoff: skip the column
            # until the basis changes instead of declaring unboundedness.
            banned[j] = True
            continue
        ratios = xb[pos] / col[pos]
        best = ratios.min()
        ties = pos[ratios <= best + FEAS_TOL]
        # Leaving tie-break: smallest basic column index (anti-cycling with Bland).
        k = ties[np.argmin(np.asarray(basis)[ties])]
        _pivot(T, xb, basis, k, j)
        banned[:] = False
        fresh = refactor is None
        it += 1
        since_refactor += 1
        obj = cost[basis] @ xb
        if obj < last - 1e-12:
            stall = 0
        else:
            stall += 1
        last = obj


def _make_refactor(tab):
    """In-place tableau rebuild from the original matrix for a given basis."""
    def refactor(T, xb, basis):
        B = tab.A[:, basis]
        try:
            Binv = np.linalg.inv(B)
        except np.linalg.LinAlgError:
            return False
        if not np.isfinite(Binv).all():
            return False
        new_xb = Binv @ tab.b
        new_xb[(new_xb < 0.0) & (new_xb > -1e-7)] = 0.0
        if new_xb.min() < 0.0:
            return False   # basis is not primal feasible for the exact data
        T[:] = Binv @ tab.A
        xb[:] = new_xb
        return True
    return refactor


def _drive_out_artificials(T, xb, basis, art_set, allow):
    for k in range(len(basis)):
        if basis[k] in art_set and abs(xb[k]) <= 1e-7:
            row = T[k, :]
            cands = np.where(allow & (np.abs(row) > 1e-7))[0]
            cands = [j for j in cands if j not in art_set]
            if cands:
                _pivot(T, xb, basis, k, cands[0])
            # else: redundant row; the artificial stays basic at zero.


def solve_lp(canonical, start=None, max_iter=None):
    """Solve the canonical LP, optionally warm-starting from a parent basis."""
    tab = _Tableau(canonical)
    m, n = tab.A.shape
    if max_iter is None:
        max_iter = 5000 + 60 * (m + n)

    art = np.zeros(n, dtype=bool)
    for j in tab.art_cols.values():
        art[j] = True
    art_set = set(tab.art_cols.values())
    refactor = _make_refactor(tab)

    T = None
    warm_ok = False
    if start is not None:
        cols = list(start.columns if isinstance(start, Basis) else start)
        if len(cols) <= m and all(c in tab.col_pos for c in cols):
            # Patch rows appended after the basis's origin with their own
            # surplus (>=) or artificial (=) column.
            extra = canonical.rows[len(cols):]
            patched = list(cols)
            for r in extra:
                ident = ("s", r.id) if r.kind == "ge" else ("a", r.id)
                patched.append(ident)
            if len(patched) == m:
                idx = [tab.col_pos[c] for c in patched]
                B = tab.A[:, idx]
                try:
                    Binv = np.linalg.inv(B)
                except np.linalg.LinAlgError:
                    Binv = None
                if Binv is not None and np.isfinite(Binv).all():
                    T = Binv @ tab.A
                    xb = Binv @ tab.b
                    basis = list(idx)
                    warm_ok = True

    iterations = 0
    if warm_ok:
        if xb.min() < -FEAS_TOL:
            # Single-artificial repair: one extra column fixes all negatives.
            d = np.where(xb < -FEAS_TOL, -1.0, 0.0)
            T = np.hstack([T, d[:, None]])
            q = T.shape[1] - 1
            allow = np.zeros(T.shape[1], dtype=bool)
            allow[:n] = ~art
            allow[q] = True
            k = int(np.argmin(xb))
            _pivot(T, xb, basis, k, q)
            cost1 = np.zeros(T.shape[1])
            cost1[q] = 1.0
            try:
                status, it1 = _run(T, xb, basis, cost1, allow, max_iter)
            except SolverFailure:
                status, it1 = "failed", 0
            iterations += it1
            if status != "optimal" or cost1[basis] @ xb > 1e-7:
                warm_ok = False  # fall back to a cold solve
            else:
                if q in basis:
                    k = basis.index(q)
                    row = T[k, :]
                    cands = [j for j in np.where(np.abs(row) > 1e-7)[0]
                             if j < n and not art[j]]
                    if cands:
                        _pivot(T, xb, basis, k, cands[0])
                if q in basis:
                    warm_ok = False
                else:
                    T = T[:, :n]
        if warm_ok:
            allow = ~art
            cost = tab.cost
            try:
                status, it2 = _run(T, xb, basis, cost, allow, max_iter,
                                   refactor=refactor)
            except SolverFailure:
                warm_ok = False
            else:
                iterations += it2
                if status == "unbounded":
                    return LpSolution("unbounded", {}, {}, {}, -np.inf,
                                      (), iterations)
    if not warm_ok:
        # Cold start: phase 1 from the all-artificial basis.
        T = tab.A.copy()
        xb = tab.b.copy()
        basis = [tab.art_cols[r.id] for r in canonical.rows]
        cost1 = np.where(art, 1.0, 0.0)
        allow = np.ones(n, dtype=bool)
        status, it1 = _run(T, xb, basis, cost1, allow, max_iter,
                           refactor=refactor)
        iterations += it1
        if cost1[basis] @ xb > 1e-7:
            return LpSolution("infeasible", {}, {}, {}, np.inf, (), iterations)
        allow = ~art
        _drive_out_artificials(T, xb, basis, art_set, allow)
        status, it2 = _run(T, xb, basis, tab.cost, allow, max_iter,
                           refactor=refactor)
        iterations += it2
        if status == "unbounded":
            return LpSolution("unbounded", {}, {}, {}, -np.inf, (), iterations)

    # Extract primal values.
    values = np.zeros(n)
    for k, j in enumerate(basis):
        if j < n:
            values[j] = xb[k]
    x = {}
    for v in canonical.variables:
        j = tab.var_cols[v]
        val = values[j]
        if not canonical.nonneg[v]:
            val -= values[j + 1]
        x[v] = val

    # Duals: columns of B^-1 sit under the artificial identities.
    cb = tab.cost[basis]
    art_idx = [tab.art_cols[rid] for rid in tab.row_ids]
    y_flip = cb @ T[:, art_idx]
    y = {}
    for i, rid in enumerate(tab.row_ids):
        y[rid] = float(tab.rowsign[i] * y_flip[i])
    reduced = {v: canonical.reduced_cost(v, y) for v in canonical.variables}
    objective = float(tab.cost @ values)
    ident = tuple(tab.cols[j] for j in basis)
    return LpSolution("optimal", x, y, reduced, objective, ident, iterations)


def objective_gain(parent, child):
    """Objective increase of a child LP over its parent (minimize sense)."""
    if parent.status != "optimal" or child.status != "optimal":
        raise ContractViolation("objective_gain needs two optimal solutions")
    return child.objective - parent.objective
