"""MILP data model and the canonical form used by all bound computations.

The canonical form is: minimize c'x subject to rows that are all >= or =,
with every finite variable bound materialized as an explicit >= row.
Variables whose original lower bound is nonnegative keep an implicit x >= 0
sign restriction in the solver; anything else is treated as a free column.
The index space ``r`` is the disjoint union of canonical row ids and
structural variable ids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import ContractViolation, InfeasibleBounds, ModelError

FEAS_TOL = 1e-9   # primal feasibility comparisons
OPT_TOL = 1e-7    # dual feasibility / optimality comparisons
INT_TOL = 1e-6    # integrality detection


@dataclass(frozen=True)
class Variable:
    id: str
    lb: float = 0.0
    ub: float = math.inf
    obj: float = 0.0
    integer: bool = False


@dataclass(frozen=True)
class Row:
    id: str
    kind: str            # 'ge' | 'le' | 'eq'
    coefs: dict          # var id -> coefficient
    rhs: float


_KINDS = {"ge", "le", "eq"}


@dataclass
class Model:
    """A MILP as read from a file: any sense, any row kinds, real bounds."""

    name: str
    sense: str           # 'min' | 'max'
    variables: list
    rows: list

    def __post_init__(self):
        if self.sense not in {"min", "max"}:
            raise ModelError(f"sense must be 'min' or 'max', got {self.sense!r}")
        var_ids = [v.id for v in self.variables]
        row_ids = [r.id for r in self.rows]
        if len(set(var_ids)) != len(var_ids):
            raise ModelError("duplicate variable ids")
        if len(set(row_ids)) != len(row_ids):
            raise ModelError("duplicate row ids")
        if set(var_ids) & set(row_ids):
            raise ModelError("variable ids and row ids must be disjoint")
        known = set(var_ids)
        for v in self.variables:
            if math.isnan(v.lb) or math.isnan(v.ub) or not math.isfinite(v.obj):
                raise ModelError(f"non-finite data on variable {v.id}")
        for r in self.rows:
            if r.kind not in _KINDS:
                raise ModelError(f"row {r.id}: bad kind {r.kind!r}")
            if not math.isfinite(r.rhs):
                raise ModelError(f"row {r.id}: non-finite rhs")
            for n, a in r.coefs.items():
                if n not in known:
                    raise ModelError(f"row {r.id}: unknown variable {n!r}")
                if not math.isfinite(a):
                    raise ModelError(f"row {r.id}: non-finite coefficient on {n}")

    def var(self, vid):
        for v in self.variables:
            if v.id == vid:
                return v
        raise KeyError(vid)


@dataclass(frozen=True)
class CanonRow:
    id: str
    kind: str            # 'ge' | 'eq'
    coefs: dict
    rhs: float
    origin: tuple = ("synthetic",)


@dataclass
class CanonicalModel:
    """Minimize-only model with >=/= rows and bounds materialized as rows."""

    name: str
    variables: list            # var ids, in model order
    objective: dict            # var id -> minimize coefficient
    integer: set
    nonneg: dict               # var id -> bool (implicit x >= 0 in the solver)
    rows: list                 # list[CanonRow]
    bound_rows: set = field(default_factory=set)   # ids of rows born from bounds
    maximize_origin: bool = False
    base: Model = None

    def __post_init__(self):
        self._row_pos = {r.id: i for i, r in enumerate(self.rows)}
        if len(self._row_pos) != len(self.rows):
            raise ModelError("duplicate canonical row ids")
        self._columns = None

    def row(self, rid):
        return self.rows[self._row_pos[rid]]

    def has_row(self, rid):
        return rid in self._row_pos

    @property
    def columns(self):
        """var id -> list of (row id, coefficient), cached."""
        if self._columns is None:
            cols = {v: [] for v in self.variables}
            for r in self.rows:
                for n, a in r.coefs.items():
                    cols[n].append((r.id, a))
            self._columns = cols
        return self._columns

    def with_rows(self, extra):
        """New model sharing everything but with rows appended at the end."""
        return CanonicalModel(
            name=self.name,
            variables=self.variables,
            objective=self.objective,
            integer=self.integer,
            nonneg=self.nonneg,
            rows=self.rows + list(extra),
            bound_rows=self.bound_rows,
            maximize_origin=self.maximize_origin,
            base=self.base,
        )

    def r_indices(self):
        """The unified index space: ('row', m) for >= rows, ('var', n)."""
        out = [("row", r.id) for r in self.rows if r.kind == "ge"]
        out.extend(("var", v) for v in self.variables)
        return out

    def reduced_cost(self, vid, y):
        """c_n - sum_m c_{m,n} y_m for a dual vector keyed by row id."""
        rc = self.objective.get(vid, 0.0)
        for rid, a in self.columns[vid]:
            rc -= a * y.get(rid, 0.0)
        return rc

    def original_objective(self, value):
        """Map a canonical (minimize) objective back to the original sense."""
        return -value if self.maximize_origin else value


def canonicalize(model):
    """Bring a Model into canonical form (minimize, >=/= rows, bound rows)."""
    for v in model.variables:
        if v.lb > v.ub:
            raise InfeasibleBounds(f"variable {v.id}: lb {v.lb} > ub {v.ub}")

    sign = -1.0 if model.sense == "max" else 1.0
    objective = {v.id: sign * v.obj for v in model.variables}
    rows = []
    for r in model.rows:
        if r.kind == "ge":
            rows.append(CanonRow(r.id, "ge", dict(r.coefs), r.rhs, ("row", r.id, 1.0)))
        elif r.kind == "le":
            rows.append(CanonRow(r.id, "ge", {n: -a for n, a in r.coefs.items()},
                                 -r.rhs, ("row", r.id, -1.0)))
        else:
            rows.append(CanonRow(r.id, "eq", dict(r.coefs), r.rhs, ("row", r.id, 1.0)))

    bound_rows = set()
    for v in model.variables:
        if math.isfinite(v.lb):
            rid = f"lb({v.id})"
            rows.append(CanonRow(rid, "ge", {v.id: 1.0}, v.lb, ("lb", v.id)))
            bound_rows.add(rid)
        if math.isfinite(v.ub):
            rid = f"ub({v.id})"
            rows.append(CanonRow(rid, "ge", {v.id: -1.0}, -v.ub, ("ub", v.id)))
            bound_rows.add(rid)

    return CanonicalModel(
        name=model.name,
        variables=[v.id for v in model.variables],
        objective=objective,
        integer={v.id for v in model.variables if v.integer},
        nonneg={v.id: v.lb >= 0.0 for v in model.variables},
        rows=rows,
        bound_rows=bound_rows,
        maximize_origin=(model.sense == "max"),
        base=model,
    )


def l_vector(solution, canonical):
    """Stock vector l: duals of >= rows plus reduced costs of variables.

    Equality rows are excluded; their duals are free and never constrain
    the combining step.
    """
    if solution.status != "optimal":
        raise ContractViolation(f"l_vector needs an optimal solution, got {solution.status}")
    l = {}
    for r in canonical.rows:
        if r.kind == "ge":
            l[("row", r.id)] = solution.y.get(r.id, 0.0)
    for v in canonical.variables:
        l[("var", v)] = solution.reduced.get(v, 0.0)
    return l
