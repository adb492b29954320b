import math

import pytest

from conbranch.errors import ContractViolation, InfeasibleBounds, ModelError
from conbranch.model import Model, Row, Variable, canonicalize, l_vector
from conbranch.simplex import solve_lp


def test_duplicate_variable_ids_rejected():
    with pytest.raises(ModelError):
        Model("m", "min", [Variable("x"), Variable("x")], [])


def test_variable_row_id_clash_rejected():
    with pytest.raises(ModelError):
        Model("m", "min", [Variable("x")], [Row("x", "ge", {"x": 1.0}, 0.0)])


def test_unknown_variable_in_row_rejected():
    with pytest.raises(ModelError):
        Model("m", "min", [Variable("x")], [Row("r", "ge", {"y": 1.0}, 0.0)])


def test_crossed_bounds_rejected():
    model = Model("m", "min", [Variable("x", 2.0, 1.0)], [])
    with pytest.raises(InfeasibleBounds):
        canonicalize(model)


def test_le_rows_are_negated():
    model = Model("m", "min", [Variable("x", obj=1.0)],
                  [Row("r", "le", {"x": 2.0}, 3.0)])
    canonical = canonicalize(model)
    r = canonical.row("r")
    assert r.kind == "ge"
    assert r.coefs == {"x": -2.0}
    assert r.rhs == -3.0


def test_equality_rows_preserved():
    model = Model("m", "min", [Variable("x", obj=1.0)],
                  [Row("r", "eq", {"x": 1.0}, 2.0)])
    canonical = canonicalize(model)
    assert canonical.row("r").kind == "eq"


def test_unit_box_yields_two_bound_rows():
    model = Model("m", "min", [Variable("x", 0.0, 1.0, 1.0)], [])
    canonical = canonicalize(model)
    assert canonical.bound_rows == {"lb(x)", "ub(x)"}
    assert canonical.row("lb(x)").coefs == {"x": 1.0}
    assert canonical.row("lb(x)").rhs == 0.0
    assert canonical.row("ub(x)").coefs == {"x": -1.0}
    assert canonical.row("ub(x)").rhs == -1.0


def test_free_variable_produces_no_bound_rows():
    model = Model("m", "min",
                  [Variable("x", -math.inf, math.inf, 1.0)],
                  [Row("r", "ge", {"x": 1.0}, 2.0)])
    canonical = canonicalize(model)
    assert canonical.bound_rows == set()
    assert not canonical.nonneg["x"]


def test_min_ge_model_passes_through(triangles):
    canonical = canonicalize(triangles)
    for r in triangles.rows:
        cr = canonical.row(r.id)
        assert cr.kind == "ge" and cr.coefs == r.coefs and cr.rhs == r.rhs


def test_maximize_round_trip(cycle):
    canonical = canonicalize(cycle)
    sol = solve_lp(canonical)
    assert canonical.maximize_origin
    assert canonical.original_objective(sol.objective) == pytest.approx(5.0 / 3.0)


def test_r_index_partition(cycle):
    canonical = canonicalize(cycle)
    idx = canonical.r_indices()
    assert len(idx) == len(set(idx))
    ge_rows = {r.id for r in canonical.rows if r.kind == "ge"}
    assert {i for tag, i in idx if tag == "row"} == ge_rows
    assert {i for tag, i in idx if tag == "var"} == set(canonical.variables)


def test_l_vector_paper_values(triangles_solved, cycle_solved):
    _, canonical, root = triangles_solved
    l = l_vector(root, canonical)
    for rid in ("e11", "e12", "e13", "e21", "e22", "e23"):
        assert l[("row", rid)] == pytest.approx(0.5, abs=1e-9)
    for v in canonical.variables:
        assert l[("var", v)] == pytest.approx(0.0, abs=1e-9)

    _, canonical, root = cycle_solved
    l = l_vector(root, canonical)
    for rid in ("r1", "r2", "r3", "r4", "r5"):
        assert l[("row", rid)] == pytest.approx(1.0 / 3.0, abs=1e-9)


def test_l_vector_excludes_equality_rows():
    model = Model("m", "min", [Variable("x", 0.0, 5.0, 1.0)],
                  [Row("r", "eq", {"x": 1.0}, 2.0)])
    canonical = canonicalize(model)
    sol = solve_lp(canonical)
    l = l_vector(sol, canonical)
    assert ("row", "r") not in l
    assert ("row", "lb(x)") in l


def test_l_vector_requires_optimal(triangles):
    canonical = canonicalize(triangles)
    sol = solve_lp(canonical)
    bad = type(sol)("infeasible", {}, {}, {}, 0.0, (), 0)
    with pytest.raises(ContractViolation):
        l_vector(bad, canonical)


def test_l_vector_nonnegative_at_optimum(cycle_solved):
    _, canonical, root = cycle_solved
    for value in l_vector(root, canonical).values():
        assert value >= -1e-7
