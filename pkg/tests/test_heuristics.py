import math

import numpy as np
import pytest

from conbranch.branching import case_delta, fractional_candidates, make_case_models
from conbranch.heuristics import (case_distance, distance_weights,
                                  integrity_objective, integrity_search,
                                  refined_case_solve, _fractional_count)
from conbranch.model import canonicalize, l_vector
from conbranch.simplex import solve_lp

from conftest import random_binary_model


def test_distance_weights_formula():
    l = {("row", "a"): 4.0, ("row", "b"): 1e-12, ("var", "x"): 200.0}
    w = distance_weights(l)
    assert w[("row", "a")] == pytest.approx(0.25)
    assert w[("row", "b")] == 0.01          # floor for exhausted stock
    assert w[("var", "x")] == 0.01          # floor beats tiny 1/l
    assert all(v >= 0 for v in w.values.values())


def test_case_distance_ignores_negative_deltas():
    w = distance_weights({("row", "a"): 1.0, ("row", "b"): 1.0})
    d = case_distance({("row", "a"): 2.0, ("row", "b"): -5.0}, w)
    assert d == pytest.approx(2.0)


def test_integrity_objective_values(cycle_solved):
    _, canonical, root = cycle_solved
    x0 = dict.fromkeys(canonical.variables, 0.0)
    x0["x1"] = 0.75
    x0["x2"] = 0.25
    coefs = integrity_objective(x0, canonical)
    assert coefs["x1"] == pytest.approx(-0.5)
    assert coefs["x2"] == pytest.approx(0.5)
    assert coefs["x3"] == pytest.approx(1.0)    # frac 0
    literal = integrity_objective(x0, canonical, literal=True)
    assert literal["x1"] == pytest.approx(2.5)


def test_integrity_search_fixed_point(triangles):
    canonical = canonicalize(triangles)
    x0 = {"x11": 1.0, "x12": 1.0, "x13": 0.0,
          "x21": 1.0, "x22": 1.0, "x23": 0.0}
    # x0 is integral; the search must return it unchanged
    out = integrity_search(canonical, x0, max_iters=3)
    assert out == x0


def test_integrity_search_zero_iters(triangles_solved):
    _, canonical, root = triangles_solved
    assert integrity_search(canonical, root.x, max_iters=0) == root.x


def test_integrity_search_non_increasing_random():
    rng = np.random.default_rng(43)
    checked = 0
    while checked < 20:
        model = random_binary_model(rng)
        canonical = canonicalize(model)
        root = solve_lp(canonical)
        if root.status != "optimal":
            continue
        before = _fractional_count(root.x, canonical)
        out = integrity_search(canonical, root.x, max_iters=5)
        assert _fractional_count(out, canonical) <= before
        checked += 1


def _efficiency(gain, delta, weights):
    d = case_distance(delta, weights)
    if d <= 1e-12:
        return math.inf
    return gain / d


def test_refined_case_pass_through_when_zero_distance(triangles_solved):
    _, canonical, root = triangles_solved
    # weights keyed to nothing force D = 0 via all-negative deltas: use a
    # child whose gain is zero instead (branch at an integral bound)
    down, up = make_case_models(canonical, "x11", 0.5)
    w = distance_weights(l_vector(root, canonical))
    case = refined_case_solve(root, down, w, canonical)
    assert case.gain >= -1e-9


def test_refined_case_ratio_non_decreasing_random():
    rng = np.random.default_rng(47)
    checked = 0
    while checked < 20:
        model = random_binary_model(rng)
        canonical = canonicalize(model)
        root = solve_lp(canonical)
        if root.status != "optimal":
            continue
        cands = fractional_candidates(root, canonical)
        if not cands:
            continue
        w = distance_weights(l_vector(root, canonical))
        for var in cands[:2]:
            for child_model in make_case_models(canonical, var, root.x[var]):
                first = solve_lp(child_model, start=root.basis)
                if first.status != "optimal":
                    continue
                gain0 = first.objective - root.objective
                d0 = case_distance(case_delta(root, first, canonical), w)
                if gain0 <= 1e-7 or d0 <= 1e-9:
                    continue
                refined = refined_case_solve(root, child_model, w, canonical)
                r0 = _efficiency(gain0, case_delta(root, first, canonical), w)
                rn = _efficiency(refined.gain, refined.delta, w)
                assert rn >= r0 - 1e-6
        checked += 1


def test_refined_case_iterated_ratio(cycle_solved):
    _, canonical, root = cycle_solved
    w = distance_weights(l_vector(root, canonical))
    down, up = make_case_models(canonical, "x1", root.x["x1"])
    first = solve_lp(up, start=root.basis)
    ratios = []
    for iters in (1, 2, 3):
        case = refined_case_solve(root, up, w, canonical, iterations=iters)
        ratios.append(_efficiency(case.gain, case.delta, w))
    assert all(b >= a - 1e-6 for a, b in zip(ratios, ratios[1:]))
    base = _efficiency(first.objective - root.objective,
                       case_delta(root, first, canonical), w)
    assert ratios[0] >= base - 1e-6
