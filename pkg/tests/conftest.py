import math
import os

import numpy as np
import pytest

from conbranch.model import Model, Row, Variable, canonicalize
from conbranch.simplex import solve_lp

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURES, name)


def fixture_text(name):
    with open(fixture_path(name)) as fh:
        return fh.read()


def two_triangles_model():
    """Minimum vertex cover of two disjoint triangles (six binaries)."""
    variables = [Variable(v, 0.0, 1.0, 1.0, True)
                 for v in ("x11", "x12", "x13", "x21", "x22", "x23")]
    rows = [
        Row("e11", "ge", {"x11": 1.0, "x12": 1.0}, 1.0),
        Row("e12", "ge", {"x12": 1.0, "x13": 1.0}, 1.0),
        Row("e13", "ge", {"x11": 1.0, "x13": 1.0}, 1.0),
        Row("e21", "ge", {"x21": 1.0, "x22": 1.0}, 1.0),
        Row("e22", "ge", {"x22": 1.0, "x23": 1.0}, 1.0),
        Row("e23", "ge", {"x21": 1.0, "x23": 1.0}, 1.0),
    ]
    return Model("two_triangles", "min", variables, rows)


def odd_cycle_model():
    """Pick at most one of every three cyclically consecutive items."""
    variables = [Variable(f"x{k}", 0.0, 1.0, 1.0, True) for k in range(1, 6)]
    rows = []
    for i in range(5):
        ids = [f"x{(i + k) % 5 + 1}" for k in range(3)]
        rows.append(Row(f"r{i + 1}", "le", {v: 1.0 for v in ids}, 1.0))
    return Model("odd_cycle", "max", variables, rows)


def random_binary_model(rng, max_vars=6, max_rows=6, name="rand"):
    """Random feasible bounded binary MILP with small integer data."""
    n = int(rng.integers(2, max_vars + 1))
    m = int(rng.integers(1, max_rows + 1))
    variables = [Variable(f"x{k}", 0.0, 1.0, float(rng.integers(-3, 4)), True)
                 for k in range(n)]
    anchor = rng.integers(0, 2, size=n)   # a binary point kept feasible
    rows = []
    for i in range(m):
        coefs = {f"x{k}": float(c)
                 for k, c in enumerate(rng.integers(-3, 4, size=n)) if c != 0}
        if not coefs:
            continue
        act = sum(coefs.get(f"x{k}", 0.0) * anchor[k] for k in range(n))
        if rng.random() < 0.5:
            rows.append(Row(f"r{i}", "ge", coefs, act - float(rng.integers(0, 3))))
        else:
            rows.append(Row(f"r{i}", "le", coefs, act + float(rng.integers(0, 3))))
    sense = "min" if rng.random() < 0.5 else "max"
    return Model(name, sense, variables, rows)


@pytest.fixture
def triangles():
    return two_triangles_model()


@pytest.fixture
def cycle():
    return odd_cycle_model()


@pytest.fixture
def triangles_solved():
    model = two_triangles_model()
    canonical = canonicalize(model)
    return model, canonical, solve_lp(canonical)


@pytest.fixture
def cycle_solved():
    model = odd_cycle_model()
    canonical = canonicalize(model)
    return model, canonical, solve_lp(canonical)
