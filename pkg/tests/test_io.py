import math

import pytest

from conbranch.errors import ParseError, UnsupportedFeature
from conbranch.mps import parse_mps
from conbranch.native import parse_native, to_native

from conftest import fixture_text, random_binary_model


def test_triangles_fixture_parses():
    model = parse_native(fixture_text("two_triangles.lp"))
    assert model.sense == "min"
    assert len(model.variables) == 6 and len(model.rows) == 6
    assert all(v.integer for v in model.variables)
    assert model.rows[0].coefs == {"x11": 1.0, "x12": 1.0}


def test_cycle_fixture_parses():
    model = parse_native(fixture_text("odd_cycle.lp"))
    assert model.sense == "max"
    assert len(model.variables) == 5 and len(model.rows) == 5
    assert all(r.kind == "le" and r.rhs == 1.0 for r in model.rows)


def test_native_empty_input_rejected():
    with pytest.raises(ParseError):
        parse_native("")


def test_native_unknown_variable_names_identifier():
    with pytest.raises(ParseError) as err:
        parse_native("min\nvar x\nrow r >= 1 : 1*z\n")
    assert "z" in str(err.value)


def test_native_bad_line_carries_line_number():
    with pytest.raises(ParseError) as err:
        parse_native("min\nvar x\nrow r >= one : 1*x\n")
    assert err.value.line == 3


def test_native_round_trip():
    import numpy as np
    rng = np.random.default_rng(3)
    for k in range(20):
        model = random_binary_model(rng, name=f"m{k}")
        back = parse_native(to_native(model))
        assert back.sense == model.sense
        assert [(v.id, v.lb, v.ub, v.obj, v.integer) for v in back.variables] \
            == [(v.id, v.lb, v.ub, v.obj, v.integer) for v in model.variables]
        assert [(r.id, r.kind, r.coefs, r.rhs) for r in back.rows] \
            == [(r.id, r.kind, r.coefs, r.rhs) for r in model.rows]


def test_mps_minimal_fixture():
    model = parse_mps(fixture_text("tiny.mps"))
    assert model.name == "TINY"
    assert [v.id for v in model.variables] == ["X1", "X2"]
    x1, x2 = model.variables
    assert x1.integer and not x2.integer
    assert x1.ub == 4.0 and x2.ub == math.inf
    assert x1.obj == 1.0 and x2.obj == 2.0
    assert len(model.rows) == 1
    assert model.rows[0].kind == "ge" and model.rows[0].rhs == 1.5


def test_mps_ranges_rejected():
    text = "ROWS\n N obj\n G r\nCOLUMNS\n x obj 1 r 1\nRANGES\n RNG r 2\nENDATA\n"
    with pytest.raises(UnsupportedFeature) as err:
        parse_mps(text)
    assert "RANGES" in str(err.value)


def test_mps_sos_rejected():
    with pytest.raises(UnsupportedFeature):
        parse_mps("ROWS\n N obj\nSOS\nENDATA\n")


def test_mps_duplicate_row_rejected():
    with pytest.raises(ParseError):
        parse_mps("ROWS\n N obj\n G r\n L r\nENDATA\n")


def test_mps_bv_bound_makes_binary():
    text = ("ROWS\n N obj\n G r\n"
            "COLUMNS\n x obj 1 r 1\n"
            "BOUNDS\n BV b x\nENDATA\n")
    model = parse_mps(text)
    v = model.variables[0]
    assert v.integer and v.lb == 0.0 and v.ub == 1.0


def test_mps_fr_and_fx_bounds():
    text = ("ROWS\n N obj\n G r\n"
            "COLUMNS\n x obj 1 r 1\n y obj 1 r 1\n"
            "BOUNDS\n FR b x\n FX b y 2.5\nENDATA\n")
    model = parse_mps(text)
    x, y = model.variables
    assert x.lb == -math.inf and x.ub == math.inf
    assert y.lb == 2.5 and y.ub == 2.5


def test_mps_objsense_max():
    text = "OBJSENSE\n MAX\nROWS\n N obj\n G r\nCOLUMNS\n x obj 1 r 1\nENDATA\n"
    assert parse_mps(text).sense == "max"


def test_mps_bad_number_reports_line():
    text = "ROWS\n N obj\n G r\nCOLUMNS\n x obj one\nENDATA\n"
    with pytest.raises(ParseError) as err:
        parse_mps(text)
    assert err.value.line == 5
