"""MPS reader for the NAME/ROWS/COLUMNS/RHS/BOUNDS/ENDATA subset.

Both fixed and free format are accepted (fields are whitespace-split).
INTORG/INTEND markers flag integer columns; BV bounds mean binary 0/1.
RANGES and SOS sections are declared out of scope and rejected loudly.
"""

from __future__ import annotations

import math

from .errors import ParseError, UnsupportedFeature
from .model import Model, Row, Variable

_SUPPORTED = {"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "OBJSENSE", "ENDATA"}
_UNSUPPORTED = {"RANGES", "SOS", "QUADOBJ", "QMATRIX"}


def parse_mps(text, name="model"):
    sense = "min"
    obj_row = None
    row_kinds = {}      # id -> 'ge'|'le'|'eq'
    row_order = []
    col_order = []
    col_coefs = {}      # var -> {row: coef}
    obj_coefs = {}
    integer_flags = {}
    bounds = {}         # var -> [lb, ub, explicit_flags]
    rhs = {}

    section = None
    in_integer = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith(("*", "$")):
            continue
        is_header = not raw[0].isspace()
        fields = raw.split()
        if is_header:
            header = fields[0].upper()
            if header in _UNSUPPORTED:
                raise UnsupportedFeature(f"MPS section {header} is not supported")
            if header not in _SUPPORTED:
                raise ParseError(f"unknown MPS section {header!r}", line=lineno)
            section = header
            if header == "NAME" and len(fields) > 1:
                name = fields[1]
            if header == "ENDATA":
                break
            continue
        if section == "OBJSENSE":
            word = fields[0].upper()
            if word.startswith("MAX"):
                sense = "max"
            elif word.startswith("MIN"):
                sense = "min"
            else:
                raise ParseError(f"bad OBJSENSE {fields[0]!r}", line=lineno)
        elif section == "ROWS":
            if len(fields) != 2:
                raise ParseError("ROWS lines are '<type> <name>'", line=lineno)
            kind, rid = fields[0].upper(), fields[1]
            if rid in row_kinds or rid == obj_row:
                raise ParseError(f"duplicate row {rid!r}", line=lineno)
            if kind == "N":
                if obj_row is None:
                    obj_row = rid
                # extra N rows are ignored per MPS convention
            elif kind in {"G", "L", "E"}:
                row_kinds[rid] = {"G": "ge", "L": "le", "E": "eq"}[kind]
                row_order.append(rid)
            else:
                raise ParseError(f"bad row type {fields[0]!r}", line=lineno)
        elif section == "COLUMNS":
            if len(fields) >= 3 and fields[1].upper() == "'MARKER'":
                marker = fields[2].upper().strip("'")
                if marker == "INTORG":
                    in_integer = True
                elif marker == "INTEND":
                    in_integer = False
                else:
                    raise ParseError(f"unknown marker {fields[2]!r}", line=lineno)
                continue
            if len(fields) < 3 or len(fields) % 2 == 0:
                raise ParseError("COLUMNS lines are '<col> (<row> <val>)+'",
                                 line=lineno)
            col = fields[0]
            if col not in col_coefs:
                col_order.append(col)
                col_coefs[col] = {}
                integer_flags[col] = in_integer
            for i in range(1, len(fields), 2):
                rid, val = fields[i], _num(fields[i + 1], lineno)
                if rid == obj_row:
                    obj_coefs[col] = obj_coefs.get(col, 0.0) + val
                elif rid in row_kinds:
                    prev = col_coefs[col]
                    prev[rid] = prev.get(rid, 0.0) + val
                else:
                    raise ParseError(f"unknown row {rid!r}", line=lineno)
        elif section == "RHS":
            start = 1 if (len(fields) % 2 == 1) else 0
            for i in range(start, len(fields), 2):
                rid, val = fields[i], _num(fields[i + 1], lineno)
                if rid in row_kinds:
                    rhs[rid] = val
                elif rid != obj_row:
                    raise ParseError(f"unknown row {rid!r}", line=lineno)
        elif section == "BOUNDS":
            if len(fields) < 3:
                raise ParseError("BOUNDS lines are '<type> <set> <col> [val]'",
                                 line=lineno)
            btype = fields[0].upper()
            col = fields[2]
            if col not in col_coefs:
                raise ParseError(f"bounds for unknown column {col!r}", line=lineno)
            entry = bounds.setdefault(col, [0.0, math.inf])
            needs_val = btype in {"UP", "LO", "FX", "UI", "LI"}
            val = _num(fields[3], lineno) if needs_val else None
            if btype == "UP":
                entry[1] = val
                if val < 0 and entry[0] == 0.0:
                    entry[0] = -math.inf
            elif btype == "LO":
                entry[0] = val
            elif btype == "FX":
                entry[0] = entry[1] = val
            elif btype == "FR":
                entry[0], entry[1] = -math.inf, math.inf
            elif btype == "MI":
                entry[0] = -math.inf
            elif btype == "PL":
                entry[1] = math.inf
            elif btype == "BV":
                entry[0], entry[1] = 0.0, 1.0
                integer_flags[col] = True
            elif btype == "UI":
                entry[1] = val
                integer_flags[col] = True
            elif btype == "LI":
                entry[0] = val
                integer_flags[col] = True
            else:
                raise ParseError(f"bad bound type {fields[0]!r}", line=lineno)
        elif section == "NAME":
            continue
        else:
            raise ParseError("data line outside any section", line=lineno)

    if obj_row is None:
        raise ParseError("no objective (N) row found")
    variables = []
    for col in col_order:
        lb, ub = bounds.get(col, (0.0, math.inf))
        variables.append(Variable(col, lb, ub, obj_coefs.get(col, 0.0),
                                  integer_flags[col]))
    rows = [Row(rid, row_kinds[rid], col_rows(col_coefs, rid), rhs.get(rid, 0.0))
            for rid in row_order]
    return Model(name, sense, variables, rows)


def col_rows(col_coefs, rid):
    return {col: coefs[rid] for col, coefs in col_coefs.items() if rid in coefs}


def _num(token, lineno):
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"expected a number, got {token!r}", line=lineno) from None
