"""Line-oriented native model format.

    # comment
    min | max
    var <id> [int] [<lb> [<ub>]]
    row <id> <=|>=|= <rhs> : <coef>*<var> <coef>*<var> ...

Bounds default to 0 and +inf; ``inf``/``-inf`` are accepted spellings.
"""

from __future__ import annotations

import math

from .errors import ParseError
from .model import Model, Row, Variable


def _num(token, lineno):
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"expected a number, got {token!r}", line=lineno) from None


def parse_native(text, name="model"):
    sense = None
    variables = []
    rows = []
    seen_vars = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0].lower()
        if head in {"min", "max"}:
            sense = head
        elif head == "name":
            if len(parts) < 2:
                raise ParseError("name line needs an argument", line=lineno)
            name = parts[1]
        elif head == "var":
            if sense is None:
                raise ParseError("var line before min/max", line=lineno)
            if len(parts) < 2:
                raise ParseError("var line needs an id", line=lineno)
            vid = parts[1]
            if vid in seen_vars:
                raise ParseError(f"duplicate variable {vid!r}", line=lineno)
            rest = parts[2:]
            integer = False
            if rest and rest[0] == "int":
                integer = True
                rest = rest[1:]
            lb = _num(rest[0], lineno) if len(rest) > 0 else 0.0
            ub = _num(rest[1], lineno) if len(rest) > 1 else math.inf
            obj = _num(rest[2], lineno) if len(rest) > 2 else 0.0
            seen_vars[vid] = True
            variables.append(Variable(vid, lb, ub, obj, integer))
        elif head == "obj":
            # obj <coef>*<var> ...
            coefs = _parse_terms(parts[1:], seen_vars, lineno)
            variables = [Variable(v.id, v.lb, v.ub, coefs.get(v.id, v.obj), v.integer)
                         for v in variables]
        elif head == "row":
            if len(parts) < 5 or ":" not in parts:
                raise ParseError("row syntax: row <id> <op> <rhs> : terms", line=lineno)
            rid = parts[1]
            op = parts[2]
            kind = {">=": "ge", "<=": "le", "=": "eq"}.get(op)
            if kind is None:
                raise ParseError(f"bad row operator {op!r}", line=lineno)
            rhs = _num(parts[3], lineno)
            if parts[4] != ":":
                raise ParseError("expected ':' after the rhs", line=lineno)
            coefs = _parse_terms(parts[5:], seen_vars, lineno)
            rows.append(Row(rid, kind, coefs, rhs))
        else:
            raise ParseError(f"unknown directive {head!r}", line=lineno)
    if sense is None:
        raise ParseError("empty input: missing min/max line")
    return Model(name, sense, variables, rows)


def _parse_terms(tokens, seen_vars, lineno):
    coefs = {}
    for tok in tokens:
        if "*" not in tok:
            raise ParseError(f"term {tok!r} must look like coef*var", line=lineno)
        c, v = tok.split("*", 1)
        if v not in seen_vars:
            raise ParseError(f"unknown variable {v!r}", line=lineno)
        coefs[v] = coefs.get(v, 0.0) + _num(c, lineno)
    return coefs


def _fmt(x):
    if x == math.inf:
        return "inf"
    if x == -math.inf:
        return "-inf"
    return repr(x) if x != int(x) else str(int(x))


def to_native(model):
    """Serialize a Model; parse_native(to_native(m)) reproduces m."""
    out = [f"name {model.name}", model.sense]
    for v in model.variables:
        flag = " int" if v.integer else ""
        out.append(f"var {v.id}{flag} {_fmt(v.lb)} {_fmt(v.ub)} {_fmt(v.obj)}")
    op = {"ge": ">=", "le": "<=", "eq": "="}
    for r in model.rows:
        terms = " ".join(f"{_fmt(a)}*{n}" for n, a in r.coefs.items())
        out.append(f"row {r.id} {op[r.kind]} {_fmt(r.rhs)} : {terms}")
    return "\n".join(out) + "\n"
