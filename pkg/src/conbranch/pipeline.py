"""End-to-end bound strengthening: root LP, case differentiations on the
fractional integer variables, one combining pass, optional cuts and
solution shaping.  This is the engine behind the command-line tool."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .branching import (Fixing, build_file, differentiate,
                        fractional_candidates, make_case_models)
from .combining import (ACTIVE_TOL, anchor_columns, combine, combine_complex,
                        combine_huge, sequential_combine)
from .cuts import expand_cut, generate_cut
from .errors import ContractViolation
from .heuristics import (_fractional_count, distance_weights, integrity_search,
                         refined_case_solve)
from .model import canonicalize, l_vector
from .simplex import solve_lp

MODES = ("simple", "complex", "sequential", "huge")


@dataclass
class PipelineOptions:
    mode: str = "simple"
    normalize: bool = True
    cuts: bool = False
    integrity: bool = False
    refine: bool = False
    warm_start: bool = True
    seed: int = 0
    max_candidates: int = None
    anchors: int = 3          # extra gain-free columns in complex mode
    huge_var_limit: int = 20000
    integrity_iters: int = 8

    def __post_init__(self):
        if self.mode not in MODES:
            raise ContractViolation(f"unknown mode {self.mode!r}")


@dataclass
class CutRecord:
    file_id: str
    coefs: dict              # original-sense presentation
    kind: str                # 'ge' | 'le'
    rhs: float


@dataclass
class PipelineReport:
    instance: str
    status: str                        # 'optimal' | 'infeasible' | 'unbounded'
    pure_lp: float = None              # root LP value, original sense
    bound: float = None                # strengthened bound, original sense
    bound_inc: float = 0.0             # absolute improvement (>= 0)
    mode: str = "simple"
    branches_tried: int = 0
    branches_used: int = 0
    degree: float = 0.0
    lambdas: dict = field(default_factory=dict)
    cuts: list = field(default_factory=list)
    fixings: list = field(default_factory=list)
    fractional_before: int = None
    fractional_after: int = None
    timings_ms: dict = field(default_factory=dict)


def _refined_file(canonical, root, var, weights, normalize):
    """Differentiation where each child is re-solved with the distance
    penalty before the deltas enter the file."""
    q = root.x[var]
    down_model, up_model = make_case_models(canonical, var, q)
    cases = []
    for j, child_model in enumerate((down_model, up_model), start=1):
        first = solve_lp(child_model, start=root.basis)
        if first.status != "optimal":
            return differentiate(canonical, root, var, normalize=normalize)
        cases.append(refined_case_solve(root, child_model, weights, canonical,
                                        file_id=var, case_id=j))
    return build_file(cases, normalize=normalize)


def run_pipeline(model, options=None):
    opts = options or PipelineOptions()
    t0 = time.perf_counter()
    timings = {}
    canonical = canonicalize(model)

    root = solve_lp(canonical)
    timings["root_ms"] = 1000.0 * (time.perf_counter() - t0)
    if root.status != "optimal":
        return PipelineReport(instance=model.name, status=root.status,
                              mode=opts.mode, timings_ms=timings)

    omega0 = root.objective
    pure_lp = canonical.original_objective(omega0)
    candidates = fractional_candidates(root, canonical)
    if opts.max_candidates is not None:
        candidates = candidates[:opts.max_candidates]
    l = l_vector(root, canonical)

    t1 = time.perf_counter()
    files = []
    fixings = []
    if opts.mode in ("simple", "complex") or (opts.mode == "huge" and opts.cuts):
        weights = distance_weights(l) if opts.refine else None
        for var in candidates:
            if opts.refine:
                outcome = _refined_file(canonical, root, var, weights,
                                        opts.normalize)
            else:
                outcome = differentiate(canonical, root, var,
                                        normalize=opts.normalize,
                                        warm=opts.warm_start)
            if isinstance(outcome, Fixing):
                fixings.append(outcome)
            elif outcome is not None:
                files.append(outcome)
    timings["branching_ms"] = 1000.0 * (time.perf_counter() - t1)

    t2 = time.perf_counter()
    if opts.mode == "simple":
        result = combine(files, l, omega0)
        lambdas = dict(result.lambdas)
        used = sum(1 for w in lambdas.values() if w > ACTIVE_TOL)
    elif opts.mode == "complex":
        file_columns = {f.id: [f] for f in files if f.improving}
        anchors = anchor_columns(canonical, root, opts.anchors, seed=opts.seed)
        result = combine_complex(file_columns, anchors, l, omega0)
        lambdas = {}
        for key, w in result.lambdas.items():
            fid, k = key
            label = f"{fid}#{k}" if fid == "anchor" else fid
            lambdas[label] = lambdas.get(label, 0.0) + w
        used = sum(1 for fid, w in lambdas.items()
                   if not fid.startswith("anchor#") and w > ACTIVE_TOL)
    elif opts.mode == "sequential":
        result = sequential_combine(canonical, root, candidates, l, omega0,
                                    normalize=opts.normalize)
        files = result.files
        lambdas = dict(result.lambdas)
        used = len(lambdas)
    else:
        diffs = [(v, math.floor(root.x[v])) for v in candidates]
        result = combine_huge(canonical, diffs, omega0,
                              var_limit=opts.huge_var_limit)
        lambdas = {}
        used = len(diffs)
    timings["combining_ms"] = 1000.0 * (time.perf_counter() - t2)

    cut_records = []
    if opts.cuts:
        for f in files:
            if not f.improving:
                continue
            expanded = expand_cut(generate_cut(f, canonical), canonical)
            coefs, kind, rhs = expanded.original_form(canonical)
            cut_records.append(CutRecord(f.id, coefs, kind, rhs))

    frac_before = frac_after = None
    if opts.integrity:
        frac_before = _fractional_count(root.x, canonical)
        best = integrity_search(canonical, root.x, opts.integrity_iters)
        frac_after = _fractional_count(best, canonical)

    bound = canonical.original_objective(result.bound)
    timings["total_ms"] = 1000.0 * (time.perf_counter() - t0)
    return PipelineReport(
        instance=model.name,
        status="optimal",
        pure_lp=pure_lp,
        bound=bound,
        bound_inc=result.improvement,
        mode=opts.mode,
        branches_tried=len(candidates),
        branches_used=used,
        degree=result.degree,
        lambdas=lambdas,
        cuts=cut_records,
        fixings=[(fx.var, fx.row.id) for fx in fixings],
        fractional_before=frac_before,
        fractional_after=frac_after,
        timings_ms=timings,
    )
