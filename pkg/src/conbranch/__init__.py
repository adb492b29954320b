"""conbranch: strengthen MILP LP bounds by combining many branchings.

Each fractional integer variable is branched once; the drop of the dual
values and reduced costs in the two child LPs is recorded as a delta
vector, and an auxiliary LP picks nonnegative weights for the branchings
so that the weighted deltas stay within the dual slack of the root LP.
The weighted gains add up to a valid bound improvement, and every
improving branching also yields a cutting plane.
"""

from .branching import Case, File, Fixing, build_file, differentiate, fractional_candidates
from .combining import (CombineResult, anchor_columns, combine, combine_complex,
                        combine_huge, merge_columns, sequential_combine)
from .cuts import BranchingCut, ExpandedCut, expand_cut, generate_cut, verify_cut
from .errors import (ConbranchError, ContractViolation, InfeasibleBounds,
                     LatticeTooLarge, ModelError, NonImprovingFile, ParseError,
                     SizeLimitExceeded, SolverFailure, UnsupportedFeature)
from .heuristics import (distance_weights, integrity_objective, integrity_search,
                         refined_case_solve)
from .model import (CanonicalModel, CanonRow, Model, Row, Variable,
                    canonicalize, l_vector)
from .mps import parse_mps
from .native import parse_native, to_native
from .oracle import brute_force_optimum, enumerate_integer_feasible
from .pipeline import PipelineOptions, PipelineReport, run_pipeline
from .simplex import LpSolution, solve_lp

__version__ = "1.0.0"

__all__ = [
    "BranchingCut", "CanonRow", "CanonicalModel", "Case", "CombineResult",
    "ConbranchError", "ContractViolation", "ExpandedCut", "File", "Fixing",
    "InfeasibleBounds", "LatticeTooLarge", "LpSolution", "Model", "ModelError",
    "NonImprovingFile", "ParseError", "PipelineOptions", "PipelineReport",
    "Row", "SizeLimitExceeded", "SolverFailure", "UnsupportedFeature",
    "Variable", "anchor_columns", "brute_force_optimum", "build_file",
    "canonicalize", "combine", "combine_complex", "combine_huge",
    "differentiate", "distance_weights", "enumerate_integer_feasible",
    "expand_cut", "fractional_candidates", "generate_cut",
    "integrity_objective", "integrity_search", "l_vector", "merge_columns",
    "parse_mps", "parse_native", "refined_case_solve", "run_pipeline",
    "sequential_combine", "solve_lp", "to_native", "verify_cut",
]
