"""Maximum-coverage toolkit: algorithms, exact solvers, random models,
matching reduction, closed-form theory, and a Monte Carlo harness.

The hot kernels (greedy trace, hybrid sweep, blossom matching, exact
search) have a compiled backend with a pure-Python fallback; see
``maxcover.BACKEND`` for which one loaded, and the MAXCOVER_BACKEND
environment variable to force a choice before import.
"""

from ._kernels import BACKEND
from .algorithms import (AcceptRejectTrace, GreedyTrace, accept_reject,
                         fixed_set_nodes, fixed_set_value, greedy, hybrid,
                         hybrid_sweep_values, sequential_gains, t_d_count)
from .errors import BudgetExceededError, CapacityError, GraphFormatError
from .exact import (OptResult, opt_branch_bound, opt_exhaustive, solve_opt)
from .experiments import (ExperimentConfig, RatioEstimate, estimate_ratio,
                          run_experiment, sweep_k)
from .generators import (DegreeSpec, ExplicitDegrees, MixtureDegrees,
                         PowerLawDegrees, UniformDegrees, gen_bad_instance,
                         gen_genr, gen_lrr, gen_powerlaw_degrees, gen_ulrr,
                         substream_seed)
from .graph import (BipartiteGraph, CoverState, coverage, load_graph,
                    marginal_gain, save_graph)
from .matching import (MatchingResult, SimpleGraph, build_incidence_graph,
                       lambda_value, load_simple_graph, max_matching,
                       opt_lower_bound_d2, save_simple_graph)
from .theory import (GammaConstants, PredictionSet, RegionInfo,
                     augmented_factor, classify_region, claim_checks,
                     de_error_bound, expected_fixed_coverage,
                     gamma_constants, hypergeom_approx_check, ode_solution,
                     predict_t_star, prediction_set, theorem3_k,
                     trivial_opt_ub, worst_case_factor)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "__version__",
    "BipartiteGraph", "CoverState", "coverage", "marginal_gain",
    "save_graph", "load_graph",
    "GraphFormatError", "CapacityError", "BudgetExceededError",
    "DegreeSpec", "UniformDegrees", "ExplicitDegrees", "MixtureDegrees",
    "PowerLawDegrees", "gen_lrr", "gen_ulrr", "gen_genr",
    "gen_powerlaw_degrees", "gen_bad_instance", "substream_seed",
    "GreedyTrace", "AcceptRejectTrace", "greedy", "accept_reject",
    "t_d_count", "hybrid", "hybrid_sweep_values", "fixed_set_nodes",
    "fixed_set_value", "sequential_gains",
    "OptResult", "opt_exhaustive", "opt_branch_bound", "solve_opt",
    "SimpleGraph", "MatchingResult", "build_incidence_graph",
    "max_matching", "lambda_value", "opt_lower_bound_d2",
    "save_simple_graph", "load_simple_graph",
    "GammaConstants", "PredictionSet", "RegionInfo", "predict_t_star",
    "de_error_bound", "ode_solution", "expected_fixed_coverage",
    "hypergeom_approx_check", "gamma_constants", "theorem3_k",
    "worst_case_factor", "augmented_factor", "classify_region",
    "trivial_opt_ub", "claim_checks", "prediction_set",
    "ExperimentConfig", "RatioEstimate", "estimate_ratio", "sweep_k",
    "run_experiment",
]
