"""Weight-coded evolutionary algorithms for the 0-1 multidimensional knapsack problem."""

from ._core import (
    Algorithm,
    BruteForceResult,
    InitBounds,
    LpError,
    LpSolution,
    MkpInstance,
    ParseError,
    RunResult,
    __version__,
    aggregate,
    brute_force_opt,
    compute_bounds,
    decode,
    gap,
    generate_random,
    greedy_lower_bound,
    hyperplane_lp,
    parse_orlib,
    relax_lp,
    solve,
    to_orlib,
    validate,
)

__all__ = [
    "Algorithm",
    "BruteForceResult",
    "InitBounds",
    "LpError",
    "LpSolution",
    "MkpInstance",
    "ParseError",
    "RunResult",
    "__version__",
    "aggregate",
    "brute_force_opt",
    "compute_bounds",
    "decode",
    "gap",
    "generate_random",
    "greedy_lower_bound",
    "hyperplane_lp",
    "parse_orlib",
    "relax_lp",
    "solve",
    "to_orlib",
    "validate",
]
