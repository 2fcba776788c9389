"""Ordered k-median / l-centrum solvers (python bindings for the C++ core)."""

from ._core import (
    CentrumDiag,
    CertificateError,
    LpReduceDiag,
    MetricInstance,
    OrderedDiag,
    ResourceCapError,
    Solution,
    UsageError,
    brute_force_ordered,
    centrum_weights,
    find_Bbar,
    gen_random_metric,
    lp_value,
    metric_from_points,
    ordered_cost,
    run_bench,
    solve_centrum_lp_reduce,
    solve_centrum_pd,
    solve_ordered,
    truncate_weights,
    validate_metric,
)

__all__ = [
    "CentrumDiag",
    "CertificateError",
    "LpReduceDiag",
    "MetricInstance",
    "OrderedDiag",
    "ResourceCapError",
    "Solution",
    "UsageError",
    "brute_force_ordered",
    "centrum_weights",
    "find_Bbar",
    "gen_random_metric",
    "lp_value",
    "metric_from_points",
    "ordered_cost",
    "run_bench",
    "solve_centrum_lp_reduce",
    "solve_centrum_pd",
    "solve_ordered",
    "truncate_weights",
    "validate_metric",
]
