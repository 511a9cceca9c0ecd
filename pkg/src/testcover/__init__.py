"""Greedy and exact solvers for the test set problem with redundancy, plus bound checks."""
from .core import (
    DifferentiationState,
    InfeasibleError,
    Instance,
    InstanceFormatError,
    ItemPair,
    Solution,
    apply_test,
    differentiates,
    initial_measure,
    is_feasible,
    is_r_test_set,
    load_instance,
    make_instance,
    perp_count,
    validate_no_complements,
)
from .exact import OptimalCertificate, count_exactly_r, solve_exact
from .sga import SgaTrace, greedy_delta, run_sga

__all__ = [
    "DifferentiationState",
    "InfeasibleError",
    "Instance",
    "InstanceFormatError",
    "ItemPair",
    "OptimalCertificate",
    "SgaTrace",
    "Solution",
    "apply_test",
    "count_exactly_r",
    "differentiates",
    "greedy_delta",
    "initial_measure",
    "is_feasible",
    "is_r_test_set",
    "load_instance",
    "make_instance",
    "perp_count",
    "run_sga",
    "solve_exact",
    "validate_no_complements",
]
