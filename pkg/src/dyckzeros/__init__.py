"""Partition-function zeros of adsorbing Dyck paths.

Exact partition polynomials, certified multiprecision zeros, the limacon
on which the zeros accumulate, and asymptotic approximations to them.
"""

from .asymptotics import (
    ApproxZero,
    LeadingZeroConstants,
    a_double_prime,
    a_prime,
    leading_zero_prediction,
    refine_zero_beta,
    solve_leading_constants,
)
from .erf import erf_complex
from .exactpf import (
    PartitionPolynomial,
    catalan,
    evaluate,
    evaluate_exact,
    partition_polynomial,
    partition_polynomial_recurrence,
    visit_counts_dp,
)
from .rootfind import PrecisionPolicy, ZeroSet, find_zeros, leading_zero
from .singularity import classify, limacon_limit, limacon_point

__version__ = "0.1.0"

__all__ = [
    "ApproxZero",
    "LeadingZeroConstants",
    "PartitionPolynomial",
    "PrecisionPolicy",
    "ZeroSet",
    "a_double_prime",
    "a_prime",
    "catalan",
    "classify",
    "erf_complex",
    "evaluate",
    "evaluate_exact",
    "find_zeros",
    "leading_zero",
    "leading_zero_prediction",
    "limacon_limit",
    "limacon_point",
    "partition_polynomial",
    "partition_polynomial_recurrence",
    "refine_zero_beta",
    "solve_leading_constants",
    "visit_counts_dp",
    "__version__",
]
