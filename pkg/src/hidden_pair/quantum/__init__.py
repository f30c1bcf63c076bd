from .ball import (
    BallSpec,
    ball_distribution,
    ball_sample,
    ball_size,
    default_k,
    gaussian_failure_bound,
    krawtchouk,
    krawtchouk_column,
    lambda_k,
    partial_krawtchouk_sums,
)
from .distribution import OutcomeDistribution
from .grover import GroverPlan, grover_find_marked, grover_plan, rotation_success
from .wht import (
    EXACT_CAP,
    CapExceeded,
    analytic_algorithm1_sample,
    fwht,
    wht_distribution,
    wht_spectrum,
)

__all__ = [
    "BallSpec",
    "CapExceeded",
    "EXACT_CAP",
    "GroverPlan",
    "OutcomeDistribution",
    "analytic_algorithm1_sample",
    "ball_distribution",
    "ball_sample",
    "ball_size",
    "default_k",
    "fwht",
    "gaussian_failure_bound",
    "grover_find_marked",
    "grover_plan",
    "krawtchouk",
    "krawtchouk_column",
    "lambda_k",
    "partial_krawtchouk_sums",
    "rotation_success",
    "wht_distribution",
    "wht_spectrum",
]
