from .bounds import LowerBounds, ceil_log, lower_bounds
from .classical import classical_maxip_identify, classical_subset_identify
from .maxip import (
    DEFAULT_OMEGA,
    VoteTally,
    algorithm2_success_closed_form,
    algorithm2_success_probability,
    combine_samples,
    maxip_extract,
    maxip_identify,
    minimal_omega,
)
from .subset import (
    GROVER_C,
    delta_t,
    grover_allowance,
    query_budget,
    resolve_k,
    subset_identify,
    subset_identify_traced,
    subset_or_recover,
)

__all__ = [
    "DEFAULT_OMEGA",
    "GROVER_C",
    "LowerBounds",
    "VoteTally",
    "algorithm2_success_closed_form",
    "algorithm2_success_probability",
    "ceil_log",
    "classical_maxip_identify",
    "classical_subset_identify",
    "combine_samples",
    "delta_t",
    "grover_allowance",
    "lower_bounds",
    "maxip_extract",
    "maxip_identify",
    "minimal_omega",
    "query_budget",
    "resolve_k",
    "subset_identify",
    "subset_identify_traced",
    "subset_or_recover",
]
