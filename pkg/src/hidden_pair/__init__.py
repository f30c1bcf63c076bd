"""Query-metered simulation of hidden pair identification.

A hidden pair is two n-bit strings of equal weight at Hamming distance 2.
The package provides the max-inner-product and sub-set oracles with exact
query accounting, exact amplitude engines for the quantum procedures,
classical baselines, lower-bound formulas and the 2-bases matroid reduction.
"""

from .core import (
    BitString,
    HiddenPairInstance,
    Rng,
    enumerate_instances,
    inner_product,
    instance_count,
    random_instance,
    unit_string,
)
from .oracles import MaxIPOracle, QueryLedger, SubsetOracle, maxip_value, subset_value

__version__ = "0.1.0"

__all__ = [
    "BitString",
    "HiddenPairInstance",
    "MaxIPOracle",
    "QueryLedger",
    "Rng",
    "SubsetOracle",
    "enumerate_instances",
    "inner_product",
    "instance_count",
    "maxip_value",
    "random_instance",
    "subset_value",
    "unit_string",
]
