import math

import pytest

from hidden_pair.algorithms import (
    ceil_log,
    classical_maxip_identify,
    classical_subset_identify,
    lower_bounds,
)
from hidden_pair.core import enumerate_instances, instance_count
from hidden_pair.oracles import MaxIPOracle, SubsetOracle

from .conftest import brute_force_pairs


@pytest.mark.parametrize("n", range(3, 9))
def test_classical_subset_exhaustive(n):
    for inst in enumerate_instances(n):
        o = SubsetOracle(inst)
        assert classical_subset_identify(o) == inst.pair
        assert n <= o.queries <= 2 * n


@pytest.mark.parametrize("n", range(3, 9))
def test_classical_maxip_exhaustive(n):
    for inst in enumerate_instances(n):
        o = MaxIPOracle(inst)
        assert classical_maxip_identify(o) == inst.pair
        assert n <= o.queries <= n + inst.join.weight - 1
        assert o.queries <= 2 * n


@pytest.mark.parametrize("n", range(3, 11))
def test_instance_count_matches_brute_force(n):
    assert instance_count(n) == len(brute_force_pairs(n)) == n * (n - 1) * 2 ** (n - 3)


@pytest.mark.parametrize("n, C_i, C_s", [(3, 2, 3), (8, 4, 11), (256, 34, 269)])
def test_bound_values(n, C_i, C_s):
    b = lower_bounds(n)
    assert (b.C_i, b.C_s) == (C_i, C_s)


@pytest.mark.parametrize("n", range(3, 60))
def test_bounds_against_float_logs(n):
    b = lower_bounds(n)
    assert b.N == n * (n - 1) * 2 ** (n - 3)
    # logs are never exact integers here except powers, so float ceil is safe after a guard
    assert n ** (b.C_i - 1) < b.N <= n ** b.C_i
    assert 2 ** (b.C_s - 1) < b.N <= 2 ** b.C_s
    assert b.C_s == math.ceil(math.log2(b.N)) or b.N & (b.N - 1) == 0


def test_ceil_log():
    assert ceil_log(2, 1) == 0
    assert ceil_log(2, 8) == 3
    assert ceil_log(2, 9) == 4
    assert ceil_log(3, 6) == 2
    with pytest.raises(ValueError):
        ceil_log(1, 5)
