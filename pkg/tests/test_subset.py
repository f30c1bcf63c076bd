import math

import pytest

from hidden_pair.algorithms import (
    GROVER_C,
    delta_t,
    grover_allowance,
    query_budget,
    resolve_k,
    subset_identify,
    subset_identify_traced,
    subset_or_recover,
)
from hidden_pair.core import BitString, HiddenPairInstance, Rng, enumerate_instances, random_instance
from hidden_pair.oracles import SubsetOracle
from hidden_pair.quantum import BallSpec

B = BitString.parse


def test_delta_t():
    assert delta_t(B("111")) == [B("011"), B("101"), B("110")]
    assert delta_t(B("000")) == []
    t = B("1011001110")
    out = delta_t(t)
    assert len(out) == t.weight
    assert all(x.weight == t.weight - 1 and x.issubset(t) for x in out)


def test_n3_recovers_t_exactly(small):
    rng = Rng(0)
    for _ in range(200):
        o = SubsetOracle(small)
        assert subset_or_recover(o, rng) == B("111")
        assert o.ledger["superposed"] == 3


@pytest.mark.parametrize("n", range(3, 8))
def test_identify_all_small_instances(n):
    rng = Rng(n)
    for inst in enumerate_instances(n):
        o = SubsetOracle(inst)
        out, t_hat = subset_identify_traced(o, rng)
        # a wrong answer can only come from a wrong estimate of t
        assert out is None or out == inst.pair or t_hat != inst.join
        if t_hat == inst.join:
            assert out in (None, inst.pair)
        assert o.queries <= query_budget(n)


def test_n3_always_succeeds():
    rng = Rng(3)
    for inst in enumerate_instances(3):
        for _ in range(20):
            assert subset_identify(SubsetOracle(inst), rng) == inst.pair


def test_n10_hit_rate():
    rng = Rng(10)
    trials = 20_000
    hits = 0
    for _ in range(trials):
        inst = random_instance(10, rng)
        _, t_hat = subset_identify_traced(SubsetOracle(inst), rng)
        hits += t_hat == inst.join
    p = 1013 / 1024
    assert abs(hits / trials - p) <= 4 * (p * (1 - p) / trials) ** 0.5


def test_resolve_k():
    assert resolve_k(100) == 60
    assert resolve_k(100, k=10) == 10
    assert resolve_k(100, lam=2) == 70
    with pytest.raises(ValueError):
        resolve_k(100, k=3, lam=1)
    with pytest.raises(ValueError):
        resolve_k(10, k=11)


@pytest.mark.parametrize("n", [3, 16, 64, 100, 256, 1000])
def test_budget_arithmetic(n):
    k = BallSpec.default(n).k
    assert query_budget(n) == math.floor(n / 2 + GROVER_C * math.sqrt(n))
    assert k + grover_allowance(n) <= query_budget(n)


def test_budget_n1000():
    assert query_budget(1000) == 658
    assert resolve_k(1000) == 531


@pytest.mark.parametrize("n", [16, 64, 256])
def test_ledger_within_budget(n):
    rng = Rng(n + 1)
    worst = 0
    for _ in range(300):
        o = SubsetOracle(random_instance(n, rng))
        subset_identify(o, rng)
        worst = max(worst, o.queries)
    assert worst <= query_budget(n)


def test_outputs_obey_promise_under_small_ball():
    # a tiny ball rarely recovers t; outputs then may be wrong but still promise-shaped
    rng = Rng(4)
    inst = HiddenPairInstance.from_strings("11110000", "11101000")
    for _ in range(500):
        out, t_hat = subset_identify_traced(SubsetOracle(inst), rng, k=1)
        if out is not None:
            a, b = out
            HiddenPairInstance(8, a, b)
            assert (out == inst.pair) == (a | b == inst.join) or t_hat != inst.join
