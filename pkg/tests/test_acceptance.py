"""End-to-end acceptance checks, one test per criterion.

Each test prints a single PASS/FAIL line (visible with ``-s``); the same
lines are repeated in the pytest terminal summary.
"""

import math
import time
from contextlib import contextmanager
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from hidden_pair import harness
from hidden_pair.algorithms import (
    GROVER_C,
    algorithm2_success_probability,
    classical_subset_identify,
    lower_bounds,
    maxip_identify,
    query_budget,
    subset_identify,
)
from hidden_pair.core import BitString, Rng, enumerate_instances, instance_count, random_instance, trial_seed
from hidden_pair.matroid import (
    IndependenceOracle,
    RankOracle,
    TwoBasesMatroid,
    chi_inverse,
    identify_bases,
)
from hidden_pair.oracles import MaxIPOracle, SubsetOracle, maxip_value, subset_value
from hidden_pair.quantum import BallSpec, ball_distribution, ball_size, default_k, partial_krawtchouk_sums, wht_distribution

from .conftest import brute_force_pairs

pytestmark = pytest.mark.slow

RESULTS: list[str] = []


@contextmanager
def criterion(number, title):
    started = time.perf_counter()
    notes = []
    try:
        yield notes
    except BaseException as exc:
        line = f"criterion {number:>2} FAIL  {title}: {type(exc).__name__}: {exc}"
        RESULTS.append(line)
        print("\n" + line)
        raise
    detail = f" ({'; '.join(notes)})" if notes else ""
    line = f"criterion {number:>2} PASS  {title}{detail} [{time.perf_counter() - started:.1f}s]"
    RESULTS.append(line)
    print("\n" + line)


def test_criterion_01_single_query_law():
    with criterion(1, "exact 1/4 law on {s, s', s AND s', s OR s'} for every instance, n=3..12") as notes:
        total = 0
        quarter = Fraction(1, 4)
        for n in range(3, 13):
            for inst in enumerate_instances(n):
                dist = wht_distribution(inst)
                expected = {inst.s: quarter, inst.s_prime: quarter, inst.meet: quarter, inst.join: quarter}
                assert dist.support == expected, f"n={n} instance {inst.to_json()}"
                total += 1
        notes.append(f"{total} instances")


def test_criterion_02_algorithm2_success():
    with criterion(2, "omega=7 success 0.968994140625 exact and by Monte-Carlo at n=8") as notes:
        p7 = algorithm2_success_probability(7)
        assert p7 == Fraction(3969, 4096)
        assert float(p7) == 0.968994140625
        assert algorithm2_success_probability(6) < Fraction(95, 100) <= p7
        trials = 100_000
        rng = Rng(20240)
        wins = 0
        for _ in range(trials):
            inst = random_instance(8, rng)
            wins += maxip_identify(MaxIPOracle(inst), rng, omega=7) == inst.pair
        rate = wins / trials
        four_sigma = 4 * math.sqrt(float(p7) * (1 - float(p7)) / trials)
        notes.append(f"empirical {rate:.5f}, |diff| {abs(rate - float(p7)):.5f} <= {four_sigma:.5f}")
        assert abs(rate - float(p7)) <= four_sigma


def brute_force_ball_law(n, k, t):
    """|sum_{|x|<=k} (-1)^{(t xor tau).x}|^2 / (M_k 2^n) for every tau, from the defining sum."""
    xs = np.arange(1 << n, dtype=np.int64)
    ball = xs[np.bitwise_count(xs) <= k]
    sums = np.empty(1 << n, dtype=np.int64)
    for tau in range(1 << n):
        parity = np.bitwise_count(ball & (t ^ tau)) & 1
        sums[tau] = len(ball) - 2 * int(parity.sum())
    return sums, ball_size(n, k) << n


def test_criterion_03_ball_hit_probability():
    with criterion(3, "p(tau=t) = M_k/2^n for n<=60; full law vs brute force for n<=14") as notes:
        for n in range(1, 61):
            spec = BallSpec(n, default_k(n))
            t = BitString(n, Rng(n).getrandbits(n))
            assert ball_distribution(spec, t).probability(t) == Fraction(spec.M_k, 2 ** n), f"n={n}"
        compared = 0
        for n in range(1, 15):
            k = default_k(n)
            t_value = Rng(100 + n).getrandbits(n)
            t = BitString(n, t_value)
            dist = ball_distribution(BallSpec(n, k), t)
            sums, denom = brute_force_ball_law(n, k, t_value)
            for tau in range(1 << n):
                s = int(sums[tau])
                assert dist.probability(BitString(n, tau)) == Fraction(s * s, denom), f"n={n} tau={tau}"
                compared += 1
        notes.append(f"{compared} brute-force entries")


def test_criterion_04_oscillation_row():
    with criterion(4, "M_k/2^n at n=998,999,1000 and the [3,1000] range") as notes:
        rows = {r["n"]: r for r in harness.oscillation_rows(3, 1000)}
        got = [round(rows[n]["p_exact"], 4) for n in (998, 999, 1000)]
        assert got == [0.9770, 0.9786, 0.9769], got
        for n in (998, 999, 1000):
            k = default_k(n)
            exact = Fraction(sum(comb(n, i) for i in range(k + 1)), 2 ** n)
            assert float(exact) == rows[n]["p_exact"]
        lo = min(r["p_exact"] for r in rows.values())
        hi = max(r["p_exact"] for r in rows.values())
        notes.append(f"min {lo:.6f}, max {hi}")
        assert lo >= 0.9648
        assert hi == 1


@pytest.fixture(scope="module")
def subset_runs():
    out = {}
    for n in (16, 64, 256):
        config = harness.ExperimentConfig(algorithm="subset", ns=[n], trials=10_000, seed=5)
        out[n] = list(harness.iter_reports(config))
    return out


def test_criterion_05_subset_end_to_end(subset_runs):
    with criterion(5, f"subset success >= 0.95 and ledger <= n/2 + {GROVER_C} sqrt(n), n=16,64,256") as notes:
        for n, reports in subset_runs.items():
            rate = sum(r["success"] for r in reports) / len(reports)
            worst = max(r["ledger"]["total"] for r in reports)
            cap = n / 2 + GROVER_C * math.sqrt(n)
            notes.append(f"n={n}: {rate:.4f}, max ledger {worst} <= {cap:g}")
            assert len(reports) == 10_000
            assert rate >= 0.95
            assert worst <= cap


def test_criterion_06_lower_bound_formulas():
    with criterion(6, "instance counts and C_i, C_s values"):
        for n in range(3, 11):
            b = lower_bounds(n)
            assert b.N == n * (n - 1) * 2 ** (n - 3) == len(brute_force_pairs(n)) == instance_count(n)
        assert (lower_bounds(3).C_i, lower_bounds(3).C_s) == (2, 3)
        assert (lower_bounds(8).C_i, lower_bounds(8).C_s) == (4, 11)


def test_criterion_07_separation(subset_runs):
    with criterion(7, "n=256 quantum ledgers below classical lower bounds") as notes:
        n = 256
        b = lower_bounds(n)
        rng = Rng(256)
        maxip_ledgers = set()
        for _ in range(200):
            o = MaxIPOracle(random_instance(n, rng))
            maxip_identify(o, rng)
            maxip_ledgers.add(o.ledger.total)
        assert maxip_ledgers == {7}
        assert 7 < b.C_i
        worst = max(r["ledger"]["total"] for r in subset_runs[n])
        assert worst <= 128 + GROVER_C * 16 < b.C_s
        classical = []
        for _ in range(200):
            o = SubsetOracle(random_instance(n, rng))
            assert classical_subset_identify(o) == o._instance.pair
            classical.append(o.ledger.total)
        assert min(classical) >= 256
        notes.append(f"7 < C_i={b.C_i}; subset max {worst} <= {query_budget(n)} < C_s={b.C_s}; "
                     f"classical min {min(classical)}")


def test_criterion_08_matroid_equivalence():
    with criterion(8, "matroid oracles equal string oracles; paired-seed identification") as notes:
        checked = 0
        for n in range(3, 11):
            for seed in range(3):
                inst = random_instance(n, 1000 * n + seed)
                m = TwoBasesMatroid(n, inst.s, inst.s_prime)
                rank, ind = RankOracle(m), IndependenceOracle(m)
                o_max, o_sub = MaxIPOracle(inst), SubsetOracle(inst)
                for v in range(1 << n):
                    x = BitString(n, v)
                    A = chi_inverse(x)
                    assert rank(A) == maxip_value(o_max, x)
                    assert ind(A) == subset_value(o_sub, x)
                    checked += 1
        trials = 500
        for n in (3, 8, 10):
            m = TwoBasesMatroid(n, *sorted(random_instance(n, n).pair, key=lambda b: b.value))
            for kind, run in (("rank", maxip_identify), ("independence", subset_identify)):
                wins_m = wins_s = 0
                for i in range(trials):
                    stream = trial_seed(7, i)
                    res = identify_bases(m, kind, Rng(stream))
                    o = (MaxIPOracle if kind == "rank" else SubsetOracle)(m.as_instance())
                    pair = run(o, Rng(stream))
                    mapped = None if pair is None else frozenset(chi_inverse(x) for x in pair)
                    assert res.bases == mapped
                    assert res.ledger.to_json() == o.ledger.to_json()
                    wins_m += res.bases == m.bases
                    wins_s += pair == m.as_instance().pair
                assert wins_m == wins_s
        notes.append(f"{checked} subsets compared")


def test_criterion_09_parseval():
    with criterion(9, "sum_d C(n,d) S_k(d)^2 = M_k 2^n for n<=60, all k") as notes:
        cases = 0
        for n in range(1, 61):
            for k in range(n + 1):
                sums = partial_krawtchouk_sums(n, k)
                assert sum(comb(n, d) * s * s for d, s in enumerate(sums)) == ball_size(n, k) << n
                cases += 1
        notes.append(f"{cases} (n, k) pairs")


def test_criterion_10_replay():
    with criterion(10, "reports replay byte-identically from embedded config and seed") as notes:
        replayed = 0
        for algorithm in harness.ALGORITHMS:
            for mode in harness.RUN_MODES:
                config = harness.ExperimentConfig(
                    algorithm=algorithm, ns=[5, 9], trials=40, seed=31, mode=mode, retries=1,
                )
                for report in harness.iter_reports(config):
                    line = harness.report_line(report)
                    assert harness.report_line(harness.replay_report(report)) == line
                    replayed += 1
        notes.append(f"{replayed} reports")
