"""Identification with the sub-set oracle: recover s OR s', then Grover over its one-bit shrinks."""

from __future__ import annotations

import math

from ..core import BitString, HiddenPairInstance, Rng
from ..oracles import SubsetOracle
from ..quantum.ball import BallSpec, ball_sample, default_k, lambda_k
from ..quantum.grover import DEFAULT_MAX_ROUNDS, grover_find_marked

# with the default k, total queries stay within n/2 + GROVER_C * sqrt(n):
# the Grover phase may spend at most (GROVER_C - 1) * sqrt(n)
GROVER_C = 5


def resolve_k(n: int, k: int | None = None, lam: float | None = None) -> int:
    if k is not None and lam is not None:
        raise ValueError("give k or lambda, not both")
    if k is not None:
        if not 0 <= k <= n:
            raise ValueError(f"k={k} outside [0, {n}]")
        return k
    if lam is not None:
        return lambda_k(n, lam)
    return default_k(n)


def query_budget(n: int, c: float = GROVER_C) -> int:
    return math.floor(n / 2 + c * math.sqrt(n))


def grover_allowance(n: int, c: float = GROVER_C) -> int:
    return max(0, math.floor((c - 1) * math.sqrt(n)))


def subset_or_recover(
    oracle: SubsetOracle,
    rng: Rng,
    k: int | None = None,
    lam: float | None = None,
) -> BitString:
    """Estimate t = s OR s' from one ball-circuit measurement (k superposed queries)."""
    spec = BallSpec(oracle.n, resolve_k(oracle.n, k, lam))
    return ball_sample(spec, oracle._instance.join, rng, oracle)


def delta_t(t: BitString) -> list[BitString]:
    """Strings obtained from t by clearing exactly one of its 1s (|t| of them)."""
    return [t.with_bit(j, 0) for j in t.positions()]


def subset_identify(
    oracle: SubsetOracle,
    rng: Rng,
    k: int | None = None,
    lam: float | None = None,
    c: float = GROVER_C,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> frozenset[BitString] | None:
    return subset_identify_traced(oracle, rng, k, lam, c, max_rounds)[0]


def subset_identify_traced(
    oracle: SubsetOracle,
    rng: Rng,
    k: int | None = None,
    lam: float | None = None,
    c: float = GROVER_C,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> tuple[frozenset[BitString] | None, BitString]:
    """Like subset_identify, also returning the recovered t."""
    n = oracle.n
    k = resolve_k(n, k, lam)
    t_hat = subset_or_recover(oracle, rng, k=k)
    found = grover_find_marked(
        oracle,
        delta_t(t_hat),
        rng,
        expected_marked=2,
        max_rounds=max_rounds,
        query_budget=grover_allowance(n, c),
    )
    if len(found) != 2:
        return None, t_hat
    a, b = found
    # a wrong t_hat can yield two marked strings that break the promise
    try:
        HiddenPairInstance(n, a, b)
    except ValueError:
        return None, t_hat
    return frozenset(found), t_hat
