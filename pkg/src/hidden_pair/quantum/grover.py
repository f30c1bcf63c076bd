"""Grover search over an explicit candidate list, simulated in the 2-D rotation picture."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..core import BitString, Rng
from ..oracles import GROVER, SubsetOracle

DEFAULT_MAX_ROUNDS = 8


@dataclass(frozen=True)
class GroverPlan:
    N: int
    M: int
    iterations: int
    theta: float
    success_probability: float


def rotation_success(N: int, M: int, iterations: int) -> float:
    """sin^2((2r+1) theta) with theta = arcsin(sqrt(M/N)); M may be 0 here."""
    if M == 0:
        return 0.0
    if M == N:
        return 1.0
    theta = math.asin(math.sqrt(M / N))
    return math.sin((2 * iterations + 1) * theta) ** 2


def grover_plan(N: int, M: int) -> GroverPlan:
    if N < 1:
        raise ValueError("search space must be non-empty")
    if not 1 <= M <= N:
        raise ValueError(f"marked count {M} must lie in [1, {N}]")
    theta = math.asin(math.sqrt(M / N))
    r = max(0, math.floor(math.pi / 4 * math.sqrt(N / M)))
    return GroverPlan(N, M, r, theta, rotation_success(N, M, r))


def grover_find_marked(
    oracle: SubsetOracle,
    candidates: list[BitString],
    rng: Rng,
    expected_marked: int = 2,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    query_budget: int | None = None,
) -> set[BitString]:
    """Find the marked candidates one at a time.

    Each stage plans its iteration count for the marked count it expects
    (2, then 1 after the first find is removed), charges one sub-set query per
    iteration, measures, and checks the measured string with one classical
    query.  A string that fails the check is known unmarked and leaves the
    pool before the next round is planned.  A stage gives up after
    ``max_rounds`` measurements; the whole search stops early rather than
    exceed ``query_budget``.  Returns whatever was verified, so fewer than
    ``expected_marked`` elements means failure.
    """
    if len(set(candidates)) != len(candidates):
        raise ValueError("candidates must be distinct")
    pool = list(candidates)
    found: set[BitString] = set()
    spent = 0
    for stage in range(expected_marked):
        hit = None
        for _ in range(max_rounds):
            if not pool:
                return found
            plan = grover_plan(len(pool), min(expected_marked - stage, len(pool)))
            cost = plan.iterations + 1
            if query_budget is not None and spent + cost > query_budget:
                return found
            # the circuit itself sees the true marking; the schedule does not
            flags = [bool(oracle._evaluate(c)) for c in pool]
            marked = [c for c, f in zip(pool, flags) if f]
            unmarked = [c for c, f in zip(pool, flags) if not f]
            p_hit = rotation_success(len(pool), len(marked), plan.iterations)
            oracle.charge(GROVER, plan.iterations)
            spent += cost
            if marked and (not unmarked or rng.random() < p_hit):
                measured = marked[rng.randbelow(len(marked))]
            else:
                measured = unmarked[rng.randbelow(len(unmarked))]
            pool.remove(measured)
            if oracle.value(measured):
                hit = measured
                break
        if hit is None:
            return found
        found.add(hit)
    return found
