"""Deterministic classical baselines.

Neither strategy is claimed optimal; they exist to put measured classical
query counts next to the information-theoretic lower bounds.
"""

from __future__ import annotations

from ..core import BitString, unit_string
from ..oracles import MaxIPOracle, SubsetOracle
from .subset import delta_t


def classical_subset_identify(oracle: SubsetOracle) -> frozenset[BitString]:
    n = oracle.n
    t = BitString.from_positions(n, [j for j in range(1, n + 1) if oracle.value(unit_string(n, j))])
    candidates = delta_t(t)
    found = []
    for idx, cand in enumerate(candidates):
        left = len(candidates) - idx
        if left == 2 - len(found):
            # the promise guarantees the rest are marked
            found.extend(candidates[idx:])
            break
        if oracle.value(cand):
            found.append(cand)
            if len(found) == 2:
                break
    return frozenset(found)


def classical_maxip_identify(oracle: MaxIPOracle) -> frozenset[BitString]:
    """Unit queries give t = s OR s'; then dropping one position p of t lowers
    the max inner product to |s|-1 exactly when p is shared by s and s'.
    Uses at most n + |t| - 1 queries.
    """
    n = oracle.n
    t = BitString.from_positions(n, [j for j in range(1, n + 1) if oracle.value(unit_string(n, j))])
    weight = t.weight - 1
    ones = t.positions()
    differing = []
    for idx, p in enumerate(ones):
        if len(differing) == 2:
            break
        if len(ones) - idx == 2 - len(differing):
            differing.extend(ones[idx:])
            break
        if oracle.value(t.with_bit(p, 0)) == weight:
            differing.append(p)
    i, j = differing
    return frozenset((t.with_bit(i, 0), t.with_bit(j, 0)))
