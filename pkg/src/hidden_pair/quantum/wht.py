"""Amplitude-level simulation of the single max-inner-product query circuit.

The answer register only contributes the phase (-1)^r(x), so the output
amplitude of |tau> is the Walsh-Hadamard transform of that sign vector,
divided by 2^n.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..core import BitString, HiddenPairInstance, Rng
from ..oracles import SUPERPOSED, MaxIPOracle
from .distribution import OutcomeDistribution

EXACT_CAP = 22


class CapExceeded(ValueError):
    pass


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along the last axis, in place.

    Length must be a power of two.  Integer input stays exact.
    """
    size = a.shape[-1]
    if size & (size - 1):
        raise ValueError("transform length must be a power of two")
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        lo = v[..., 0, :].copy()
        hi = v[..., 1, :]
        v[..., 0, :] += hi
        hi *= -1
        hi += lo
        h *= 2
    return a


def max_inner_products(instance: HiddenPairInstance) -> np.ndarray:
    """r(x) for every x, indexed by the integer value of x."""
    x = np.arange(1 << instance.n, dtype=np.uint64)
    a = np.bitwise_count(x & np.uint64(instance.s.value))
    b = np.bitwise_count(x & np.uint64(instance.s_prime.value))
    return np.maximum(a, b).astype(np.int64)


def phase_vector(instance: HiddenPairInstance) -> np.ndarray:
    r = max_inner_products(instance)
    return 1 - 2 * (r & 1)


def wht_spectrum(instance: HiddenPairInstance, cap: int = EXACT_CAP) -> np.ndarray:
    """Integer sums  sum_x (-1)^(r(x) + tau.x)  for every tau."""
    if instance.n > cap:
        raise CapExceeded(
            f"n={instance.n} exceeds the exact WHT cap {cap}; use the analytic sampler"
        )
    return fwht(phase_vector(instance))


@lru_cache(maxsize=256)
def _distribution(instance: HiddenPairInstance, cap: int) -> OutcomeDistribution:
    n = instance.n
    spectrum = wht_spectrum(instance, cap)
    denom = 1 << (2 * n)
    support = {
        BitString(n, int(tau)): Fraction(int(spectrum[tau]) ** 2, denom)
        for tau in np.flatnonzero(spectrum)
    }
    return OutcomeDistribution(n, support=support)


def _resolve(target) -> tuple[HiddenPairInstance, MaxIPOracle | None]:
    if isinstance(target, MaxIPOracle):
        return target._instance, target
    if isinstance(target, HiddenPairInstance):
        return target, None
    raise TypeError(f"expected a MaxIPOracle or HiddenPairInstance, got {type(target).__name__}")


def wht_distribution(target, cap: int = EXACT_CAP) -> OutcomeDistribution:
    """Exact measurement law of one superposed O_max query.

    ``target`` is a MaxIPOracle (charged one superposed query) or a bare
    instance (uncharged, for analysis).
    """
    instance, oracle = _resolve(target)
    dist = _distribution(instance, cap)
    if oracle is not None:
        oracle.charge(SUPERPOSED)
    return dist


def analytic_algorithm1_sample(target, rng: Rng) -> BitString:
    """Draw from {s, s', s AND s', s OR s'} uniformly, without building 2^n amplitudes."""
    instance, oracle = _resolve(target)
    if oracle is not None:
        oracle.charge(SUPERPOSED)
    outcomes = (instance.s, instance.s_prime, instance.meet, instance.join)
    return outcomes[rng.randbelow(4)]
