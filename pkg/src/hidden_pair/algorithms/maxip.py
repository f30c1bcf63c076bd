"""Constant-query identification with the max-inner-product oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from ..core import BitString, Rng, unit_string
from ..oracles import MaxIPOracle
from ..quantum.wht import EXACT_CAP, analytic_algorithm1_sample, wht_distribution

DEFAULT_OMEGA = 7
MODES = ("exact", "analytic")


def maxip_extract(oracle: MaxIPOracle, rng: Rng, mode: str = "analytic", cap: int = EXACT_CAP) -> BitString:
    """One measurement of the single-query circuit; costs one superposed query.

    ``exact`` samples the Walsh-Hadamard law computed from all 2^n phases,
    ``analytic`` samples its closed form directly.
    """
    if mode == "exact":
        return wht_distribution(oracle, cap).sample(rng)
    if mode == "analytic":
        return analytic_algorithm1_sample(oracle, rng)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def combine_samples(samples: Sequence[BitString]) -> frozenset[BitString] | None:
    """Recover {s, s'} from measured strings, or None.

    Two distinct strings of equal weight are the pair itself.  Otherwise a
    string two heavier than another is s OR s' over s AND s', and the two
    positions where they differ rebuild the pair.
    """
    distinct = list(dict.fromkeys(samples))
    for a_idx, a in enumerate(distinct):
        for b in distinct[a_idx + 1:]:
            if a.weight == b.weight:
                return frozenset((a, b))
    for hi in distinct:
        for lo in distinct:
            if hi.weight - lo.weight == 2:
                diff = (hi ^ lo).positions()
                if len(diff) != 2:
                    raise AssertionError(f"weight gap 2 but {len(diff)} differing bits; sampler corrupted")
                l1, l2 = diff
                return frozenset((lo | unit_string(lo.n, l1), lo | unit_string(lo.n, l2)))
    return None


def maxip_identify(
    oracle: MaxIPOracle,
    rng: Rng,
    omega: int = DEFAULT_OMEGA,
    mode: str = "analytic",
) -> frozenset[BitString] | None:
    if omega < 2:
        raise ValueError("omega must be at least 2")
    samples = [maxip_extract(oracle, rng, mode) for _ in range(omega)]
    return combine_samples(samples)


@dataclass(frozen=True)
class VoteTally:
    """Occurrence counts of s, s', s AND s', s OR s' among omega measurements."""

    a: int
    b: int
    c: int
    d: int

    @property
    def omega(self) -> int:
        return self.a + self.b + self.c + self.d

    def identifies(self) -> bool:
        return self.a * self.b > 0 or self.c * self.d > 0

    def probability(self) -> Fraction:
        w = self.omega
        coeff = factorial(w) // (factorial(self.a) * factorial(self.b) * factorial(self.c) * factorial(self.d))
        return Fraction(coeff, 4 ** w)


def tallies(omega: int):
    for a in range(omega + 1):
        for b in range(omega + 1 - a):
            for c in range(omega + 1 - a - b):
                yield VoteTally(a, b, c, omega - a - b - c)


def algorithm2_success_probability(omega: int) -> Fraction:
    """Exact multinomial sum over tallies with ab > 0 or cd > 0."""
    if omega < 1:
        raise ValueError("omega must be positive")
    return sum((t.probability() for t in tallies(omega) if t.identifies()), Fraction(0))


def algorithm2_success_closed_form(omega: int) -> Fraction:
    # failure = outcomes confined to one of {s,s'} and one of {s&s', s|s'}
    return 1 - Fraction(4, 2 ** omega) + Fraction(4, 4 ** omega)


def minimal_omega(target: Fraction | float = Fraction(95, 100)) -> int:
    omega = 1
    while algorithm2_success_probability(omega) < target:
        omega += 1
    return omega
