"""Exact law of the Hamming-ball phase-oracle circuit via Krawtchouk sums.

Starting from the uniform superposition over {x : |x| <= k}, applying the
phase (-1)^(x.t) and a Hadamard layer gives

    amp(tau) = (M_k 2^n)^(-1/2) * sum_{|x| <= k} (-1)^(x.(t XOR tau)),

which depends on tau only through d = |t XOR tau|.  The inner sum is the
partial Krawtchouk sum  sum_{i<=k} K_i(d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from ..core import BitString, Rng
from ..oracles import SUPERPOSED, SubsetOracle
from .distribution import OutcomeDistribution


def krawtchouk(n: int, i: int, d: int) -> int:
    """K_i(d) = sum_j (-1)^j C(d, j) C(n-d, i-j), by the defining double sum."""
    return sum((-1) ** j * comb(d, j) * comb(n - d, i - j) for j in range(0, min(i, d) + 1))


def krawtchouk_column(n: int, d: int, kmax: int) -> list[int]:
    """[K_0(d), ..., K_kmax(d)] from the three-term recurrence in i."""
    out = [1]
    if kmax >= 1:
        out.append(n - 2 * d)
    for i in range(1, kmax):
        num = (n - 2 * d) * out[i] - (n - i + 1) * out[i - 1]
        q, rem = divmod(num, i + 1)
        if rem:
            raise ArithmeticError("Krawtchouk recurrence produced a non-integer")
        out.append(q)
    return out


def ball_size(n: int, k: int) -> int:
    """M_k = sum_{i<=k} C(n, i)."""
    return sum(comb(n, i) for i in range(k + 1))


@lru_cache(maxsize=64)
def partial_krawtchouk_sums(n: int, k: int) -> tuple[int, ...]:
    """S(d) = sum_{i<=k} K_i(d) for d = 0..n."""
    return tuple(sum(krawtchouk_column(n, d, k)) for d in range(n + 1))


def default_k(n: int) -> int:
    """floor(n/2 + sqrt(n)), computed without floating point."""
    return lambda_k(n, 1)


def lambda_k(n: int, lam) -> int:
    """floor(n/2 + lam*sqrt(n)) clamped to [0, n]; exact for rational lam."""
    lam = Fraction(lam)
    # find the largest k with 2k - n <= 2 lam sqrt(n)
    def fits(k):
        lhs = 2 * k - n
        if lam >= 0:
            return lhs <= 0 or lhs * lhs <= 4 * lam * lam * n
        return lhs < 0 and lhs * lhs >= 4 * lam * lam * n

    k = n
    while k > 0 and not fits(k):
        k -= 1
    return k if fits(k) else 0


def gaussian_failure_bound(lam: float) -> float:
    """Large-n bound on Pr(tau != t) for k = n/2 + lam sqrt(n): Q(2 lam) <= exp(-2 lam^2)/2."""
    return 0.5 * math.exp(-2 * lam * lam)


@dataclass(frozen=True)
class BallSpec:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"threshold k={self.k} outside [0, {self.n}]")

    @classmethod
    def default(cls, n: int) -> BallSpec:
        return cls(n, default_k(n))

    @property
    def M_k(self) -> int:
        return ball_size(self.n, self.k)

    def hit_probability(self) -> Fraction:
        """Pr(tau = t) = M_k / 2^n."""
        return Fraction(self.M_k, 1 << self.n)


@lru_cache(maxsize=64)
def _class_law(n: int, k: int) -> dict[int, Fraction]:
    sums = partial_krawtchouk_sums(n, k)
    denom = ball_size(n, k) << n
    return {d: Fraction(s * s, denom) for d, s in enumerate(sums)}


def _charge(oracle: SubsetOracle | None, spec: BallSpec):
    if oracle is not None:
        if oracle.n != spec.n:
            raise ValueError("oracle length does not match the ball")
        oracle.charge(SUPERPOSED, spec.k)


def ball_distribution(spec: BallSpec, t: BitString, oracle: SubsetOracle | None = None) -> OutcomeDistribution:
    """Weight-class law of the measured register; one A_k use costs k sub-set queries."""
    if t.n != spec.n:
        raise ValueError(f"length mismatch: {t.n} vs {spec.n}")
    _charge(oracle, spec)
    return OutcomeDistribution(spec.n, center=t, weight_class=_class_law(spec.n, spec.k))


@lru_cache(maxsize=64)
def _class_sampler(n: int, k: int) -> tuple[list[int], int]:
    sums = partial_krawtchouk_sums(n, k)
    cumulative = []
    acc = 0
    for d, s in enumerate(sums):
        acc += comb(n, d) * s * s
        cumulative.append(acc)
    return cumulative, acc


def ball_sample(spec: BallSpec, t: BitString, rng: Rng, oracle: SubsetOracle | None = None) -> BitString:
    """Draw the distance class with weight C(n,d) S(d)^2, then a uniform string in it."""
    if t.n != spec.n:
        raise ValueError(f"length mismatch: {t.n} vs {spec.n}")
    _charge(oracle, spec)
    cumulative, total = _class_sampler(spec.n, spec.k)
    u = rng.randbelow(total)
    lo, hi = 0, len(cumulative) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if cumulative[mid] > u:
            hi = mid
        else:
            lo = mid + 1
    d = lo
    if d == 0:
        return t
    flips = rng.sample(list(range(1, spec.n + 1)), d)
    return t ^ BitString.from_positions(spec.n, flips)
