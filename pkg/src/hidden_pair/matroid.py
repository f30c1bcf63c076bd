"""Two-bases matroids and their rank / independence oracles.

Subsets of the ground set {1..n} map to n-bit indicator strings; under that
map the rank oracle is the max-inner-product oracle and the independence
oracle is the sub-set oracle over {chi(B), chi(B')}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algorithms.maxip import DEFAULT_OMEGA, maxip_identify
from .algorithms.subset import subset_identify
from .core import BitString, HiddenPairInstance, Rng
from .oracles import MaxIPOracle, QueryLedger, SubsetOracle

AXIOM_CAP = 16


def chi(members: Iterable[int], n: int) -> BitString:
    return BitString.from_positions(n, members)


def chi_inverse(x: BitString) -> frozenset[int]:
    return frozenset(x.positions())


@dataclass(frozen=True)
class TwoBasesMatroid:
    n: int
    base: BitString
    other_base: BitString

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"ground set must have n >= 3 elements, got {self.n}")
        if self.base.n != self.n or self.other_base.n != self.n:
            raise ValueError("bases must be encoded over the n-element ground set")
        if self.base.weight != self.other_base.weight:
            raise ValueError("bases must have equal size")
        if (self.base ^ self.other_base).weight != 2:
            raise ValueError("bases must have a symmetric difference of exactly 2 elements")

    @classmethod
    def from_sets(cls, n: int, B: Iterable[int], B_prime: Iterable[int]) -> TwoBasesMatroid:
        return cls(n, chi(B, n), chi(B_prime, n))

    @classmethod
    def from_json(cls, data: dict) -> TwoBasesMatroid:
        bases = data.get("bases")
        if not isinstance(bases, list) or len(bases) != 2:
            raise ValueError("'bases' must be a list of two indicator strings")
        a, b = (BitString.parse(x) for x in bases)
        n = data.get("n", a.n)
        if a.n != n or b.n != n:
            raise ValueError(f"bases must have length n={n}")
        return cls(n, a, b)

    def to_json(self) -> dict:
        return {"n": self.n, "bases": [str(self.base), str(self.other_base)]}

    @property
    def bases(self) -> frozenset[frozenset[int]]:
        return frozenset((chi_inverse(self.base), chi_inverse(self.other_base)))

    @property
    def rank(self) -> int:
        return self.base.weight

    def as_instance(self) -> HiddenPairInstance:
        return HiddenPairInstance(self.n, self.base, self.other_base)

    def is_independent(self, members: Iterable[int]) -> bool:
        x = chi(members, self.n)
        return x.issubset(self.base) or x.issubset(self.other_base)


class RankOracle:
    """O_r(A) = O_max(chi(A)); queries land on the wrapped oracle's ledger."""

    def __init__(self, matroid: TwoBasesMatroid, ledger: QueryLedger | None = None):
        self.matroid = matroid
        self.oracle = MaxIPOracle(matroid.as_instance(), ledger)

    @property
    def ledger(self) -> QueryLedger:
        return self.oracle.ledger

    def __call__(self, members: Iterable[int]) -> int:
        return self.oracle.value(chi(members, self.matroid.n))


class IndependenceOracle:
    """O_i(A) = O_sub(chi(A))."""

    def __init__(self, matroid: TwoBasesMatroid, ledger: QueryLedger | None = None):
        self.matroid = matroid
        self.oracle = SubsetOracle(matroid.as_instance(), ledger)

    @property
    def ledger(self) -> QueryLedger:
        return self.oracle.ledger

    def __call__(self, members: Iterable[int]) -> int:
        return self.oracle.value(chi(members, self.matroid.n))


def rank_oracle(m: TwoBasesMatroid, members: Iterable[int], oracle: RankOracle | None = None) -> int:
    return (oracle or RankOracle(m))(members)


def independence_oracle(m: TwoBasesMatroid, members: Iterable[int], oracle: IndependenceOracle | None = None) -> int:
    return (oracle or IndependenceOracle(m))(members)


def check_independence_axioms(n: int, generators: Iterable[Iterable[int]]) -> bool:
    """Check I0-I2 for the downward closure of ``generators`` over {1..n}.

    Every independent set A is visited.  Augmentation fails at A exactly when
    some independent set of size |A|+1 avoids every element that extends A,
    i.e. when the largest independent subset of A plus the non-extending
    elements is bigger than A.
    """
    if n > AXIOM_CAP:
        raise ValueError(f"axiom check is exhaustive; n={n} exceeds cap {AXIOM_CAP}")
    gens = [chi(g, n).value for g in generators]
    full = (1 << n) - 1

    def independent(a: int) -> bool:
        return any(a & g == a for g in gens)

    def largest_inside(y: int) -> int:
        return max((y & g).bit_count() for g in gens)

    if not gens or not independent(0):
        return False
    family = set()
    for g in gens:
        sub = g
        while True:
            family.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & g
    for a in family:
        # I1: all one-element shrinks stay independent
        rest = a
        while rest:
            low = rest & -rest
            if (a ^ low) not in family:
                return False
            rest ^= low
        outside = full & ~a
        extending = 0
        rest = outside
        while rest:
            low = rest & -rest
            if (a | low) in family:
                extending |= low
            rest ^= low
        if largest_inside(full & ~extending) > a.bit_count():
            return False
    return True


def validate_matroid_axioms(m: TwoBasesMatroid) -> bool:
    return check_independence_axioms(m.n, [m.base.positions(), m.other_base.positions()])


@dataclass
class BasesResult:
    bases: frozenset[frozenset[int]] | None
    ledger: QueryLedger

    @property
    def success(self) -> bool:
        return self.bases is not None


def identify_bases(
    m: TwoBasesMatroid,
    kind: str,
    rng: Rng,
    omega: int = DEFAULT_OMEGA,
    mode: str = "analytic",
    **subset_options,
) -> BasesResult:
    """Run the string identification against the matroid's own oracle."""
    if kind == "rank":
        wrapper = RankOracle(m)
        pair = maxip_identify(wrapper.oracle, rng, omega=omega, mode=mode)
    elif kind == "independence":
        wrapper = IndependenceOracle(m)
        pair = subset_identify(wrapper.oracle, rng, **subset_options)
    else:
        raise ValueError(f"unknown oracle kind {kind!r}; expected 'rank' or 'independence'")
    bases = None if pair is None else frozenset(chi_inverse(x) for x in pair)
    return BasesResult(bases, wrapper.ledger)
