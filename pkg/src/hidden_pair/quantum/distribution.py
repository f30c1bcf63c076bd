from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm

from ..core import BitString, Rng


def _fraction_json(p: Fraction) -> dict:
    return {"p": f"{p.numerator}/{p.denominator}", "p_float": float(p)}


@dataclass
class OutcomeDistribution:
    """Exact law of a measured n-bit register.

    Either ``support`` (sparse map outcome -> probability) or the weight-class
    form is populated.  The weight-class form stores, for each Hamming
    distance d from ``center``, the probability of every single string at that
    distance; C(n, d) strings share it.
    """

    n: int
    support: dict[BitString, Fraction] | None = None
    center: BitString | None = None
    weight_class: dict[int, Fraction] | None = None
    _sampler: tuple | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.support is None and self.weight_class is None:
            raise ValueError("distribution needs a sparse or weight-class form")
        if self.weight_class is not None and self.center is None:
            raise ValueError("weight-class form needs a center string")

    @property
    def form(self) -> str:
        return "sparse" if self.support is not None else "weight_class"

    def probability(self, tau: BitString) -> Fraction:
        if tau.n != self.n:
            raise ValueError(f"length mismatch: {tau.n} vs {self.n}")
        if self.support is not None:
            return self.support.get(tau, Fraction(0))
        return self.weight_class.get((tau ^ self.center).weight, Fraction(0))

    def class_mass(self, d: int) -> Fraction:
        """Probability that the outcome lies at distance d from the center."""
        if self.weight_class is None:
            raise ValueError("class mass needs the weight-class form")
        return comb(self.n, d) * self.weight_class.get(d, Fraction(0))

    def total_mass(self) -> Fraction:
        if self.support is not None:
            return sum(self.support.values(), Fraction(0))
        return sum((self.class_mass(d) for d in self.weight_class), Fraction(0))

    def to_sparse(self, max_n: int = 16) -> dict[BitString, Fraction]:
        if self.support is not None:
            return dict(self.support)
        if self.n > max_n:
            raise ValueError(f"refusing to expand a weight-class law with n={self.n} > {max_n}")
        out = {}
        for d, p in self.weight_class.items():
            if p == 0:
                continue
            for flips in combinations(range(1, self.n + 1), d):
                out[self.center ^ BitString.from_positions(self.n, flips)] = p
        return out

    def _build_sampler(self):
        if self.support is not None:
            items = sorted((k for k, v in self.support.items() if v), key=lambda b: b.value)
            probs = [self.support[k] for k in items]
        else:
            items = sorted(d for d, v in self.weight_class.items() if v)
            probs = [self.class_mass(d) for d in items]
        denom = lcm(*(p.denominator for p in probs))
        cumulative = []
        acc = 0
        for p in probs:
            acc += p.numerator * (denom // p.denominator)
            cumulative.append(acc)
        if acc != denom:
            raise ValueError("distribution mass is not 1")
        self._sampler = (items, cumulative, denom)

    def sample(self, rng: Rng) -> BitString:
        if self._sampler is None:
            self._build_sampler()
        items, cumulative, denom = self._sampler
        pick = items[bisect_right(cumulative, rng.randbelow(denom))]
        if self.support is not None:
            return pick
        flips = rng.sample(list(range(1, self.n + 1)), pick)
        return self.center ^ BitString.from_positions(self.n, flips)

    def to_json(self) -> dict:
        if self.support is not None:
            entries = [
                {"outcome": str(k), **_fraction_json(v)}
                for k, v in sorted(self.support.items(), key=lambda kv: kv[0].value)
                if v
            ]
            return {"n": self.n, "form": "sparse", "entries": entries}
        entries = [
            {"distance": d, "class_size": comb(self.n, d), **_fraction_json(p)}
            for d, p in sorted(self.weight_class.items())
        ]
        return {"n": self.n, "form": "weight_class", "center": str(self.center), "entries": entries}
