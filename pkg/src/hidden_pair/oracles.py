"""Metered max-inner-product and sub-set oracles over a hidden pair."""

from __future__ import annotations

import threading

from .core import BitString, HiddenPairInstance, unit_string

CLASSICAL = "classical"
SUPERPOSED = "superposed"
GROVER = "grover"
CATEGORIES = (CLASSICAL, SUPERPOSED, GROVER)


class QueryLedger:
    """Monotone per-category query counter shared by everything that touches one oracle."""

    def __init__(self):
        self._counts = dict.fromkeys(CATEGORIES, 0)
        self._lock = threading.Lock()

    def charge(self, category: str, amount: int = 1) -> None:
        if category not in self._counts:
            raise ValueError(f"unknown charge category {category!r}")
        if amount < 0:
            raise ValueError("query charges cannot be negative")
        with self._lock:
            self._counts[category] += amount

    def __getitem__(self, category: str) -> int:
        return self._counts[category]

    @property
    def total(self) -> int:
        return sum(self._counts.values())

    def to_json(self) -> dict:
        out = dict(self._counts)
        out["total"] = self.total
        return out

    def __repr__(self):
        return f"QueryLedger({self.to_json()})"


class CountingOracle:
    kind = ""

    def __init__(self, instance: HiddenPairInstance, ledger: QueryLedger | None = None):
        self._instance = instance
        self.ledger = ledger if ledger is not None else QueryLedger()

    @property
    def n(self) -> int:
        return self._instance.n

    @property
    def queries(self) -> int:
        return self.ledger.total

    def charge(self, category: str, amount: int = 1) -> None:
        self.ledger.charge(category, amount)

    def _evaluate(self, x: BitString) -> int:
        raise NotImplementedError

    def value(self, x: BitString) -> int:
        if x.n != self.n:
            raise ValueError(f"query has length {x.n}, oracle expects {self.n}")
        self.ledger.charge(CLASSICAL)
        return self._evaluate(x)

    __call__ = value


class MaxIPOracle(CountingOracle):
    """O_max(x) = max(x.s, x.s')."""

    kind = "maxip"

    def _evaluate(self, x: BitString) -> int:
        inst = self._instance
        r = max(x.dot(inst.s), x.dot(inst.s_prime))
        if r > inst.n - 1:
            raise AssertionError(f"max inner product {r} exceeds n-1; corrupted instance")
        return r


class SubsetOracle(CountingOracle):
    """O_sub(x) = 1 iff Idx(x) lies inside Idx(s) or Idx(s')."""

    kind = "subset"

    def _evaluate(self, x: BitString) -> int:
        inst = self._instance
        return int(x.issubset(inst.s) or x.issubset(inst.s_prime))


def maxip_value(oracle: MaxIPOracle, x: BitString) -> int:
    return oracle.value(x)


def subset_value(oracle: SubsetOracle, x: BitString) -> int:
    return oracle.value(x)


def r_piecewise(instance: HiddenPairInstance, x: BitString) -> int:
    """The max inner product rebuilt from s AND s' and the two differing positions.

    Uncharged; used to cross-check the oracle.
    """
    if x.n != instance.n:
        raise ValueError(f"length mismatch: {x.n} vs {instance.n}")
    i, j = instance.differing_positions
    base = instance.meet.dot(x)
    if x.bit(i) == 0 and x.bit(j) == 0:
        return base
    return base + 1


def or_via_unit_queries(oracle: SubsetOracle, x: BitString) -> int:
    """x.t for t = s OR s', spending one O_sub(e_j) query per 1-bit of x."""
    if x.n != oracle.n:
        raise ValueError(f"query has length {x.n}, oracle expects {oracle.n}")
    return sum(oracle.value(unit_string(x.n, j)) for j in x.positions())
