"""Bit strings, hidden-pair instances and the seeded random stream."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterator

import numpy as np

MAX_LENGTH = 1 << 20
MIN_N = 3
ENUMERATION_MAX_N = 12


@dataclass(frozen=True)
class BitString:
    """Fixed-length binary word.

    Position 1 is the leftmost character of the textual form, which is the
    most significant bit of ``value``.
    """

    n: int
    value: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_LENGTH:
            raise ValueError(f"length must be in [1, {MAX_LENGTH}], got {self.n}")
        if not 0 <= self.value < (1 << self.n):
            raise ValueError(f"value {self.value} does not fit in {self.n} bits")

    @classmethod
    def parse(cls, text: str) -> BitString:
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a binary string: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def zeros(cls, n: int) -> BitString:
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> BitString:
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_positions(cls, n: int, positions) -> BitString:
        value = 0
        for j in positions:
            if not 1 <= j <= n:
                raise ValueError(f"position {j} outside [1, {n}]")
            value |= 1 << (n - j)
        return cls(n, value)

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b")

    def __repr__(self) -> str:
        return f"BitString('{self}')"

    def __len__(self) -> int:
        return self.n

    def bit(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise IndexError(f"position {j} outside [1, {self.n}]")
        return (self.value >> (self.n - j)) & 1

    def positions(self) -> list[int]:
        """Idx(x): the 1-based positions holding a 1, in increasing order."""
        return [j for j in range(1, self.n + 1) if (self.value >> (self.n - j)) & 1]

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def _check(self, other: BitString):
        if not isinstance(other, BitString):
            raise TypeError(f"expected BitString, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")

    def __and__(self, other: BitString) -> BitString:
        self._check(other)
        return BitString(self.n, self.value & other.value)

    def __or__(self, other: BitString) -> BitString:
        self._check(other)
        return BitString(self.n, self.value | other.value)

    def __xor__(self, other: BitString) -> BitString:
        self._check(other)
        return BitString(self.n, self.value ^ other.value)

    def dot(self, other: BitString) -> int:
        self._check(other)
        return (self.value & other.value).bit_count()

    def issubset(self, other: BitString) -> bool:
        """Idx(self) is contained in Idx(other)."""
        self._check(other)
        return self.value & other.value == self.value

    def with_bit(self, j: int, b: int) -> BitString:
        mask = 1 << (self.n - j)
        if not 1 <= j <= self.n:
            raise IndexError(f"position {j} outside [1, {self.n}]")
        return BitString(self.n, (self.value | mask) if b else (self.value & ~mask))


def inner_product(x: BitString, y: BitString) -> int:
    return x.dot(y)


def unit_string(n: int, j: int) -> BitString:
    if not 1 <= j <= n:
        raise ValueError(f"index {j} outside [1, {n}]")
    return BitString(n, 1 << (n - j))


@dataclass(frozen=True, eq=False)
class HiddenPairInstance:
    """A pair {s, s'} with equal weight and Hamming distance 2.

    Equality and hashing treat the pair as unordered.
    """

    n: int
    s: BitString
    s_prime: BitString

    def __post_init__(self):
        if self.n < MIN_N:
            raise ValueError(f"n must be >= {MIN_N} (n=2 is trivial), got {self.n}")
        if self.s.n != self.n or self.s_prime.n != self.n:
            raise ValueError("string lengths must equal n")
        if self.s.weight != self.s_prime.weight:
            raise ValueError("s and s' must have equal Hamming weight")
        if (self.s ^ self.s_prime).weight != 2:
            raise ValueError("s and s' must differ in exactly two bits")

    @classmethod
    def from_strings(cls, s: str, s_prime: str) -> HiddenPairInstance:
        a, b = BitString.parse(s), BitString.parse(s_prime)
        return cls(a.n, a, b)

    @property
    def pair(self) -> frozenset:
        return frozenset((self.s, self.s_prime))

    @property
    def meet(self) -> BitString:
        """s AND s'."""
        return self.s & self.s_prime

    @property
    def join(self) -> BitString:
        """s OR s', the string t recovered by the sub-set algorithm."""
        return self.s | self.s_prime

    @property
    def differing_positions(self) -> tuple[int, int]:
        i, j = (self.s ^ self.s_prime).positions()
        return i, j

    def __eq__(self, other):
        if not isinstance(other, HiddenPairInstance):
            return NotImplemented
        return self.pair == other.pair

    def __hash__(self):
        return hash(self.pair)

    def to_json(self) -> dict:
        return {"n": self.n, "s": str(self.s), "s_prime": str(self.s_prime)}

    @classmethod
    def from_json(cls, data: dict) -> HiddenPairInstance:
        inst = cls.from_strings(data["s"], data["s_prime"])
        if "n" in data and data["n"] != inst.n:
            raise ValueError(f"declared n={data['n']} but strings have length {inst.n}")
        return inst


class Rng:
    """Seeded random stream built on the PCG64 bit generator.

    Only raw 64-bit words are drawn from numpy; every derived quantity is
    computed here so that a seed replays identically across numpy releases.
    """

    algorithm = "pcg64"

    def __init__(self, seed: int):
        if not 0 <= seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = seed
        self._bits = np.random.PCG64(seed)

    def next_u64(self) -> int:
        return int(self._bits.random_raw())

    def getrandbits(self, k: int) -> int:
        if k <= 0:
            return 0
        words = -(-k // 64)
        value = 0
        for _ in range(words):
            value = (value << 64) | self.next_u64()
        return value >> (64 * words - k)

    def randbelow(self, m: int) -> int:
        """Uniform integer in [0, m) by rejection; m may exceed 64 bits."""
        if m <= 0:
            raise ValueError("upper bound must be positive")
        if m == 1:
            return 0
        k = (m - 1).bit_length()
        while True:
            r = self.getrandbits(k)
            if r < m:
                return r

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def choice(self, seq):
        return seq[self.randbelow(len(seq))]

    def sample(self, population: list, k: int) -> list:
        """k distinct elements, order of selection (partial Fisher-Yates)."""
        pool = list(population)
        if not 0 <= k <= len(pool):
            raise ValueError("sample larger than population")
        for i in range(k):
            j = i + self.randbelow(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def trial_seed(seed: int, index: int) -> int:
    return (seed ^ index) & ((1 << 64) - 1)


def instance_count(n: int) -> int:
    """N = C(n,2) * 2^(n-2) unordered pairs."""
    if n < MIN_N:
        raise ValueError(f"n must be >= {MIN_N}")
    return comb(n, 2) << (n - 2)


def _build(n: int, i: int, j: int, rest: int) -> HiddenPairInstance:
    # rest supplies the n-2 shared bits, most significant first
    value = 0
    free = [p for p in range(1, n + 1) if p != i and p != j]
    for offset, p in enumerate(free):
        if (rest >> (n - 3 - offset)) & 1:
            value |= 1 << (n - p)
    s = BitString(n, value | (1 << (n - i)))
    s_prime = BitString(n, value | (1 << (n - j)))
    return HiddenPairInstance(n, s, s_prime)


def random_instance(n: int, rng: Rng | int) -> HiddenPairInstance:
    if n < MIN_N:
        raise ValueError(f"n must be >= {MIN_N} (n=2 is trivial), got {n}")
    if isinstance(rng, int):
        rng = Rng(rng)
    pair_index = rng.randbelow(comb(n, 2))
    # decode the pair index into i < j
    i = 1
    while pair_index >= n - i:
        pair_index -= n - i
        i += 1
    j = i + 1 + pair_index
    return _build(n, i, j, rng.getrandbits(n - 2))


def iter_instances(n: int) -> Iterator[HiddenPairInstance]:
    if n < MIN_N:
        raise ValueError(f"n must be >= {MIN_N} (n=2 is trivial), got {n}")
    for i, j in combinations(range(1, n + 1), 2):
        for rest in range(1 << (n - 2)):
            yield _build(n, i, j, rest)


def enumerate_instances(n: int) -> list[HiddenPairInstance]:
    if not MIN_N <= n <= ENUMERATION_MAX_N:
        raise ValueError(f"enumeration supports n in [{MIN_N}, {ENUMERATION_MAX_N}], got {n}")
    return list(iter_instances(n))


def all_strings(n: int) -> Iterator[BitString]:
    for value in range(1 << n):
        yield BitString(n, value)
