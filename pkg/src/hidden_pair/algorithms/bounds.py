from __future__ import annotations

from dataclasses import dataclass

from ..core import instance_count


@dataclass(frozen=True)
class LowerBounds:
    n: int
    N: int
    C_i: int
    C_s: int


def ceil_log(base: int, value: int) -> int:
    """Smallest c >= 0 with base**c >= value, in exact integer arithmetic."""
    if base < 2 or value < 1:
        raise ValueError("need base >= 2 and value >= 1")
    c, power = 0, 1
    while power < value:
        power *= base
        c += 1
    return c


def lower_bounds(n: int) -> LowerBounds:
    """Decision-tree height bounds: n-ary tree for O_max, binary for O_sub."""
    N = instance_count(n)
    return LowerBounds(n, N, ceil_log(n, N), ceil_log(2, N))
