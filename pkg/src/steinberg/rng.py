"""SplitMix64: a tiny seedable 64-bit generator, so seeded trials are reproducible anywhere."""

from __future__ import annotations

from typing import List, Sequence, TypeVar

T = TypeVar("T")
_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        """Uniform integer in [0, k) by rejection (no modulo bias)."""
        if k <= 0:
            raise ValueError("k must be positive")
        limit = (1 << 64) - ((1 << 64) % k)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % k

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self.below(len(seq))]

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())

    def vector(self, q: int, n: int, nonzero: bool = False) -> tuple:
        while True:
            v = tuple(self.below(q) for _ in range(n))
            if not nonzero or any(v):
                return v

    def vectors(self, q: int, n: int, count: int, nonzero: bool = True) -> List[tuple]:
        return [self.vector(q, n, nonzero) for _ in range(count)]

    def matrix(self, q: int, n: int) -> tuple:
        return tuple(tuple(self.below(q) for _ in range(n)) for _ in range(n))
