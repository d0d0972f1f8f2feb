"""Seeded pseudo-random numbers for reproducible sampling.

splitmix64 is used everywhere; the algorithm identifier is recorded in
result files so runs can be reproduced byte for byte.
"""

ALGORITHM = "splitmix64"

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """The splitmix64 generator (Steele, Lea, Flood 2014)."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound). Modulo bias is negligible
        for the tiny bounds used here and keeps the stream portable."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound


def stream_for_sample(seed: int, index: int) -> SplitMix64:
    """Independent generator for sample `index` of a scan seeded with `seed`.

    Offsetting the seed by (index+1) gamma steps keeps per-sample streams
    disjoint while staying trivially reproducible.
    """
    return SplitMix64((seed + (index + 1) * _GAMMA) & _MASK)
