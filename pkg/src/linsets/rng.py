"""xorshift64* seeded through splitmix64.

A fixed, documented generator so sweep inputs can be regenerated by any
implementation from the seed printed in a report header.
"""

from __future__ import annotations

MASK = (1 << 64) - 1
NAME = "xorshift64*/splitmix64"


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.seed = seed
        self.state = splitmix64(seed & MASK) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.randbelow(hi - lo + 1)

    def choice(self, seq):
        return seq[self.randbelow(len(seq))]

    def sample(self, seq, k: int) -> list:
        pool = list(seq)
        out = []
        for _ in range(k):
            out.append(pool.pop(self.randbelow(len(pool))))
        return out

    def random(self) -> float:
        return (self.next_u64() >> 11) / float(1 << 53)

    def fork(self, tag: int) -> "XorShift64Star":
        return XorShift64Star(splitmix64(self.seed ^ (tag * 0x9E3779B97F4A7C15 & MASK)))
