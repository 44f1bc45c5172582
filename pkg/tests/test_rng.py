from __future__ import annotations

import numpy as np
from hypothesis import given, settings, strategies as st

from linsets.rng import XorShift64Star, splitmix64


def test_splitmix64_known_answer():
    # first output of the reference splitmix64 stream seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def _reference_stream(state: int, count: int) -> list[int]:
    """xorshift64* in wrapping uint64 arithmetic."""
    x = np.uint64(state)
    out = []
    with np.errstate(over="ignore"):
        for _ in range(count):
            x ^= x >> np.uint64(12)
            x ^= x << np.uint64(25)
            x ^= x >> np.uint64(27)
            out.append(int(x * np.uint64(0x2545F4914F6CDD1D)))
    return out


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**64 - 1))
def test_stream_matches_uint64_reference(seed):
    rng = XorShift64Star(seed)
    expect = _reference_stream(rng.state, 8)
    assert [rng.next_u64() for _ in range(8)] == expect


def test_reproducible_and_forks_differ():
    a, b = XorShift64Star(42), XorShift64Star(42)
    assert [a.randbelow(1000) for _ in range(50)] == [b.randbelow(1000) for _ in range(50)]
    f1, f2 = XorShift64Star(42).fork(1), XorShift64Star(42).fork(2)
    assert [f1.next_u64() for _ in range(4)] != [f2.next_u64() for _ in range(4)]


def test_ranges():
    rng = XorShift64Star(7)
    vals = [rng.randbelow(7) for _ in range(7000)]
    assert set(vals) == set(range(7))
    assert all(abs(vals.count(v) - 1000) < 150 for v in range(7))
    assert all(3 <= rng.randint(3, 5) <= 5 for _ in range(100))
    s = rng.sample(range(10), 10)
    assert sorted(s) == list(range(10))
    assert 0.0 <= rng.random() < 1.0
