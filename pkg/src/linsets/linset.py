"""F_q-linear sets of rank n on PG(1, q^n), built by enumeration.

Points are normalised by dividing by the second coordinate: ``<(u, v)>``
with ``v != 0`` becomes ``(u/v, 1)`` and every point with ``v = 0`` is the
single point ``(1, 0)``.  Internally a point is the integer key ``u`` for
``(u, 1)`` and ``q^n`` (the field size) for ``(1, 0)``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import ContextMismatch, PreconditionViolated
from .field import FieldCtx
from .qpoly import QPoly


class ProjPoint(NamedTuple):
    u: int
    v: int

    def to_json(self) -> list[int]:
        return [self.u, self.v]


def point_from_key(ctx: FieldCtx, key: int) -> ProjPoint:
    return ProjPoint(1, 0) if key == ctx.size else ProjPoint(int(key), 1)


def key_of(ctx: FieldCtx, x0: int, x1: int) -> int:
    """Key of the projective point <(x0, x1)>."""
    if x1 == 0:
        if x0 == 0:
            raise ValueError("(0, 0) is not a projective point")
        return ctx.size
    return ctx.div(x0, x1)


def vkeys(ctx: FieldCtx, x0: np.ndarray, x1: np.ndarray) -> np.ndarray:
    """Vectorised :func:`key_of`; rows must not be (0, 0)."""
    keys = ctx.vdiv(x0, x1)
    keys[x1 == 0] = ctx.size
    return keys


def shape_keys(f: QPoly, h: int = 0, swapped: bool = False) -> np.ndarray:
    """Keys of <(y^(q^h), f(y))> (or the swapped pair) for y = 1, ..., q^n - 1."""
    ctx = f.ctx
    if not 0 <= h < ctx.n:
        raise PreconditionViolated(f"h={h} outside [0, {ctx.n})")
    ys = np.arange(1, ctx.size, dtype=np.int64)
    x0 = ctx.frobenius_table(h)[ys]
    x1 = f.values[ys]
    if swapped:
        x0, x1 = x1, x0
    return vkeys(ctx, x0, x1)


@dataclass(frozen=True)
class Source:
    f: QPoly
    h: int = 0
    swapped: bool = False

    def to_json(self) -> dict:
        return {"f": self.f.to_json(), "h": self.h, "swapped": self.swapped}


@dataclass(frozen=True, eq=False)
class LinearSet:
    ctx: FieldCtx
    key_weights: dict[int, int]
    rank: int
    source: Source | None = None

    @functools.cached_property
    def weights(self) -> dict[ProjPoint, int]:
        return {point_from_key(self.ctx, k): w for k, w in sorted(self.key_weights.items())}

    @property
    def points(self) -> frozenset[ProjPoint]:
        return frozenset(self.weights)

    @functools.cached_property
    def keys(self) -> frozenset[int]:
        return frozenset(self.key_weights)

    @functools.cached_property
    def member(self) -> np.ndarray:
        """Boolean array of length q^n + 1, True at the keys of this set."""
        arr = np.zeros(self.ctx.size + 1, dtype=bool)
        arr[list(self.key_weights)] = True
        arr.setflags(write=False)
        return arr

    @functools.cached_property
    def mask(self) -> int:
        """The key set as a Python int bitmask."""
        return int.from_bytes(np.packbits(self.member, bitorder="little").tobytes(), "little")

    def __len__(self) -> int:
        return len(self.key_weights)

    def __contains__(self, pt: ProjPoint) -> bool:
        return pt in self.weights

    def vector_count(self) -> int:
        q = self.ctx.q
        return sum(q**w - 1 for w in self.key_weights.values())

    def to_json(self) -> dict:
        cls = classify(self)
        return {
            "points": [p.to_json() for p in self.weights],
            "weights": {f"{p.u},{p.v}": w for p, w in self.weights.items()},
            "kind": cls.kind.value,
            "head": cls.head.to_json() if cls.head else None,
            "histogram": {str(k): v for k, v in sorted(cls.weight_histogram.items())},
        }


def _log_q(ctx: FieldCtx, count: int) -> int:
    q, w, c = ctx.q, 0, count
    while c % q == 0 and c > 1:
        c //= q
        w += 1
    if c != 1:
        raise AssertionError(f"fibre size {count - 1} is not q^w - 1")
    return w


def from_keys(ctx: FieldCtx, keys: np.ndarray, source: Source | None = None) -> LinearSet:
    """Linear set whose points are the given per-vector keys (one key per nonzero vector)."""
    counts = np.bincount(keys, minlength=ctx.size + 1)
    nz = np.nonzero(counts)[0]
    weights = {int(k): _log_q(ctx, int(counts[k]) + 1) for k in nz}
    ls = LinearSet(ctx, weights, ctx.n, source)
    assert ls.vector_count() == ctx.size - 1
    return ls


def build(f: QPoly, h: int = 0, swapped: bool = False) -> LinearSet:
    """L = {<(y^(q^h), f(y))> : y != 0}, or its image under (X0, X1) -> (X1, X0)."""
    return from_keys(f.ctx, shape_keys(f, h, swapped), Source(f, h, swapped))


def swap_point(ctx: FieldCtx, key: int) -> int:
    """Key of the coordinate swap of the point with the given key."""
    if key == ctx.size:
        return 0
    if key == 0:
        return ctx.size
    return ctx.inv(key)


class Kind(str, Enum):
    SCATTERED = "scattered"
    CLUB = "club"
    OTHER = "other"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    weight_histogram: dict[int, int]
    head: ProjPoint | None = None


def classify(ls: LinearSet) -> Classification:
    hist: dict[int, int] = {}
    for w in ls.key_weights.values():
        hist[w] = hist.get(w, 0) + 1
    if set(hist) == {1}:
        return Classification(Kind.SCATTERED, hist)
    heads = [k for k, w in ls.key_weights.items() if w == ls.rank - 1]
    if len(heads) == 1 and hist.get(1, 0) == len(ls) - 1:
        return Classification(Kind.CLUB, hist, point_from_key(ls.ctx, heads[0]))
    return Classification(Kind.OTHER, hist)


def intersect(l1: LinearSet, l2: LinearSet) -> set[ProjPoint]:
    if l1.ctx != l2.ctx:
        raise ContextMismatch("linear sets over different fields")
    return {point_from_key(l1.ctx, k) for k in l1.keys & l2.keys}


def meets(l1: LinearSet, l2: LinearSet) -> bool:
    if l1.ctx != l2.ctx:
        raise ContextMismatch("linear sets over different fields")
    return bool(l1.mask & l2.mask)


def curve_affine_witness(g: QPoly, f: QPoly, h: int = 0, swapped: bool = False) -> tuple[int, int] | None:
    """Least (x, y), both nonzero, with x f(y) = y^(q^h) g(x) (or x y^(q^h) = f(y) g(x) when swapped).

    Order is lexicographic on the element integers.  A solution exists exactly
    when <(x, g(x))> and the f-shape point of y coincide, so the search goes
    through point keys instead of the (x, y) grid.
    """
    if g.ctx != f.ctx:
        raise ContextMismatch("g and f over different fields")
    ctx = g.ctx
    gkeys = shape_keys(g)
    fkeys = shape_keys(f, h, swapped)
    member = np.zeros(ctx.size + 1, dtype=bool)
    member[fkeys] = True
    hits = np.nonzero(member[gkeys])[0]
    if hits.size == 0:
        return None
    xi = int(hits[0])
    yi = int(np.nonzero(fkeys == gkeys[xi])[0][0])
    return xi + 1, yi + 1


def is_curve_point(g: QPoly, f: QPoly, h: int, swapped: bool, x: int, y: int) -> bool:
    """Direct evaluation of the curve equation at (x, y)."""
    ctx = g.ctx
    yh = ctx.frobenius(y, h)
    if swapped:
        return ctx.mul(x, yh) == ctx.mul(f(y), g(x))
    return ctx.mul(x, f(y)) == ctx.mul(yh, g(x))
