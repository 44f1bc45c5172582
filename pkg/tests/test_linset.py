from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from linsets.errors import ContextMismatch, PreconditionViolated
from linsets.field import make_field
from linsets.linset import (
    Kind,
    ProjPoint,
    build,
    classify,
    curve_affine_witness,
    intersect,
    is_curve_point,
    meets,
    point_from_key,
    swap_point,
)
from linsets.qpoly import QPoly, scale
from linsets.rng import XorShift64Star

F8 = make_field(2, 1, 3)
F16 = make_field(2, 1, 4)


def naive_weights(f: QPoly, h: int = 0, swapped: bool = False) -> dict[ProjPoint, int]:
    """Count vectors per normalised projective point, then convert counts to weights."""
    ctx = f.ctx
    counts: dict[ProjPoint, int] = {}
    for y in ctx.nonzero():
        u, v = ctx.frobenius(y, h), f(y)
        if swapped:
            u, v = v, u
        pt = ProjPoint(1, 0) if v == 0 else ProjPoint(ctx.div(u, v), 1)
        counts[pt] = counts.get(pt, 0) + 1
    out = {}
    for pt, c in counts.items():
        w = 0
        while ctx.q**w - 1 < c:
            w += 1
        assert ctx.q**w - 1 == c
        out[pt] = w
    return out


def test_identity_single_point():
    ls = build(QPoly.identity(F16))
    assert ls.weights == {ProjPoint(1, 1): 4}
    assert classify(ls).kind is Kind.OTHER


def test_trace_club_f8():
    ls = build(QPoly.trace(F8, 1))
    assert len(ls) == 5
    assert ls.weights[ProjPoint(1, 0)] == 2
    cls = classify(ls)
    assert cls.kind is Kind.CLUB and cls.head == ProjPoint(1, 0)
    assert cls.weight_histogram == {2: 1, 1: 4}


def test_pseudoregulus_f8():
    ls = build(QPoly.monomial(F8, 1))
    assert len(ls) == 7 and set(ls.weights.values()) == {1}
    assert classify(ls).kind is Kind.SCATTERED


@pytest.mark.parametrize("spec", [(2, 1, 4), (3, 1, 3), (2, 2, 2), (5, 1, 2)])
def test_build_matches_naive(spec):
    ctx = make_field(*spec)
    rng = XorShift64Star(spec[0] * 100 + spec[2])
    for _ in range(15):
        f = QPoly(ctx, tuple(rng.randbelow(ctx.size) for _ in range(ctx.n)))
        if f.is_zero():
            continue
        h = rng.randbelow(ctx.n)
        sw = rng.randbelow(2) == 1
        ls = build(f, h, sw)
        assert ls.weights == naive_weights(f, h, sw)
        assert ls.vector_count() == ctx.size - 1


def test_intersections():
    tr = build(QPoly.trace(F16, 1))
    assert intersect(tr, tr) == set(tr.points)
    for alpha in F16.nonzero():
        other = build(QPoly.trace(F16, 1, alpha))
        assert ProjPoint(1, 0) in intersect(tr, other)
        assert meets(tr, other)
    with pytest.raises(ContextMismatch):
        intersect(tr, build(QPoly.trace(F8, 1)))


def test_swap_point_involution():
    for key in range(F16.size + 1):
        assert swap_point(F16, swap_point(F16, key)) == key
    assert point_from_key(F16, swap_point(F16, 0)) == ProjPoint(1, 0)


def test_curve_witness_examples():
    f = QPoly.from_terms(F16, {1: 3, 0: 2})
    assert curve_affine_witness(f, f) == (1, 1)
    ctx = make_field(3, 1, 2)
    nonnorm = next(a for a in ctx.nonzero() if ctx.rel_norm(a, 1) != 1)
    assert curve_affine_witness(QPoly.monomial(ctx, 1), QPoly.monomial(ctx, 1, nonnorm)) is None
    with pytest.raises(PreconditionViolated):
        build(f, 4)


def test_curve_witness_agrees_with_intersect():
    rng = XorShift64Star(77)
    for _ in range(100):
        g = QPoly(F16, tuple(rng.randbelow(16) for _ in range(4)))
        f = QPoly(F16, tuple(rng.randbelow(16) for _ in range(4)))
        if g.is_zero() or f.is_zero():
            continue
        h, sw = rng.randbelow(4), rng.randbelow(2) == 1
        wit = curve_affine_witness(g, f, h, sw)
        lg, lf = build(g), build(f, h, sw)
        shared = {pt for pt in intersect(lg, lf)}
        # (x, y) on the curve pairs <(x, g(x))> with the f-point of y
        affine = [(x, y) for x in F16.nonzero() for y in F16.nonzero() if is_curve_point(g, f, h, sw, x, y)]
        assert (wit is None) == (not affine)
        if wit is not None:
            assert wit == min(affine)
            assert shared


coeffs = st.lists(st.integers(min_value=0, max_value=15), min_size=4, max_size=4)


@settings(max_examples=80, deadline=None)
@given(coeffs, st.integers(min_value=0, max_value=3), st.booleans())
def test_weights_partition_vectors(a, h, sw):
    f = QPoly(F16, tuple(a))
    if f.is_zero():
        return
    ls = build(f, h, sw)
    assert sum(2**w - 1 for w in ls.weights.values()) == 15
    assert all(1 <= w <= 4 for w in ls.weights.values())


@settings(max_examples=60, deadline=None)
@given(coeffs, st.integers(min_value=1, max_value=15))
def test_scaling_f_rescales_keys(a, c):
    f = QPoly(F16, tuple(a))
    if f.is_zero():
        return
    # <(y, c f(y))> has key y / (c f(y)): finite keys are divided by c
    cinv = F16.inv(c)
    moved = {k if k == F16.size else F16.mul(k, cinv) for k in build(f).keys}
    assert build(scale(f, c)).keys == moved
