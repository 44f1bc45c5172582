from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from linsets.errors import ContextMismatch, PreconditionViolated, ZeroPolynomial
from linsets.field import make_field
from linsets.linset import build
from linsets.qpoly import QPoly, adjoint, adjoint_form, compose, evaluate, indices, kernel_dim, parse_qpoly, shift_form
from linsets.rng import XorShift64Star

F8 = make_field(2, 1, 3)
F16 = make_field(2, 1, 4)


def _trace_form(ctx, x, y):
    return ctx.rel_trace(ctx.mul(x, y), 1)


def test_identity_and_trace():
    ident = QPoly.identity(F16)
    tr = QPoly.trace(F16, 1)
    for x in F16.elements():
        assert evaluate(ident, x) == x
        assert tr(x) == F16.rel_trace(x, 1)


@pytest.mark.parametrize("spec", [(2, 1, 3), (3, 1, 2), (2, 2, 2), (2, 1, 5)])
def test_fq_linearity_exhaustive(spec):
    ctx = make_field(*spec)
    rng = XorShift64Star(11)
    f = QPoly(ctx, tuple(rng.randbelow(ctx.size) for _ in range(ctx.n)))
    fq = ctx.subfield_elements(1)
    vals = f.values
    for lam in fq:
        for x, y in itertools.product(range(0, ctx.size, 3), repeat=2):
            lhs = vals[ctx.add(ctx.mul(lam, x), y)]
            assert lhs == ctx.add(ctx.mul(lam, int(vals[x])), int(vals[y]))


def test_values_match_evaluate():
    rng = XorShift64Star(3)
    f = QPoly(F16, tuple(rng.randbelow(16) for _ in range(4)))
    assert [int(v) for v in f.values] == [evaluate(f, x) for x in F16.elements()]


def test_adjoint_examples():
    a = 5
    assert adjoint(QPoly.monomial(F16, 0, a)) == QPoly.monomial(F16, 0, a)
    for i in range(1, 4):
        expect = QPoly.monomial(F16, 4 - i, F16.frobenius(a, 4 - i))
        assert adjoint(QPoly.monomial(F16, i, a)) == expect


def test_adjoint_involution_and_form():
    ctx = make_field(2, 1, 5)
    rng = XorShift64Star(5)
    for _ in range(20):
        f = QPoly(ctx, tuple(rng.randbelow(ctx.size) for _ in range(ctx.n)))
        assert adjoint(adjoint(f)) == f
        fh = adjoint(f)
        for _ in range(5):
            x, y = rng.randbelow(ctx.size), rng.randbelow(ctx.size)
            assert _trace_form(ctx, x, f(y)) == _trace_form(ctx, y, fh(x))


def test_compose():
    f = QPoly.from_terms(F16, {0: 3, 2: 7})
    assert compose(f, QPoly.identity(F16)) == f
    xq = QPoly.monomial(F16, 1)
    assert compose(xq, xq) == QPoly.monomial(F16, 2)
    rng = XorShift64Star(9)
    for _ in range(50):
        f = QPoly(F8, tuple(rng.randbelow(8) for _ in range(3)))
        g = QPoly(F8, tuple(rng.randbelow(8) for _ in range(3)))
        fg = compose(f, g)
        assert all(fg(x) == f(g(x)) for x in F8.elements())


def test_kernel_dim():
    assert kernel_dim(QPoly.identity(F8)) == 0
    assert kernel_dim(QPoly.trace(F8, 1)) == 2
    assert kernel_dim(QPoly(F8, (0, 0, 0))) == 3
    ctx = make_field(2, 2, 3)
    tr = QPoly.trace(ctx, 1)
    assert kernel_dim(tr) == 2
    assert sum(1 for x in ctx.elements() if tr(x) == 0) == ctx.q ** 2


def test_indices_examples():
    ctx = make_field(2, 1, 6)
    i = indices(QPoly.monomial(ctx, 2, 3))
    assert (i.d, i.ell, i.ell2, i.is_monomial) == (2, 2, 2, True)
    i = indices(QPoly.from_terms(ctx, {3: 1, 1: 1}))
    assert (i.d, i.ell, i.ell2, i.ell3) == (3, 1, 3, 1)
    i = indices(QPoly.from_terms(ctx, {4: 1, 2: 1, 0: 1}))
    assert (i.d, i.ell, i.ell2, i.ell3) == (4, 0, 2, 2)
    with pytest.raises(ZeroPolynomial):
        indices(QPoly(ctx, (0,) * 6))


def test_shift_forms():
    ctx = make_field(2, 1, 6)
    f = QPoly.from_terms(ctx, {2: 3, 1: 5})
    assert shift_form(f, 0, "bar") == f
    assert shift_form(f, 1, "bar") == QPoly.from_terms(ctx, {1: 3, 0: 5})
    g = QPoly.from_terms(ctx, {3: 7, 2: 9})
    assert shift_form(g, 0, "tilde") == QPoly.from_terms(ctx, {1: 7, 0: 9})
    with pytest.raises(PreconditionViolated):
        shift_form(f, 2, "bar")


def test_adjoint_form_point_sets():
    rng = XorShift64Star(21)
    for _ in range(25):
        f = QPoly(F16, tuple(rng.randbelow(16) for _ in range(4)))
        if f.is_zero():
            continue
        for h in range(4):
            F, h2 = adjoint_form(f, h)
            assert build(f, h).keys == build(F, h2).keys
            F2, h3 = adjoint_form(F, h2)
            assert h3 == h and build(F2, h3).keys == build(f, h).keys


def test_adjoint_form_monomial():
    ctx = make_field(3, 1, 4)
    F, h2 = adjoint_form(QPoly.monomial(ctx, 1, 5), 0)
    assert h2 == 0 and F == QPoly.monomial(ctx, 3, ctx.frobenius(5, 3))


def test_parse_and_errors():
    f = parse_qpoly(F8, [1, 2])
    assert f.coeffs == (1, 2, 0)
    with pytest.raises(ContextMismatch):
        parse_qpoly(F8, [9])
    with pytest.raises(ContextMismatch):
        compose(f, QPoly.identity(F16))


coeff = st.integers(min_value=0, max_value=15)


@settings(max_examples=60, deadline=None)
@given(st.lists(coeff, min_size=4, max_size=4), st.lists(coeff, min_size=4, max_size=4))
def test_compose_associates_with_evaluation(a, b):
    f, g = QPoly(F16, tuple(a)), QPoly(F16, tuple(b))
    fg = compose(f, g)
    for x in (1, 2, 7, 13):
        assert fg(x) == f(g(x))


@settings(max_examples=60, deadline=None)
@given(st.lists(coeff, min_size=4, max_size=4))
def test_adjoint_same_linear_set(a):
    f = QPoly(F16, tuple(a))
    if not f.is_zero():
        assert build(f).keys == build(adjoint(f)).keys
