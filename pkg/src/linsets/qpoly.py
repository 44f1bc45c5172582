"""Reduced q-polynomials sum a_i x^(q^i), i < n, over GF(q^n).

A :class:`QPoly` stores exactly ``n`` coefficients, so it is the canonical
representative modulo ``x^(q^n) - x``.  Index ``i`` of ``coeffs`` is the
q-exponent of the monomial it multiplies.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import _fp
from .errors import ContextMismatch, PreconditionViolated, ZeroPolynomial
from .field import FieldCtx


@dataclass(frozen=True)
class QPoly:
    ctx: FieldCtx
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ctx.n:
            raise ValueError(f"expected {self.ctx.n} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_terms(cls, ctx: FieldCtx, terms: dict[int, int]) -> "QPoly":
        """Build from ``{q_exponent: coefficient}``; exponents are reduced mod n."""
        coeffs = [0] * ctx.n
        for i, a in terms.items():
            coeffs[i % ctx.n] = ctx.add(coeffs[i % ctx.n], a)
        return cls(ctx, tuple(coeffs))

    @classmethod
    def monomial(cls, ctx: FieldCtx, i: int, a: int = 1) -> "QPoly":
        return cls.from_terms(ctx, {i: a})

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "QPoly":
        return cls.monomial(ctx, 0, 1)

    @classmethod
    def trace(cls, ctx: FieldCtx, r: int = 1, scale: int = 1) -> "QPoly":
        """``scale * Tr_{q^n/q^r}`` as a q-polynomial."""
        ctx._check_divisor(r)
        return cls.from_terms(ctx, {i: scale for i in range(0, ctx.n, r)})

    @classmethod
    def binomial_g(cls, ctx: FieldCtx, alpha: int, beta: int, k: int) -> "QPoly":
        """g(x) = alpha x^(q^k) + beta x."""
        return cls.from_terms(ctx, {k: alpha, 0: beta})

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def support(self) -> list[int]:
        return [i for i, a in enumerate(self.coeffs) if a]

    @functools.cached_property
    def idx(self) -> "QPolyIndices":
        return indices(self)

    @functools.cached_property
    def values(self) -> np.ndarray:
        """f(x) for every field element x, indexed by x."""
        ctx = self.ctx
        xs = np.arange(ctx.size, dtype=np.int64)
        acc = np.zeros(ctx.size, dtype=np.int64)
        for i, a in enumerate(self.coeffs):
            if a:
                acc = ctx.vadd(acc, ctx.vmul_const(a, ctx.frobenius_table(i)[xs]))
        acc.setflags(write=False)
        return acc

    def to_json(self) -> list[int]:
        return list(self.coeffs)


class QPolyIndices(NamedTuple):
    d: int
    ell: int
    ell2: int
    ell3: int | None
    is_monomial: bool


def _same_ctx(f: QPoly, g: QPoly) -> None:
    if f.ctx != g.ctx:
        raise ContextMismatch("q-polynomials over different fields")


def evaluate(f: QPoly, x: int) -> int:
    """sum a_i x^(q^i) by iterated Frobenius."""
    ctx = f.ctx
    if not 0 <= x < ctx.size:
        raise ContextMismatch(f"{x} is not an element of {ctx}")
    acc = 0
    y = x
    for a in f.coeffs:
        if a:
            acc = ctx.add(acc, ctx.mul(a, y))
        y = ctx.frobenius(y, 1)
    return acc


def adjoint(f: QPoly) -> QPoly:
    """Adjoint w.r.t. (x, y) -> Tr(xy): coefficient a_i moves to index n-i as a_i^(q^(n-i))."""
    ctx, n = f.ctx, f.ctx.n
    out = [0] * n
    for i, a in enumerate(f.coeffs):
        out[(n - i) % n] = ctx.frobenius(a, n - i)
    return QPoly(ctx, tuple(out))


def compose(f: QPoly, g: QPoly) -> QPoly:
    """Reduced representative of f(g(x))."""
    _same_ctx(f, g)
    ctx, n = f.ctx, f.ctx.n
    out = [0] * n
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            if b:
                k = (i + j) % n
                out[k] = ctx.add(out[k], ctx.mul(a, ctx.frobenius(b, i)))
    return QPoly(ctx, tuple(out))


def scale(f: QPoly, c: int) -> QPoly:
    return QPoly(f.ctx, tuple(f.ctx.mul(c, a) for a in f.coeffs))


def add(f: QPoly, g: QPoly) -> QPoly:
    _same_ctx(f, g)
    return QPoly(f.ctx, tuple(f.ctx.add(a, b) for a, b in zip(f.coeffs, g.coeffs)))


def matrix_over_fp(f: QPoly) -> list[list[int]]:
    """Matrix of f as a GF(p)-linear map, one row per image of a power-basis vector."""
    ctx = f.ctx
    return [ctx.coeffs(evaluate(f, ctx.p**j)) for j in range(ctx.degree)]


def kernel_dim(f: QPoly) -> int:
    """dim over GF(q) of ker f.

    The rank is taken over GF(p); the kernel is a GF(q)-space, so its
    GF(p)-dimension is m times the GF(q)-dimension.
    """
    ctx = f.ctx
    rank = _fp.rank_mod_p(matrix_over_fp(f), ctx.p)
    dim_p = ctx.degree - rank
    assert dim_p % ctx.m == 0
    return dim_p // ctx.m


def indices(f: QPoly) -> QPolyIndices:
    supp = f.support
    if not supp:
        raise ZeroPolynomial("indices of the zero polynomial")
    d, ell = supp[-1], supp[0]
    if len(supp) == 1:
        return QPolyIndices(d, ell, d, None, True)
    return QPolyIndices(d, ell, supp[1], supp[-2], False)


def shift_form(f: QPoly, h: int, mode: str) -> QPoly:
    """Exponent-shifted forms of f.

    ``bar``: sum a_i y^(q^(i-h)), needs min support index >= h.
    ``tilde``: sum a_i y^(q^(i-ell)), with ell the min support index.
    """
    idx = indices(f)
    ctx = f.ctx
    if mode == "bar":
        if idx.ell < h:
            raise PreconditionViolated(f"bar form needs ell >= h (ell={idx.ell}, h={h})")
        shift = h
    elif mode == "tilde":
        shift = idx.ell
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = [0] * ctx.n
    for i in f.support:
        out[i - shift] = f.coeffs[i]
    return QPoly(ctx, tuple(out))


def adjoint_form(f: QPoly, h: int) -> tuple[QPoly, int]:
    """Rewrite {(y^(q^h), f(y))} as {(y^(q^h'), F(y))} through the adjoint.

    F(y) = sum a_i^(q^(n+h-i)) y^(q^(n-i)) and h' = n - h (h > 0) or 0.
    """
    ctx, n = f.ctx, f.ctx.n
    if not 0 <= h < n:
        raise PreconditionViolated(f"h={h} outside [0, {n})")
    out = [0] * n
    for i in f.support:
        out[(n - i) % n] = ctx.frobenius(f.coeffs[i], (n + h - i) % n)
    return QPoly(ctx, tuple(out)), (n - h) % n


def parse_qpoly(ctx: FieldCtx, coeffs: Sequence[int]) -> QPoly:
    """From the JSON array encoding (length n, entry i = coefficient of x^(q^i))."""
    coeffs = [int(c) for c in coeffs]
    if len(coeffs) < ctx.n:
        coeffs += [0] * (ctx.n - len(coeffs))
    if any(not 0 <= c < ctx.size for c in coeffs):
        raise ContextMismatch("coefficient outside the field")
    return QPoly(ctx, tuple(coeffs))
