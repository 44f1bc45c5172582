"""Exact arithmetic in the tower GF(p) < GF(q) = GF(p^m) < GF(q^n).

The whole tower lives inside one extension of degree ``m*n`` of GF(p).
Elements are plain Python ints in ``[0, p^(m*n))``: the base-p digits of
the int are the coordinates in the power basis of the modulus root, with
``a_0`` the least significant digit.  Subfields GF(q^r) are the fixed points
of the Frobenius ``x -> x^(q^r)``; there are no separate towers.

Multiplication, powers and Frobenius use discrete-log tables relative to a
primitive element.  Inversion follows the extended Euclidean algorithm on
the polynomial representation, and :meth:`FieldCtx.mul_reference` multiplies
polynomials directly; tests use both as cross-checks of the tables.
"""

from __future__ import annotations

import functools
import math
import os
from dataclasses import dataclass

import numpy as np

from . import _fp
from .errors import NotADivisor, NotPrime, SizeCapExceeded

DEFAULT_FIELD_CAP = 1 << 20


def field_cap() -> int:
    """Field-size cap, overridable through the ``LINSET_CAP`` variable."""
    env = os.environ.get("LINSET_CAP")
    return int(env) if env else DEFAULT_FIELD_CAP


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def to_digits(a: int, p: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        a, r = divmod(a, p)
        out.append(r)
    return out


def from_digits(digits, p: int) -> int:
    a = 0
    for d in reversed(list(digits)):
        a = a * p + int(d)
    return a


@functools.lru_cache(maxsize=None)
def smallest_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Monic irreducible of the given degree with the smallest packed value.

    Candidates ``x^degree + sum a_i x^i`` are scanned in increasing order of
    ``sum a_i p^i``; the result is returned as the full coefficient tuple,
    lowest degree first, including the leading 1.
    """
    for t in range(p**degree):
        f = to_digits(t, p, degree) + [1]
        if _fp.is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class _Tables:
    """Log/antilog tables for GF(p^D), shared by every context with that (p, D)."""

    def __init__(self, p: int, degree: int):
        self.p = p
        self.degree = degree
        self.size = p**degree
        self.modulus = smallest_irreducible(p, degree)
        mod = list(self.modulus)
        order = self.size - 1
        factors = prime_factors(order)

        def is_primitive(g: int) -> bool:
            gp = _fp.trim(to_digits(g, p, degree))
            return all(_fp.poly_powmod(gp, order // r, mod, p) != [1] for r in factors)

        self.generator = next(g for g in range(1, self.size) if is_primitive(g)) if order > 1 else 1
        self.pw = np.array([p**j for j in range(degree)], dtype=np.int64)

        exp = self._antilog_table(mod)
        log = np.full(self.size, -1, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        assert (log[1:] >= 0).all(), "generator is not primitive"
        self.exp_arr = exp
        self.log_arr = log
        self.exp = exp.tolist()
        self.log = log.tolist()

        frob = np.zeros(self.size, dtype=np.int64)
        nz = np.arange(1, self.size)
        frob[nz] = exp[(log[nz] * p) % order]
        self.frob_p_arr = frob
        self.frob_p = frob.tolist()

        if p == 2:
            self.neg = list(range(self.size))
        else:
            dig = (np.arange(self.size)[:, None] // self.pw) % p
            self.neg = (((-dig) % p) @ self.pw).tolist()
        # zech[i] = log(1 + g^i), or -1 when 1 + g^i = 0
        e = exp
        d0 = e % p
        plus_one = e - d0 + (d0 + 1) % p
        self.zech = log[plus_one].tolist()

    def _antilog_table(self, mod: list[int]) -> np.ndarray:
        """exp[i] = g^i, built in sqrt-sized blocks with matrix products over GF(p)."""
        p, deg, order = self.p, self.degree, self.size - 1
        g = _fp.trim(to_digits(self.generator, p, deg))
        block = max(1, math.isqrt(order) + 1)
        small = [[1]]
        for _ in range(block - 1):
            small.append(_fp.poly_mod(_fp.poly_mul(small[-1], g, p), mod, p))
        small_dig = np.array([(s + [0] * deg)[:deg] for s in small], dtype=np.int64)
        giant = _fp.poly_mod(_fp.poly_mul(small[-1], g, p), mod, p)  # g^block
        out = np.empty(order, dtype=np.int64)
        cur = [1]
        for start in range(0, order, block):
            cols = [_fp.poly_mod(_fp.poly_mul(cur, [0] * j + [1], p), mod, p) for j in range(deg)]
            mat = np.array([(c + [0] * deg)[:deg] for c in cols], dtype=np.int64)
            vals = ((small_dig @ mat) % p) @ self.pw
            stop = min(start + block, order)
            out[start:stop] = vals[: stop - start]
            cur = _fp.poly_mod(_fp.poly_mul(cur, giant, p), mod, p)
        return out


@functools.lru_cache(maxsize=None)
def _tables(p: int, degree: int) -> _Tables:
    return _Tables(p, degree)


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """GF(q^n) with q = p^m, as a degree ``m*n`` extension of GF(p)."""

    p: int
    m: int
    n: int
    _t: _Tables

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.m, self.n) == (other.p, other.m, other.n)

    def __hash__(self):
        return hash((self.p, self.m, self.n))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m}, n={self.n})"

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def degree(self) -> int:
        return self.m * self.n

    @property
    def size(self) -> int:
        return self._t.size

    @property
    def order(self) -> int:
        """Order of the multiplicative group, ``p^(mn) - 1``."""
        return self._t.size - 1

    @property
    def modulus(self) -> tuple[int, ...]:
        return self._t.modulus

    @property
    def generator(self) -> int:
        return self._t.generator

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "n": self.n, "modulus": list(self.modulus)}

    # -- scalar arithmetic ------------------------------------------------

    def elements(self) -> range:
        return range(self.size)

    def nonzero(self) -> range:
        return range(1, self.size)

    def coeffs(self, x: int) -> list[int]:
        return to_digits(x, self.p, self.degree)

    def from_coeffs(self, coeffs) -> int:
        return from_digits(coeffs, self.p)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        t = self._t
        la = t.log[a]
        z = t.zech[(t.log[b] - la) % (t.size - 1)]
        if z < 0:
            return 0
        return t.exp[(la + z) % (t.size - 1)]

    def neg(self, a: int) -> int:
        return self._t.neg[a]

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self._t.neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        t = self._t
        return t.exp[(t.log[a] + t.log[b]) % (t.size - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in finite field")
        if a == 0:
            return 0
        t = self._t
        return t.exp[(t.log[a] - t.log[b]) % (t.size - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        t = self._t
        return t.exp[(t.log[a] * e) % (t.size - 1)]

    def inv(self, a: int) -> int:
        """Inverse by the extended Euclidean algorithm on polynomials."""
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        digits = _fp.trim(self.coeffs(a))
        return self.from_coeffs(_fp.poly_inverse_mod(digits, list(self.modulus), self.p))

    def mul_reference(self, a: int, b: int) -> int:
        """Product through polynomial multiplication and reduction (no tables)."""
        prod = _fp.poly_mul(_fp.trim(self.coeffs(a)), _fp.trim(self.coeffs(b)), self.p)
        return self.from_coeffs(_fp.poly_mod(prod, list(self.modulus), self.p))

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._t.log[a]

    def exp(self, i: int) -> int:
        return self._t.exp[i % (self._t.size - 1)]

    def scalar(self, c: int) -> int:
        """Image of the integer ``c`` in the prime field."""
        return c % self.p

    # -- Frobenius, traces, norms ---------------------------------------

    def frobenius(self, x: int, r: int) -> int:
        """x^(q^r) by ``m * (r mod n)`` successive p-th powers."""
        fp = self._t.frob_p
        for _ in range(self.m * (r % self.n)):
            x = fp[x]
        return x

    @functools.cached_property
    def _frob_cache(self) -> dict:
        return {}

    def frobenius_table(self, r: int) -> np.ndarray:
        """Array ``T`` with ``T[x] = x^(q^r)`` for every element ``x``."""
        r %= self.n
        cache = self._frob_cache
        if r not in cache:
            table = np.arange(self.size, dtype=np.int64)
            for _ in range(self.m * r):
                table = self._t.frob_p_arr[table]
            table.setflags(write=False)
            cache[r] = table
        return cache[r]

    def _check_divisor(self, r: int) -> None:
        if r <= 0 or self.n % r:
            raise NotADivisor(f"{r} does not divide n={self.n}")

    def rel_trace(self, x: int, r: int) -> int:
        """Tr_{q^n/q^r}(x) = sum of x^(q^(i r)) for i < n/r."""
        self._check_divisor(r)
        acc = 0
        y = x
        for _ in range(self.n // r):
            acc = self.add(acc, y)
            y = self.frobenius(y, r)
        return acc

    def rel_norm(self, x: int, r: int) -> int:
        """N_{q^n/q^r}(x) = x^((q^n - 1)/(q^r - 1))."""
        self._check_divisor(r)
        return self.pow(x, self.order // (self.q**r - 1))

    def in_subfield(self, x: int, r: int) -> bool:
        """True when x lies in GF(q^r); for r not dividing n this is GF(q^gcd(r, n))."""
        return self.frobenius(x, r) == x

    def subfield_elements(self, r: int) -> list[int]:
        self._check_divisor(r)
        table = self.frobenius_table(r)
        return np.nonzero(table == np.arange(self.size))[0].tolist()

    def hilbert90_solve(self, gamma: int, r: int) -> int | None:
        """Some w with w^(q^r) - w = gamma, or None when Tr_{q^n/q^r}(gamma) != 0.

        The map w -> w^(q^r) - w is GF(p)-linear, so the equation is solved as a
        linear system on the power-basis coordinates.
        """
        self._check_divisor(r)
        if self.rel_trace(gamma, r) != 0:
            return None
        deg = self.degree
        cols = []
        for j in range(deg):
            e = self.p**j
            cols.append(self.coeffs(self.sub(self.frobenius(e, r), e)))
        a = [[cols[j][i] for j in range(deg)] for i in range(deg)]
        sol = _fp.solve_mod_p(a, self.coeffs(gamma), self.p)
        assert sol is not None, "trace-zero element without Hilbert 90 preimage"
        return self.from_coeffs(sol)

    # -- vectorised helpers -------------------------------------------------

    def vmul_const(self, c: int, v: np.ndarray) -> np.ndarray:
        """Elementwise c * v for an integer array v of field elements."""
        if c == 0:
            return np.zeros_like(v)
        t = self._t
        out = np.zeros_like(v)
        nz = v != 0
        out[nz] = t.exp_arr[(t.log_arr[v[nz]] + t.log[c]) % (t.size - 1)]
        return out

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        t = self._t
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        a, b = np.broadcast_arrays(a, b)
        nz = (a != 0) & (b != 0)
        out[nz] = t.exp_arr[(t.log_arr[a[nz]] + t.log_arr[b[nz]]) % (t.size - 1)]
        return out

    def vdiv(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise a / b; positions with b == 0 are returned as 0."""
        t = self._t
        a, b = np.broadcast_arrays(a, b)
        out = np.zeros(a.shape, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        out[nz] = t.exp_arr[(t.log_arr[a[nz]] - t.log_arr[b[nz]]) % (t.size - 1)]
        return out

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        pw = self._t.pw
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        da = (a[..., None] // pw) % self.p
        db = (b[..., None] // pw) % self.p
        return ((da + db) % self.p) @ pw

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a
        return np.asarray(self._t.neg, dtype=np.int64)[a]

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vlog(self, a: np.ndarray) -> np.ndarray:
        return self._t.log_arr[a]

    def vexp(self, i: np.ndarray) -> np.ndarray:
        return self._t.exp_arr[np.mod(i, self.order)]

    def digit_matrix(self, v: np.ndarray) -> np.ndarray:
        return (np.asarray(v)[..., None] // self._t.pw) % self.p

    def pack_digits(self, d: np.ndarray) -> np.ndarray:
        return (np.asarray(d) % self.p) @ self._t.pw


def make_field(p: int, m: int, n: int, cap: int | None = None) -> FieldCtx:
    """Context for GF(q^n), q = p^m, with the deterministic smallest modulus."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    cap = field_cap() if cap is None else cap
    size = p ** (m * n)
    if size > cap:
        raise SizeCapExceeded("field size", size, cap)
    return _make_field(p, m, n)


@functools.lru_cache(maxsize=None)
def _make_field(p: int, m: int, n: int) -> FieldCtx:
    return FieldCtx(p, m, n, _tables(p, m * n))


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^m; raises NotPrime when q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            if q != 1 or not is_prime(p):
                raise NotPrime(f"not a prime power")
            return p, m
    raise NotPrime("q must be at least 2")


def field_for(q: int, n: int, cap: int | None = None) -> FieldCtx:
    p, m = prime_power(q)
    return make_field(p, m, n, cap)
