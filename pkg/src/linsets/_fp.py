"""Polynomials and linear algebra over a prime field GF(p).

Polynomials are lists of residues, lowest degree first, with no trailing
zeros (``[]`` is the zero polynomial).
"""

from __future__ import annotations


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


def poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        trim(a)
    return trim(q), a


def poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    return poly_divmod(a, b, p)[1]


def poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return trim(out)


def poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv_lead = pow(a[-1], -1, p)
        a = [c * inv_lead % p for c in a]
    return a


def poly_powmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = poly_mod(a, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = poly_mod(poly_mul(base, base, p), mod, p)
    return result


def poly_inverse_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Inverse of ``a`` modulo ``mod`` by the extended Euclidean algorithm."""
    r0, r1 = list(mod), poly_mod(a, mod, p)
    s0, s1 = [], [1]
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = pow(r0[0], -1, p)
    return [x * c % p for x in s0]


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin-style test: gcd(x^(p^i) - x, f) = 1 for every i <= deg f / 2."""
    deg = len(f) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(deg // 2):
        xp = poly_powmod(xp, p, f, p)
        if len(poly_gcd(poly_sub(xp, x, p), f, p)) != 1:
            return False
    return True


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank over GF(p) by Gaussian elimination with first-nonzero pivoting."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        prow = [v * inv % p for v in m[rank]]
        m[rank] = prow
        for i in range(len(m)):
            if i != rank and m[i][col] % p:
                c = m[i][col]
                m[i] = [(a - c * b) % p for a, b in zip(m[i], prow)]
        rank += 1
        if rank == len(m):
            break
    return rank


def solve_mod_p(a: list[list[int]], b: list[int], p: int) -> list[int] | None:
    """One solution of ``a @ x = b`` over GF(p), free variables set to 0."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    m = [list(a[i]) + [b[i]] for i in range(nrows)]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][col] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(nrows):
            if i != rank and m[i][col] % p:
                c = m[i][col]
                m[i] = [(x - c * y) % p for x, y in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    if any(m[i][ncols] % p for i in range(rank, nrows)):
        return None
    x = [0] * ncols
    for i, col in enumerate(pivots):
        x[col] = m[i][ncols]
    return x
