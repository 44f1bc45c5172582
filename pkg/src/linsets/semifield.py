"""Presemifields x∘y = L1(x) L2(y) - x y and the necessary conditions around them.

A zero divisor is a pair x, y != 0 with L1(x) L2(y) = x y.  Writing both
sides through discrete logs, this is log L1(x) - log x = log y - log L2(y),
so the exhaustive search over all (x, y) reduces to matching two arrays of
length q^n.  The dual oracle checks, for every x, that y -> x∘y has full
rank over GF(p).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .criteria import BinomialParams, iff_criterion, sufficient_bound, _m_h_sigma_le_ell
from .errors import NotADivisor, PreconditionViolated, SizeCapExceeded
from .field import FieldCtx, make_field, prime_power
from .qpoly import QPoly

DEFAULT_PAIR_CAP = 2**26
OPEN_CASES = ((2, 2), (4, 1), (4, 2), (6, 2), (6, 3), (3, 1), (5, 1), (9, 3))


def pair_cap() -> int:
    env = os.environ.get("LINSET_PAIR_CAP")
    return int(env) if env else DEFAULT_PAIR_CAP


@dataclass(frozen=True)
class BelPair:
    L1: QPoly
    L2: QPoly

    def __post_init__(self):
        if self.L1.ctx != self.L2.ctx:
            raise PreconditionViolated("L1 and L2 over different fields")

    @property
    def ctx(self) -> FieldCtx:
        return self.L1.ctx

    def product(self, x: int, y: int) -> int:
        ctx = self.ctx
        return ctx.sub(ctx.mul(self.L1(x), self.L2(y)), ctx.mul(x, y))

    def to_json(self) -> dict:
        return {"L1": self.L1.to_json(), "L2": self.L2.to_json()}


@dataclass
class SemifieldReport:
    is_presemifield: bool
    witness_zero_divisor: tuple[int, int] | None
    rank_oracle_agrees: bool | None = None
    thm41_consistent: bool | None = None
    cor42_consistent: bool | None = None
    cor43_report: list[tuple[str, bool]] | None = None
    case_label: tuple[int, int, int] | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "is_presemifield": self.is_presemifield,
            "witness": list(self.witness_zero_divisor) if self.witness_zero_divisor else None,
        }
        for key in ("rank_oracle_agrees", "thm41_consistent", "cor42_consistent"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.cor43_report is not None:
            out["cor43"] = [[c, ok] for c, ok in self.cor43_report]
        if self.case_label is not None:
            out["case"] = list(self.case_label)
        out.update(self.extra)
        return out


def _check_cap(ctx: FieldCtx, cap: int | None) -> None:
    cap = pair_cap() if cap is None else cap
    cost = ctx.size**2
    if cost > cap:
        raise SizeCapExceeded(f"zero-divisor scan over GF({ctx.q}^{ctx.n})", cost, cap)


def zero_divisor(pair: BelPair) -> tuple[int, int] | None:
    """Lexicographically least zero divisor (x, y), or None."""
    ctx = pair.ctx
    o = ctx.order
    xs = np.arange(1, ctx.size, dtype=np.int64)
    l1 = pair.L1.values[1:]
    l2 = pair.L2.values[1:]
    lx = ctx.vlog(xs)
    ok1 = l1 != 0
    ok2 = l2 != 0
    a = np.full(xs.size, -1, dtype=np.int64)
    a[ok1] = (ctx.vlog(l1[ok1]) - lx[ok1]) % o
    b = np.full(xs.size, -2, dtype=np.int64)
    b[ok2] = (lx[ok2] - ctx.vlog(l2[ok2])) % o
    present = np.zeros(o, dtype=bool)
    present[b[ok2]] = True
    hit_x = np.nonzero(ok1 & present[np.where(ok1, a, 0)])[0]
    if hit_x.size == 0:
        return None
    xi = int(hit_x[0])
    yi = int(np.nonzero(b == a[xi])[0][0])
    return xi + 1, yi + 1


def zero_divisor_grid(pair: BelPair, block: int = 256) -> tuple[int, int] | None:
    """The same search done literally over the (x, y) grid, for small fields."""
    ctx = pair.ctx
    ys = np.arange(1, ctx.size, dtype=np.int64)
    l2 = pair.L2.values[ys]
    for start in range(1, ctx.size, block):
        xs = np.arange(start, min(start + block, ctx.size), dtype=np.int64)
        l1 = pair.L1.values[xs]
        lhs = ctx.vmul(np.repeat(l1, ys.size), np.tile(l2, xs.size))
        rhs = ctx.vmul(np.repeat(xs, ys.size), np.tile(ys, xs.size))
        hits = np.nonzero(lhs == rhs)[0]
        if hits.size:
            i = int(hits[0])
            return int(xs[i // ys.size]), int(ys[i % ys.size])
    return None


def _batched_full_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """For a stack of square matrices over GF(p), True where the matrix is invertible."""
    m = mats.copy() % p
    nb, dim, _ = m.shape
    alive = np.ones(nb, dtype=bool)
    rows = np.arange(nb)
    inv_tab = np.array([0] + [pow(i, -1, p) for i in range(1, p)], dtype=np.int64)
    for c in range(dim):
        col = m[:, c:, c]
        nz = col != 0
        has = nz.any(axis=1)
        alive &= has
        piv = c + np.argmax(nz, axis=1)
        top = m[rows, c].copy()
        m[rows, c] = m[rows, piv]
        m[rows, piv] = top
        scale = inv_tab[m[:, c, c]]
        m[:, c, :] = (m[:, c, :] * scale[:, None]) % p
        factors = m[:, :, c].copy()
        factors[:, c] = 0
        m = (m - factors[:, :, None] * m[:, c, :][:, None, :]) % p
    return alive


def rank_oracle(pair: BelPair) -> bool:
    """True when y -> x∘y is invertible for every x != 0."""
    ctx = pair.ctx
    xs = np.arange(1, ctx.size, dtype=np.int64)
    l1 = pair.L1.values[xs]
    cols = []
    for j in range(ctx.degree):
        basis = ctx.p**j
        img = ctx.vsub(ctx.vmul_const(int(pair.L2.values[basis]), l1), ctx.vmul_const(basis, xs))
        cols.append(ctx.digit_matrix(img))
    # mats[x][i][j] = digit i of x∘(p^j)
    mats = np.stack(cols, axis=2).astype(np.int64)
    return bool(_batched_full_rank(mats, ctx.p).all())


def is_presemifield(pair: BelPair, cap: int | None = None, dual: bool = True) -> SemifieldReport:
    _check_cap(pair.ctx, cap)
    wit = zero_divisor(pair)
    rep = SemifieldReport(wit is None, wit)
    if dual:
        rep.rank_oracle_agrees = rank_oracle(pair) == (wit is None)
    return rep


def distributivity_spot_check(pair: BelPair, rng, trials: int = 20) -> bool:
    ctx = pair.ctx
    for _ in range(trials):
        x, y, z = (rng.randbelow(ctx.size) for _ in range(3))
        if pair.product(x, ctx.add(y, z)) != ctx.add(pair.product(x, y), pair.product(x, z)):
            return False
        if pair.product(ctx.add(x, y), z) != ctx.add(pair.product(x, z), pair.product(y, z)):
            return False
    return True


def scaled_pair(pair: BelPair, c: int) -> BelPair:
    """Pair for (x, y) -> (c x) ∘ y / c, i.e. L1 replaced by c^-1 L1(c x)."""
    ctx = pair.ctx
    cinv = ctx.inv(c)
    coeffs = tuple(ctx.mul(cinv, ctx.mul(a, ctx.frobenius(c, i))) for i, a in enumerate(pair.L1.coeffs))
    return BelPair(QPoly(ctx, coeffs), pair.L2)


def has_identity(pair: BelPair) -> bool:
    """Whether some e satisfies e∘x = x∘e = x for all x (checked on a GF(p)-basis)."""
    ctx = pair.ctx
    basis = [ctx.p**j for j in range(ctx.degree)]
    for e in ctx.nonzero():
        if all(pair.product(e, b) == b and pair.product(b, e) == b for b in basis):
            return True
    return False


def _is_trace(L: QPoly) -> bool:
    return L == QPoly.trace(L.ctx, 1)


def check_thm41(pair: BelPair, cap: int | None = None) -> bool:
    """With L1 = Tr: deg L2 < q^(n/2 - 1) must rule out a presemifield.

    Returns True when no violation is observed.  The degree of L2 is q^d
    with d its q-degree, so the antecedent is 2d < n - 2.
    """
    if not _is_trace(pair.L1):
        raise PreconditionViolated("L1 must be Tr_{q^n/q}")
    n = pair.ctx.n
    if pair.L2.is_zero():
        small = True
    else:
        small = 2 * pair.L2.idx.d < n - 2
    if not small:
        return True
    return not is_presemifield(pair, cap, dual=False).is_presemifield


def trace_pair(ctx: FieldCtx, r1: int, r2: int, alpha: int = 1) -> BelPair:
    for r in (r1, r2):
        if r < 1 or ctx.n % r:
            raise NotADivisor(f"r={r} does not divide n={ctx.n}")
    return BelPair(QPoly.trace(ctx, r1), QPoly.trace(ctx, r2, alpha))


def check_cor42(ctx: FieldCtx, r1: int, r2: int, alpha: int, cap: int | None = None) -> bool:
    """If r1 + r2 <= n/2 - 1, the trace pair must have a zero divisor."""
    pair = trace_pair(ctx, r1, r2, alpha)
    if 2 * (r1 + r2) > ctx.n - 2:
        return True
    return not is_presemifield(pair, cap, dual=False).is_presemifield


def g_shape(L2: QPoly) -> tuple[int, int, int]:
    """(alpha, beta, k) when L2 = alpha y^(q^k) + beta y with k >= 1 and alpha != 0."""
    supp = [i for i in L2.support if i]
    if len(supp) != 1:
        raise PreconditionViolated("L2 is not of the form alpha y^(q^k) + beta y with k >= 1")
    k = supp[0]
    return L2.coeffs[k], L2.coeffs[0], k


def cor43_conditions(pair: BelPair) -> list[tuple[str, bool]]:
    """Necessary conditions for S_{f,g} (f = L1, g = L2) to have no zero divisors.

    Each entry is (condition, holds) for the bullets that apply.  They are the
    negations of the sigma-intersection criteria at h = 0; the m_0 entry that
    reads "h" is taken as 0.
    """
    alpha, beta, k = g_shape(pair.L2)
    f = pair.L1
    if f.is_zero():
        raise PreconditionViolated("f is zero")
    p = BinomialParams.make(alpha, beta, k, f, 0)
    ctx, n, idx = p.ctx, p.ctx.n, f.idx
    out: list[tuple[str, bool]] = []
    if idx.is_monomial:
        if idx.d == 0 or beta == 0:
            v = iff_criterion(p, "SIGMA_MON_SPECIAL")
            out.append(("N((1 - beta a_d)/(alpha a_d)) != 1", not v.nonempty))
        else:
            out.append(("2(k + d) > n", 2 * (p.k + idx.d) > n))
        return out
    m0, _ = _m_h_sigma_le_ell(p)
    out.append(("2(k + d - min(m_0, ell) + 1) > n", 2 * (p.k + idx.d - min(m0, idx.ell) + 1) > n))
    if idx.ell == 0:
        if beta == 0:
            mh = 0
        elif ctx.mul(beta, f.coeffs[0]) != 1:
            mh = n - idx.ell2
        else:
            mh = idx.d - idx.ell2
        out.append(("2(k + max(m^_0, n - ell2) + 1) > n", 2 * (p.k + max(mh, n - idx.ell2) + 1) > n))
    return out


def check_cor43(pair: BelPair, cap: int | None = None) -> SemifieldReport:
    conds = cor43_conditions(pair)
    rep = is_presemifield(pair, cap, dual=False)
    rep.cor43_report = conds
    rep.extra["cor43_consistent"] = (not rep.is_presemifield) or all(ok for _, ok in conds)
    return rep


def sigma_verdicts_h0(pair: BelPair) -> list:
    """The sigma criteria at h = 0 whose negations are the cor43 bullets (for cross-checks)."""
    alpha, beta, k = g_shape(pair.L2)
    p = BinomialParams.make(alpha, beta, k, pair.L1, 0)
    out = []
    for fam in ("SIGMA_MON_SPECIAL",):
        try:
            out.append(iff_criterion(p, fam))
        except PreconditionViolated:
            pass
    for fam in ("SIGMA_MON", "SIGMA_H_LE_ELL", "ADJ_SIGMA_H_LE_ELL"):
        try:
            out.append(sufficient_bound(p, fam))
        except PreconditionViolated:
            pass
    return out


def open_case_registry(q: int, max_n: int = 13) -> list[tuple[int, int]]:
    """Listed (n, r) cases plus (n, n/2) for even n >= 8 up to max_n."""
    cases = list(OPEN_CASES)
    cases += [(n, n // 2) for n in range(8, max_n + 1, 2)]
    return cases


def resolve_open_case(q: int, case: tuple[int, int], cap: int | None = None, archive: str | None = None) -> SemifieldReport:
    """Decide whether Tr_{q^n/q}(x) Tr_{q^n/q^r}(y) - x y has zero divisors at this q."""
    n, r = case
    if (n, r) not in OPEN_CASES and not (n >= 8 and n % 2 == 0 and r == n // 2):
        raise PreconditionViolated(f"({n}, {r}) is not an open case")
    p, m = prime_power(q)
    cap = pair_cap() if cap is None else cap
    cost = q ** (2 * n)
    if cost > cap:
        raise SizeCapExceeded(f"open case (n, r) = ({n}, {r}) at q={q}", cost, cap)
    ctx = make_field(p, m, n, cap=max(cap, q**n))
    pair = trace_pair(ctx, 1, r)
    rep = is_presemifield(pair, cap)
    rep.case_label = (q, n, r)
    if archive:
        record = {
            "p": p,
            "m": m,
            "n": n,
            "r": r,
            "modulus": list(ctx.modulus),
            "is_presemifield": rep.is_presemifield,
            "witness": list(rep.witness_zero_divisor) if rep.witness_zero_divisor else None,
            "rank_oracle_agrees": rep.rank_oracle_agrees,
        }
        append_result(archive, record)
    return rep


def resolve_open_cases(q: int, cap: int | None = None, archive: str | None = None, max_n: int = 13) -> list[dict]:
    """Every registry case at this q; cases over the cap are reported with their cost."""
    cap = pair_cap() if cap is None else cap
    out = []
    for case in open_case_registry(q, max_n):
        try:
            rep = resolve_open_case(q, case, cap, archive)
            out.append({"q": q, "n": case[0], "r": case[1], **rep.to_json()})
        except SizeCapExceeded as exc:
            out.append({"q": q, "n": case[0], "r": case[1], "skipped": "cap", "cost": exc.cost, "cap": exc.cap})
    return out


def append_result(path: str, record: dict) -> None:
    """Append to a JSON-lines archive unless an identical key is already there."""
    key = tuple(record[k] if not isinstance(record[k], list) else tuple(record[k]) for k in ("p", "m", "n", "r", "modulus"))
    if os.path.exists(path):
        with open(path) as fh:
            for line in fh:
                old = json.loads(line)
                okey = tuple(old[k] if not isinstance(old[k], list) else tuple(old[k]) for k in ("p", "m", "n", "r", "modulus"))
                if okey == key:
                    if old["is_presemifield"] != record["is_presemifield"]:
                        raise AssertionError(f"archived result disagrees for {key}")
                    return
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "a") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")
