"""Intersection criteria for clubs and for L_g with g = alpha x^(q^k) + beta x.

Every checker returns a :class:`CriterionVerdict`.  Characterisations return
``DECIDED``; one-directional bounds return ``GUARANTEED_NONEMPTY`` or
``INCONCLUSIVE`` and never claim emptiness.  Comparisons against n/2 are done
on doubled integers.

Shape hypotheses (monomial or not, h against d and ell, the binomial
exclusions) raise :class:`PreconditionViolated`; a failed numeric bound is
reported as ``INCONCLUSIVE`` with the arithmetic in ``details``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import NotADivisor, PreconditionViolated
from .field import FieldCtx, make_field
from .qpoly import QPoly, adjoint_form


class VerdictKind(str, Enum):
    DECIDED = "decided"
    GUARANTEED_NONEMPTY = "guaranteed_nonempty"
    INCONCLUSIVE = "inconclusive"


@dataclass
class CriterionVerdict:
    kind: VerdictKind
    criterion_id: str
    nonempty: bool | None = None
    hypotheses: list[tuple[str, bool]] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def claims_nonempty(self) -> bool:
        return self.kind is VerdictKind.GUARANTEED_NONEMPTY or (
            self.kind is VerdictKind.DECIDED and bool(self.nonempty)
        )

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "criterion": self.criterion_id}
        if self.kind is VerdictKind.DECIDED:
            out["nonempty"] = self.nonempty
        out["hypotheses"] = [[name, ok] for name, ok in self.hypotheses]
        out["details"] = self.details
        return out


def _decided(cid, value, hyps, **details) -> CriterionVerdict:
    return CriterionVerdict(VerdictKind.DECIDED, cid, bool(value), hyps, details)


def _bound(cid, ok, hyps, **details) -> CriterionVerdict:
    kind = VerdictKind.GUARANTEED_NONEMPTY if ok else VerdictKind.INCONCLUSIVE
    return CriterionVerdict(kind, cid, None, hyps, details)


def _require(cid: str, hyps: list[tuple[str, bool]]) -> None:
    for name, ok in hyps:
        if not ok:
            raise PreconditionViolated(f"{cid}: {name}")


# ---------------------------------------------------------------------------
# Clubs L_{r1} = {<(x, Tr_{r1}(x))>}, L_{r2} = {<(x, alpha Tr_{r2}(x))>}


@dataclass(frozen=True)
class ClubParams:
    ctx: FieldCtx
    r1: int
    r2: int
    alpha: int

    def __post_init__(self):
        n = self.ctx.n
        for r in (self.r1, self.r2):
            if r < 1 or n % r:
                raise NotADivisor(f"r={r} does not divide n={n}")
        if not 0 < self.alpha < self.ctx.size:
            raise PreconditionViolated("alpha must be a nonzero field element")

    @property
    def coprime(self) -> bool:
        return math.gcd(self.r1, self.r2) == 1

    def to_json(self) -> dict:
        return {"field": self.ctx.to_json(), "r1": self.r1, "r2": self.r2, "alpha": self.alpha}


def normalize_club(params: ClubParams) -> ClubParams:
    """Divide r1, r2 and n by d = gcd(r1, r2), viewing the field over GF(q^d).

    make_field(p, m*d, n/d) has the same total degree and hence the same
    modulus, so element integers (alpha in particular) carry over unchanged.
    """
    d = math.gcd(params.r1, params.r2)
    if d == 1:
        return params
    ctx = params.ctx
    sub = make_field(ctx.p, ctx.m * d, ctx.n // d)
    return ClubParams(sub, params.r1 // d, params.r2 // d, params.alpha)


def _require_coprime(cid: str, params: ClubParams) -> None:
    if not params.coprime:
        raise PreconditionViolated(f"{cid}: (r1, r2) = ({params.r1}, {params.r2}) is not coprime; normalize first")


def club_primo(params: ClubParams, literal: bool = False) -> CriterionVerdict:
    """Search a with Tr_{r1}(a) = -1, Tr_{r2}(alpha a) = s, or Tr_{r2}(a) = -1, Tr_{r1}(a/alpha) = s.

    With ``literal=True`` the sign s is +1.  The default uses s = -1, which
    is what the trace computation behind the criterion actually yields; the
    +1 version admits counterexamples (q = 3, r1 = r2 = 1, alpha = -1).
    """
    cid = "CLUB_PRIMO_LITERAL" if literal else "CLUB_PRIMO"
    _require_coprime(cid, params)
    ctx, alpha = params.ctx, params.alpha
    minus1 = ctx.neg(1)
    s = 1 if literal else minus1
    t1 = QPoly.trace(ctx, params.r1).values
    t2 = QPoly.trace(ctx, params.r2).values
    xs = np.arange(ctx.size, dtype=np.int64)
    case1 = (t1 == minus1) & (t2[ctx.vmul_const(alpha, xs)] == s)
    case2 = (t2 == minus1) & (t1[ctx.vmul_const(ctx.inv(alpha), xs)] == s)
    hits = np.nonzero(case1 | case2)[0]
    found = int(hits[0]) if hits.size else None
    hyps = [("(r1, r2) = 1", True), ("some a satisfies the trace conditions", found is not None)]
    return _bound(cid, found is not None, hyps, a=found, second_sign=int(s))


def _functional_nonzero(ctx: FieldCtx, fn) -> int | None:
    """A GF(p)-basis element w with fn(w) != 0, or None when fn vanishes."""
    for j in range(ctx.degree):
        w = ctx.p**j
        if fn(w):
            return w
    return None


def _unit_trace_element(ctx: FieldCtx, r: int) -> int:
    tr = QPoly.trace(ctx, r).values
    x = int(np.nonzero(tr)[0][0])
    return ctx.div(x, int(tr[x]))


def club_secondo(params: ClubParams, a: int, b: int) -> CriterionVerdict:
    """Decide L_{r1} ∩ L_{r2} ⊋ {H} when alpha = a b, a in GF(q^r1), b in GF(q^r2).

    The unit-trace elements are the Hilbert 90 cosets gamma* + (w^(q^r) - w).
    After fixing gamma1*, gamma2* the condition Tr(a gamma1 - gamma2/b) = 0
    becomes c0 + lam1(w1) + lam2(w2) = 0 with GF(q)-linear functionals lam_i,
    which is solvable iff c0 = 0 or one functional is nonzero.
    """
    cid = "CLUB_SECONDO"
    _require_coprime(cid, params)
    ctx, r1, r2 = params.ctx, params.r1, params.r2
    hyps = [
        ("a in GF(q^r1)^*", a != 0 and ctx.in_subfield(a, r1)),
        ("b in GF(q^r2)^*", b != 0 and ctx.in_subfield(b, r2)),
        ("alpha = a b", ctx.mul(a, b) == params.alpha),
    ]
    _require(cid, hyps)
    binv = ctx.inv(b)
    g1 = _unit_trace_element(ctx, r1)
    g2 = _unit_trace_element(ctx, r2)

    def tr(x):
        return ctx.rel_trace(x, 1)

    def wp(w, r):
        return ctx.sub(ctx.frobenius(w, r), w)

    c0 = tr(ctx.sub(ctx.mul(a, g1), ctx.mul(g2, binv)))
    gamma1, gamma2 = g1, g2
    if c0:
        w = _functional_nonzero(ctx, lambda w: tr(ctx.mul(a, wp(w, r1))))
        if w is not None:
            t = tr(ctx.mul(a, wp(w, r1)))
            w1 = ctx.mul(ctx.div(ctx.neg(c0), t), w)
            gamma1 = ctx.add(g1, wp(w1, r1))
        else:
            w = _functional_nonzero(ctx, lambda w: tr(ctx.mul(wp(w, r2), binv)))
            if w is None:
                return _decided(cid, False, hyps, gamma1_star=g1, gamma2_star=g2, c0=c0)
            t = tr(ctx.mul(wp(w, r2), binv))
            # -lam2(w2) = -c0 means lam2-part tr(w'/b) = c0
            w2 = ctx.mul(ctx.div(c0, t), w)
            gamma2 = ctx.add(g2, wp(w2, r2))
    # the adjusted gammas stay in their Hilbert 90 cosets
    assert ctx.hilbert90_solve(ctx.sub(gamma1, g1), r1) is not None
    assert ctx.hilbert90_solve(ctx.sub(gamma2, g2), r2) is not None
    return _decided(cid, True, hyps, gamma1=gamma1, gamma2=gamma2)


def club_sigma_bound(params: ClubParams) -> CriterionVerdict:
    """L_{r1} ∩ sigma(L_{r2}) is nonempty once r1 + r2 + 1 <= n/2."""
    cid = "CLUB_SIGMA"
    _require_coprime(cid, params)
    lhs2 = 2 * (params.r1 + params.r2 + 1)
    ok = lhs2 <= params.ctx.n
    return _bound(cid, ok, [("(r1, r2) = 1", True), ("2(r1+r2+1) <= n", ok)], lhs2=lhs2, n=params.ctx.n)


def club_same_field(params: ClubParams) -> CriterionVerdict:
    """For r1 = r2 = r: L_r ∩ sigma(L_r) != ∅ iff alpha is a product of two unit-trace elements."""
    cid = "CLUB_SAME_FIELD"
    if params.r1 != params.r2:
        raise PreconditionViolated(f"{cid}: r1 != r2")
    ctx = params.ctx
    tr = QPoly.trace(ctx, params.r1).values
    ones = np.nonzero(tr == 1)[0].astype(np.int64)
    logs = ctx.vlog(ones)
    prods = (logs[:, None] + logs[None, :]) % ctx.order
    present = np.zeros(ctx.order, dtype=bool)
    present[prods.ravel()] = True
    t_size = int(present.sum())
    inside = bool(present[ctx.log(params.alpha)])
    return _decided(cid, inside, [("r1 = r2", True)], T_size=t_size)


# ---------------------------------------------------------------------------
# L_g with g = alpha x^(q^k) + beta x against L_f = {<(y^(q^h), f(y))>}


@dataclass(frozen=True)
class BinomialParams:
    alpha: int
    beta: int
    k: int
    f: QPoly
    h: int

    def __post_init__(self):
        n = self.f.ctx.n
        if self.alpha == 0:
            raise PreconditionViolated("alpha must be nonzero")
        if not 1 <= self.k < n:
            raise PreconditionViolated(f"k={self.k} outside [1, {n})")
        if not 0 <= self.h < n:
            raise PreconditionViolated(f"h={self.h} outside [0, {n})")
        if self.f.is_zero():
            raise PreconditionViolated("f is zero")

    @classmethod
    def make(cls, alpha: int, beta: int, k: int, f: QPoly, h: int) -> "BinomialParams":
        """Build with k <= n/2, replacing g by its adjoint when k > n/2."""
        ctx = f.ctx
        if 2 * k > ctx.n:
            alpha, k = ctx.frobenius(alpha, ctx.n - k), ctx.n - k
        return cls(alpha, beta, k, f, h)

    @property
    def ctx(self) -> FieldCtx:
        return self.f.ctx

    @property
    def g(self) -> QPoly:
        return QPoly.binomial_g(self.ctx, self.alpha, self.beta, self.k)

    def coeff(self, i: int) -> int:
        return self.f.coeffs[i] if 0 <= i < self.ctx.n else 0

    def adjoint(self) -> "BinomialParams":
        F, h2 = adjoint_form(self.f, self.h)
        return BinomialParams(self.alpha, self.beta, self.k, F, h2)

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "k": self.k, "f": self.f.to_json(), "h": self.h}


IFF_FAMILIES = ("MON_H_EQ_D", "MON_BETA0", "BINOMIAL_SPECIAL", "SIGMA_MON_SPECIAL")
BASE_FAMILIES = ("MON_GENERAL", "H_LE_ELL", "H_GT_ELL", "SIGMA_MON", "SIGMA_H_LE_ELL", "SIGMA_H_GT_ELL")
ADJ_FAMILIES = ("ADJ_H_LE_ELL", "ADJ_H_GT_ELL", "ADJ_SIGMA_H_LE_ELL", "ADJ_SIGMA_H_GT_ELL")
SUFFICIENT_FAMILIES = BASE_FAMILIES + ADJ_FAMILIES
SWAPPED_FAMILIES = frozenset(
    {"SIGMA_MON_SPECIAL", "SIGMA_MON", "SIGMA_H_LE_ELL", "SIGMA_H_GT_ELL", "ADJ_SIGMA_H_LE_ELL", "ADJ_SIGMA_H_GT_ELL"}
)


def family_swapped(family: str) -> bool:
    """True when the family is about L_g ∩ sigma(L_f)."""
    if family not in SWAPPED_FAMILIES and family not in IFF_FAMILIES + SUFFICIENT_FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    return family in SWAPPED_FAMILIES


def _iff_shape(p: BinomialParams, family: str):
    """(hypotheses, t, e, c) for an iff family; c is the element whose norm is tested."""
    ctx, n, k, h = p.ctx, p.ctx.n, p.k, p.h
    idx = p.f.idx
    d, ell = idx.d, idx.ell
    mono = ("f is a monomial", idx.is_monomial)
    if family == "MON_H_EQ_D":
        hyps = [mono, ("h = d", h == d)]
        return hyps, d, math.gcd(n, k), lambda: ctx.div(ctx.sub(p.coeff(d), p.beta), p.alpha)
    if family == "MON_BETA0":
        hyps = [mono, ("beta = 0", p.beta == 0), ("h != d", h != d)]
        return hyps, d, math.gcd(n, k, abs(d - h)), lambda: ctx.div(p.coeff(d), p.alpha)
    if family == "BINOMIAL_SPECIAL":
        binom = len(p.f.support) == 2
        at_d = h == d and p.coeff(d) == p.beta
        at_l = h == ell and p.coeff(ell) == p.beta
        hyps = [("f is a binomial", binom), ("(h = d and a_d = beta) or (h = ell and a_ell = beta)", at_d or at_l)]
        t = ell if h == d else d
        return hyps, t, math.gcd(n, k, abs(t - h)), lambda: ctx.div(p.coeff(t), p.alpha)
    if family == "SIGMA_MON_SPECIAL":
        hyps = [mono, ("h = d or beta = 0", h == d or p.beta == 0)]
        ad = p.coeff(d)

        def c():
            return ctx.div(ctx.sub(1, ctx.mul(p.beta, ad)), ctx.mul(p.alpha, ad))

        return hyps, d, math.gcd(n, k, abs(d - h)), c
    raise ValueError(f"unknown iff family {family!r}")


def iff_criterion(p: BinomialParams, family: str) -> CriterionVerdict:
    hyps, t, e, c = _iff_shape(p, family)
    _require(family, hyps)
    val = c()
    nonempty = val != 0 and p.ctx.rel_norm(val, e) == 1
    return _decided(family, nonempty, hyps, e=e, t=t, norm_arg=val)


def _m_h_le_ell(p: BinomialParams) -> tuple[int, str]:
    idx, h, ah, beta = p.f.idx, p.h, p.coeff(p.h), p.beta
    if ah != beta:
        return 0, "a_h != beta"
    if beta == 0:
        return idx.ell - h, "a_h = beta = 0"
    return idx.ell2 - h, "a_h = beta != 0"


def _m_h_gt_ell(p: BinomialParams) -> tuple[int, str]:
    idx, h = p.f.idx, p.h
    if p.coeff(idx.d) != p.beta or idx.d != h:
        return max(idx.d, h), "a_d != beta or d != h"
    return idx.ell3, "a_d = beta and d = h"


def _m_h_sigma_le_ell(p: BinomialParams) -> tuple[int, str]:
    idx, ctx = p.f.idx, p.ctx
    if ctx.mul(p.beta, p.coeff(p.h)) == 1:
        return idx.ell2, "beta a_h = 1"
    if p.beta:
        return p.h, "beta != 0 and beta a_h != 1"
    return idx.d, "beta = 0"


def _m_h_sigma_gt_ell(p: BinomialParams) -> tuple[int, str]:
    idx, ctx, h = p.f.idx, p.ctx, p.h
    if p.beta == 0:
        return idx.ell, "beta = 0"
    if h != idx.d or ctx.mul(p.beta, p.coeff(h)) != 1:
        return max(idx.d, h), "beta != 0 and (h != d or beta a_h != 1)"
    return idx.ell3, "h = d and beta a_h = 1"


def _base_shape(p: BinomialParams, family: str) -> list[tuple[str, bool]]:
    idx, h = p.f.idx, p.h
    binom = len(p.f.support) == 2
    if family in ("MON_GENERAL", "SIGMA_MON"):
        return [("f is a monomial", idx.is_monomial), ("h != d", h != idx.d), ("beta != 0", p.beta != 0)]
    nonmono = ("f is not a monomial", not idx.is_monomial)
    if family == "H_LE_ELL":
        excl = not (binom and h == idx.ell) or p.coeff(h) != p.beta
        return [nonmono, ("h <= ell", h <= idx.ell), ("binomial with h = ell needs a_h != beta", excl)]
    if family == "H_GT_ELL":
        excl = not (binom and h == idx.d) or p.coeff(h) != p.beta
        return [nonmono, ("h > ell", h > idx.ell), ("binomial with h = d needs a_h != beta", excl)]
    if family == "SIGMA_H_LE_ELL":
        return [nonmono, ("h <= ell", h <= idx.ell)]
    if family == "SIGMA_H_GT_ELL":
        return [nonmono, ("h > ell", h > idx.ell)]
    raise ValueError(f"unknown family {family!r}")


def _base_bound(p: BinomialParams, family: str) -> tuple[bool, dict]:
    """Numeric bound of a base family, already known to be shape-applicable."""
    n, k, h, idx = p.ctx.n, p.k, p.h, p.f.idx
    d, ell = idx.d, idx.ell
    if family in ("MON_GENERAL", "SIGMA_MON"):
        lhs2 = 2 * (k + abs(d - h))
        return lhs2 <= n, {"lhs2": lhs2, "rhs2": n}
    if family == "H_LE_ELL":
        m, why = _m_h_le_ell(p)
        D = d - h
        lhs2 = max(2 * (k + D - m), D)
        rhs2 = n if 2 * m <= D else n - 2
        return lhs2 <= rhs2, {"m_h": m, "m_h_case": why, "lhs2": lhs2, "rhs2": rhs2}
    if family == "H_GT_ELL":
        m, why = _m_h_gt_ell(p)
        lhs2 = 2 * (k + m - ell)
        return lhs2 <= n, {"m_h": m, "m_h_case": why, "lhs2": lhs2, "rhs2": n}
    if family == "SIGMA_H_LE_ELL":
        m, why = _m_h_sigma_le_ell(p)
        lhs2 = 2 * (k + d - min(m, ell) + 1)
        return lhs2 <= n, {"m_h": m, "m_h_case": why, "lhs2": lhs2, "rhs2": n}
    if family == "SIGMA_H_GT_ELL":
        m, why = _m_h_sigma_gt_ell(p)
        lhs2 = 2 * (k + max(m, d) - ell + 1)
        return lhs2 <= n, {"m_h": m, "m_h_case": why, "lhs2": lhs2, "rhs2": n}
    raise ValueError(f"unknown family {family!r}")


def sufficient_shape(p: BinomialParams, family: str) -> list[tuple[str, bool]]:
    """Shape hypotheses of a sufficient family, evaluated without raising."""
    if family.startswith("ADJ_"):
        return _base_shape(p.adjoint(), family[4:])
    return _base_shape(p, family)


def sufficient_bound(p: BinomialParams, family: str) -> CriterionVerdict:
    """Evaluate a sufficient criterion.

    ``ADJ_*`` families rewrite (f, h) through :func:`adjoint_form` and apply
    the base family to the result.
    """
    target = p
    if family.startswith("ADJ_"):
        target = p.adjoint()
        base = family[4:]
    else:
        base = family
    if base not in BASE_FAMILIES or base in ("MON_GENERAL", "SIGMA_MON") and family.startswith("ADJ_"):
        raise ValueError(f"unknown sufficient family {family!r}")
    hyps = _base_shape(target, base)
    _require(family, hyps)
    ok, info = _base_bound(target, base)
    if target is not p:
        info["adjoint_f"] = target.f.to_json()
        info["adjoint_h"] = target.h
    hyps = hyps + [("2 lhs <= 2 rhs", ok)]
    return _bound(family, ok, hyps, **info)


def applicable_families(p: BinomialParams, swapped: bool) -> tuple[list[str], list[str]]:
    """(iff families, sufficient families) whose shape hypotheses hold for p."""
    iffs = [
        fam
        for fam in IFF_FAMILIES
        if family_swapped(fam) == swapped and all(ok for _, ok in _iff_shape(p, fam)[0])
    ]
    suff = [
        fam
        for fam in SUFFICIENT_FAMILIES
        if family_swapped(fam) == swapped and all(ok for _, ok in sufficient_shape(p, fam))
    ]
    return iffs, suff


def best_verdict(p: BinomialParams, swapped: bool) -> CriterionVerdict:
    """Combine every applicable criterion: an iff verdict wins, otherwise any firing bound."""
    iffs, suff = applicable_families(p, swapped)
    if iffs:
        return iff_criterion(p, iffs[0])
    last = None
    for fam in suff:
        v = sufficient_bound(p, fam)
        if v.claims_nonempty:
            return v
        last = v
    if last is None:
        return CriterionVerdict(VerdictKind.INCONCLUSIVE, "NONE", None, [("some family applies", False)])
    return last


def pseudoregulus_conditions(f: QPoly, h: int, swapped: bool = False) -> CriterionVerdict:
    """Conditions for L_{x^q} to meet L_f (or sigma(L_f)) with f of any shape."""
    ctx, n = f.ctx, f.ctx.n
    if not 0 <= h < n:
        raise PreconditionViolated(f"h={h} outside [0, {n})")
    idx = f.idx
    d, ell, ell2 = idx.d, idx.ell, idx.ell2
    if idx.is_monomial:
        ad = f.coeffs[d]
        return _decided("PSEUDOREGULUS_MONOMIAL", ctx.rel_norm(ad, 1) == 1, [("f is a monomial", True)], a_d=ad)
    conds: list[tuple[str, bool]] = []
    if swapped:
        conds.append(("2(d-ell+2) <= n", 2 * (d - ell + 2) <= n))
        conds.append(("ell = 0 and 2(n-ell2+2) <= n", ell == 0 and 2 * (n - ell2 + 2) <= n))
        return _bound("PSEUDOREGULUS_SIGMA", any(ok for _, ok in conds), conds)
    ah = f.coeffs[h]
    if h <= ell:
        m = 0 if ah else ell - h
        D = d - h
        lhs2 = max(2 * (D + 1 - m), D)
        rhs2 = n if 2 * m <= D else n - 2
        conds.append(("I.1", lhs2 <= rhs2))
        conds.append(("I.2", h == ell == 0 and 2 * (ell2 - 1) >= n))
    else:
        conds.append(("II.1", 2 * (max(d, h) - ell + 1) <= n))
        if ell != 0 and h >= d:
            mh = 0 if ah else h - d
            D = h - ell
            lhs2 = max(2 * (D + 1 - mh), D)
            rhs2 = n if 2 * mh <= D else n - 2
            conds.append(("II.2", lhs2 <= rhs2))
        else:
            conds.append(("II.2", False))
        conds.append(("II.3", ell == 0 and 2 * (min(h, ell2) - 1) >= n))
    return _bound("PSEUDOREGULUS", any(ok for _, ok in conds), conds)
