"""Genus formulas, Hasse-Weil intervals and excluded-point counts.

The curves behind the sufficient criteria are Kummer covers x^(q^k - 1) = F(y)
of the rational function field, or (for the club case) a generalised
Artin-Schreier cover.  Each family has a hard-coded valuation profile for
F(y) and a closed-form genus; the two are cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .criteria import BinomialParams, ClubParams, _base_shape, _require, _require_coprime
from .errors import IrreducibilityUnverified, PreconditionViolated, ProfileInvalid
from .field import prime_factors

GENUS_FAMILIES = ("MON", "H_LE_ELL", "H_GT_ELL", "SIGMA_H_LE_ELL", "SIGMA_H_GT_ELL", "CLUBS_SIGMA")


@dataclass(frozen=True)
class PlaceEntry:
    place: str
    valuation: int
    count: int
    degree: int = 1


@dataclass
class ValuationProfile:
    """Valuations of the defining function at the places of the base field.

    For Kummer profiles ``m`` is the cover degree and ``valuation`` is v_P(u);
    for Artin-Schreier profiles ``p_degree`` is the degree q̄ and
    ``valuation`` is m_P.  Places not listed have valuation 0 (resp. m_P = -1).
    """

    m: int | None = None
    p_degree: int | None = None
    base_genus: int = 0
    entries: list[PlaceEntry] = field(default_factory=list)

    def add(self, place: str, valuation: int, count: int, degree: int = 1) -> None:
        if count:
            self.entries.append(PlaceEntry(place, valuation, count, degree))

    def divisor_degree(self) -> int:
        """Degree of the divisor of u; zero for a principal divisor."""
        return sum(e.valuation * e.count * e.degree for e in self.entries)


def genus_kummer(profile: ValuationProfile, p: int | None = None, assume_irreducible: bool = False) -> int:
    """Genus of T^m = u from the valuation profile of u.

    Irreducibility is certified by a place with gcd(m, v_P(u)) = 1; without
    one the call fails unless the caller vouches for it.
    """
    m = profile.m
    if m is None or m < 1:
        raise ProfileInvalid("Kummer profile needs m >= 1")
    if p is not None and m % p == 0:
        raise ProfileInvalid(f"p={p} divides m={m}")
    if m > 1 and not assume_irreducible and not any(math.gcd(m, e.valuation) == 1 for e in profile.entries):
        raise IrreducibilityUnverified("no place with (m, v_P(u)) = 1")
    twice = 2 + 2 * m * (profile.base_genus - 1)
    twice += sum((m - math.gcd(m, e.valuation)) * e.count * e.degree for e in profile.entries)
    if twice % 2:
        raise AssertionError("odd Kummer genus numerator")
    return twice // 2


def genus_artin_schreier(profile: ValuationProfile) -> int:
    qbar = profile.p_degree
    if qbar is None or qbar < 2:
        raise ProfileInvalid("Artin-Schreier profile needs a degree q̄ >= 2")
    p = prime_factors(qbar)[0]
    for e in profile.entries:
        if e.valuation != -1 and (e.valuation <= 0 or e.valuation % p == 0):
            raise ProfileInvalid(f"m_P={e.valuation} must be -1 or positive and prime to {p}")
    if not any(e.valuation > 0 for e in profile.entries):
        raise ProfileInvalid("no totally ramified place (every m_P = -1)")
    total = -2 + sum((e.valuation + 1) * e.count * e.degree for e in profile.entries)
    num = (qbar - 1) * total
    if num % 2:
        raise AssertionError("odd Artin-Schreier genus numerator")
    return qbar * profile.base_genus + num // 2


def _ceil_isqrt(x: int) -> int:
    s = math.isqrt(x)
    return s if s * s == x else s + 1


def hasse_weil_interval(genus: int, field_size: int) -> tuple[int, int]:
    """(N+1 - ceil(2g sqrt N), N+1 + floor(2g sqrt N)) in exact integers; the lower end may be negative."""
    if genus < 0:
        raise ValueError("negative genus")
    x = 4 * genus * genus * field_size
    return field_size + 1 - _ceil_isqrt(x), field_size + 1 + math.isqrt(x)


@dataclass
class GenusReport:
    family: str
    genus: int
    field_size: int
    hw_low: int
    hw_high: int
    excluded: int
    excluded_items: dict[str, int]
    irreducible: bool
    epsilon_h: int | None = None
    profile_genus: int | None = None
    m_h: int | None = None

    @property
    def implies_point(self) -> bool:
        return self.irreducible and self.hw_low > self.excluded

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "genus": self.genus,
            "field_size": self.field_size,
            "hw_low": self.hw_low,
            "hw_high": self.hw_high,
            "excluded": self.excluded,
            "excluded_items": self.excluded_items,
            "irreducible": self.irreducible,
            "implies_point": self.implies_point,
            "epsilon_h": self.epsilon_h,
            "m_h": self.m_h,
        }


def _half(num: int) -> int:
    if num % 2:
        raise AssertionError("genus formula numerator is odd")
    return num // 2


def _binomial_curve(family: str, p: BinomialParams):
    """(closed-form genus, profile, Z items, epsilon_h, m_h) for a Kummer family."""
    from . import criteria as cr

    ctx = p.ctx
    q, k, h = ctx.q, p.k, p.h
    idx = p.f.idx
    d, ell = idx.d, idx.ell
    M = q**k - 1
    prof = ValuationProfile(m=M)
    qk = q**k

    def qg(a: int, b: int) -> int:
        return q ** math.gcd(a, b)

    if family == "MON":
        _require(family, [("f is a monomial", idx.is_monomial), ("h != d", h != d), ("beta != 0", p.beta != 0)])
        D = abs(d - h)
        genus = _half((qk - 2) * (q**D - 3) + qk - qg(k, D))
        prof.add("pole of y", -(q**D - 1), 1)
        prof.add("zeros of F", 1, q**D - 1)
        items = {"poles of x or y": qg(k, D) - 1, "zeros of y": qk - 1, "zeros of x": q**D - 1}
        return genus, prof, items, None, None
    if family == "H_LE_ELL":
        _require(family, _base_shape(p, family))
        m, _ = cr._m_h_le_ell(p)
        D = d - h
        genus = _half((qk - 2) * (q ** (D - m) - 3) + 2 * qk - qg(k, D) - qg(k, m))
        prof.add("zeros of F", q**m, q ** (D - m) - 1)
        prof.add("pole of y", -(q**D - 1), 1)
        prof.add("zero of y", q**m - 1, 1)
        items = {"poles of x or y": qg(k, D) - 1, "zeros of y": qg(k, m) - 1, "zeros of x": q**D - 1}
        return genus, prof, items, None, m
    if family == "H_GT_ELL":
        _require(family, _base_shape(p, family))
        m, _ = cr._m_h_gt_ell(p)
        E = h - ell
        # m_h < h happens in the l3 case; the exponent enters through |m_h - h|
        genus = _half((qk - 2) * (q ** (m - ell) - 3) + 2 * qk - qg(k, E) - qg(k, abs(m - h)))
        prof.add("zeros of F", 1, q ** (m - ell) - 1)
        prof.add("pole of y", q**E - q ** (m - ell), 1)
        prof.add("zero of y", -(q**E - 1), 1)
        items = {
            "poles of y": qg(k, abs(m - h)) - 1,
            "zeros of y": qg(k, E) - 1,
            "zeros of x not poles of y": q ** (m - ell) - 1,
        }
        return genus, prof, items, None, m
    if family == "SIGMA_H_LE_ELL":
        _require(family, _base_shape(p, family))
        m, _ = cr._m_h_sigma_le_ell(p)
        special = ctx.mul(p.beta, p.coeff(h)) == 1
        v0 = q ** (ell - h) * (q ** (idx.ell2 - ell) - 1) if special else -(q ** (ell - h) - 1)
        vinf = 0 if p.beta else q ** (d - h) - 1
        eps = 2 * qk - 2 - math.gcd(M, vinf) - math.gcd(M, v0)
        genus = _half((qk - 2) * (q ** (d - m) + q ** (d - ell) - 4) + eps)
        prof.add("zero of y", v0, 1)
        prof.add("pole of y", vinf, 1)
        if p.beta:
            prof.add("zeros of Y - beta f(Y)", q ** (idx.ell2 - h) if special else 1, q ** (d - m) - 1)
        prof.add("zeros of f", -(q ** (ell - h)), q ** (d - ell) - 1)
        items = {
            "zeros of y": math.gcd(M, v0),
            "poles of y": math.gcd(M, vinf),
            "poles of x": q ** (d - ell) - 1,
            "zeros of x not poles of y": q ** (d - m) - 1,
        }
        return genus, prof, items, eps, m
    if family == "SIGMA_H_GT_ELL":
        _require(family, _base_shape(p, family))
        m, _ = cr._m_h_sigma_gt_ell(p)
        E = h - ell
        special = h == d and ctx.mul(p.beta, p.coeff(d)) == 1
        v0 = 0 if p.beta else q**E - 1
        if p.beta and h < d:
            vinf = 0
        elif p.beta and h == d and not special:
            vinf = 0
        elif special:
            vinf = q ** (idx.ell3 - ell) * (q ** (d - idx.ell3) - 1)
        else:
            vinf = q ** (d - ell) - q**E
        eps = 2 * qk - 2 - math.gcd(M, vinf) - math.gcd(M, v0)
        genus = _half((qk - 2) * (q ** (m - ell) + q ** (d - ell) - 4) + eps)
        prof.add("zero of y", v0, 1)
        prof.add("pole of y", vinf, 1)
        prof.add("zeros of Y^(q^(h-l)) - beta f(Y)", 1, q ** (m - ell) - 1 if p.beta else 0)
        prof.add("zeros of f", -1, q ** (d - ell) - 1)
        items = {
            "zeros of y": math.gcd(M, v0),
            "poles of y": math.gcd(M, vinf),
            "poles of x not poles of y": q ** (d - ell) - 1,
            "zeros of x not zeros or poles of y": q ** (m - ell) - 1,
        }
        return genus, prof, items, eps, m
    raise ValueError(f"unknown genus family {family!r}")


def profile_for(family: str, params) -> ValuationProfile:
    if family == "CLUBS_SIGMA":
        return _club_curve(params)[1]
    return _binomial_curve(family, params)[1]


def _club_curve(params: ClubParams):
    _require_coprime("CLUBS_SIGMA", params)
    q = params.ctx.q
    prof = ValuationProfile(p_degree=q**params.r1)
    prof.add("zeros of v^(q^r2) - v + gamma2", 1, q**params.r2)
    genus = (q**params.r1 - 1) * (q**params.r2 - 1)
    return genus, prof


def genus_family(family: str, params) -> GenusReport:
    """Genus, Hasse-Weil interval and excluded count for one curve family."""
    if family == "CLUBS_SIGMA":
        if not isinstance(params, ClubParams):
            raise PreconditionViolated("CLUBS_SIGMA needs club parameters")
        genus, prof = _club_curve(params)
        pg = genus_artin_schreier(prof)
        size = params.ctx.size
        lo, hi = hasse_weil_interval(genus, size)
        # the poles of u and v are not rational, so nothing is excluded
        return GenusReport(family, genus, size, lo, hi, 0, {}, True, profile_genus=pg)
    if not isinstance(params, BinomialParams):
        raise PreconditionViolated(f"{family} needs binomial parameters")
    genus, prof, items, eps, m = _binomial_curve(family, params)
    try:
        pg = genus_kummer(prof, params.ctx.p)
        irreducible = True
    except IrreducibilityUnverified:
        pg, irreducible = None, False
    size = params.ctx.size
    lo, hi = hasse_weil_interval(genus, size)
    return GenusReport(family, genus, size, lo, hi, sum(items.values()), items, irreducible, eps, pg, m)
