from __future__ import annotations

import math

import pytest
from hypothesis import given, settings, strategies as st

from linsets import criteria as cr
from linsets.acceptance import meets_shape, sample_sufficient
from linsets.curves import (
    GENUS_FAMILIES,
    ValuationProfile,
    genus_artin_schreier,
    genus_family,
    genus_kummer,
    hasse_weil_interval,
    profile_for,
)
from linsets.errors import IrreducibilityUnverified, PreconditionViolated, ProfileInvalid
from linsets.field import field_for, make_field
from linsets.qpoly import QPoly
from linsets.rng import XorShift64Star


def test_hasse_weil_examples():
    assert hasse_weil_interval(0, 81) == (82, 82)
    assert hasse_weil_interval(1, 64) == (49, 81)
    assert hasse_weil_interval(2, 8) == (-3, 20)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 40), st.integers(2, 5000))
def test_hasse_weil_is_tight_integer_interval(g, N):
    lo, hi = hasse_weil_interval(g, N)
    root = math.sqrt(N)
    # the lower end rounds the radius up, so it sits at or just below the real bound
    assert lo - 1e-9 <= N + 1 - 2 * g * root < lo + 1
    assert hi - 1e-9 <= N + 1 + 2 * g * root < hi + 1


def test_kummer_unramified():
    for m, g in [(3, 0), (3, 2), (7, 1)]:
        prof = ValuationProfile(m=m, base_genus=g)
        prof.add("P", m, 2)
        prof.add("Q", -m, 2)
        assert genus_kummer(prof, assume_irreducible=True) == 1 + m * (g - 1)
        with pytest.raises(IrreducibilityUnverified):
            genus_kummer(prof)


def test_kummer_monomial_profile_reproduces_closed_form():
    for q in (2, 3, 4, 5):
        for k in (1, 2):
            for D in (1, 2, 3):
                M = q**k - 1
                prof = ValuationProfile(m=M)
                prof.add("pole", -(q**D - 1), 1)
                prof.add("zeros", 1, q**D - 1)
                closed = ((q**k - 2) * (q**D - 3) + q**k - q ** math.gcd(k, D)) // 2
                assert genus_kummer(prof) == closed
    prof = ValuationProfile(m=1)
    prof.add("pole", -1, 1)
    prof.add("zero", 1, 1)
    assert genus_kummer(prof) == 0


def test_kummer_rejects():
    with pytest.raises(ProfileInvalid):
        genus_kummer(ValuationProfile(m=4), p=2)
    with pytest.raises(ProfileInvalid):
        genus_kummer(ValuationProfile(m=0))


def test_artin_schreier():
    for q in (2, 3, 4):
        for r1, r2 in [(1, 1), (1, 2), (2, 1), (2, 3)]:
            prof = ValuationProfile(p_degree=q**r1)
            prof.add("poles", 1, q**r2)
            assert genus_artin_schreier(prof) == (q**r1 - 1) * (q**r2 - 1)
    prof = ValuationProfile(p_degree=2)
    prof.add("P", -1, 3)
    with pytest.raises(ProfileInvalid):
        genus_artin_schreier(prof)
    bad = ValuationProfile(p_degree=3)
    bad.add("P", 3, 1)
    with pytest.raises(ProfileInvalid):
        genus_artin_schreier(bad)


def test_clubs_sigma_example():
    ctx = make_field(2, 1, 6)
    rep = genus_family("CLUBS_SIGMA", cr.ClubParams(ctx, 1, 1, 1))
    assert rep.genus == 1 and rep.hw_low == 49 and rep.excluded == 0
    assert rep.implies_point


def test_clubs_sigma_genus_formula():
    for q in (2, 3, 4):
        for r1, r2 in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 2)]:
            n = max(2, r1 * r2)
            params = cr.ClubParams(field_for(q, n, cap=2**24), r1, r2, 1)
            rep = genus_family("CLUBS_SIGMA", params)
            assert rep.genus == (q**r1 - 1) * (q**r2 - 1) == rep.profile_genus


def test_mon_rejects_h_eq_d():
    ctx = make_field(2, 1, 6)
    p = cr.BinomialParams(1, 1, 1, QPoly.monomial(ctx, 2), 2)
    with pytest.raises(PreconditionViolated):
        genus_family("MON", p)


def test_mon_k1_span1_genus_zero():
    for q in (2, 3, 4, 5):
        ctx = field_for(q, 4)
        p = cr.BinomialParams(1, 1, 1, QPoly.monomial(ctx, 1), 0)
        rep = genus_family("MON", p)
        assert rep.genus == (q - 2) * (q - 3) // 2 == rep.profile_genus
        assert (rep.genus == 0) == (q <= 3)


@pytest.mark.parametrize("family", GENUS_FAMILIES[:-1])
def test_profile_matches_formula_and_implies_point(family):
    shape = "MON_GENERAL" if family == "MON" else family
    rng = XorShift64Star(sum(map(ord, family)))
    checked = 0
    for spec in [(2, 1, 6), (2, 1, 8), (3, 1, 4), (3, 1, 5), (2, 2, 4), (5, 1, 3), (7, 1, 3)]:
        ctx = make_field(*spec)
        for _ in range(60):
            p = sample_sufficient(rng, ctx, shape)
            if p is None:
                continue
            rep = genus_family(family, p)
            assert rep.profile_genus in (None, rep.genus)
            assert profile_for(family, p).divisor_degree() == 0
            if rep.implies_point:
                assert meets_shape(p.g, p.f, p.h, family.startswith("SIGMA"))
            checked += 1
    assert checked > 100


def test_report_json():
    ctx = make_field(3, 1, 4)
    p = cr.BinomialParams(1, 2, 1, QPoly.monomial(ctx, 2), 0)
    out = genus_family("MON", p).to_json()
    assert set(out["excluded_items"]) == {"poles of x or y", "zeros of y", "zeros of x"}
    assert out["excluded"] == sum(out["excluded_items"].values())
