from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from linsets import semifield as sf
from linsets.errors import NotADivisor, PreconditionViolated, SizeCapExceeded
from linsets.field import make_field
from linsets.linset import build
from linsets.qpoly import QPoly
from linsets.rng import XorShift64Star

F8 = make_field(2, 1, 3)


def grid_presemifield(pair) -> bool:
    ctx = pair.ctx
    return all(pair.product(x, y) != 0 for x in ctx.nonzero() for y in ctx.nonzero())


def test_identity_pair_is_degenerate():
    pair = sf.BelPair(QPoly.identity(F8), QPoly.identity(F8))
    rep = sf.is_presemifield(pair)
    assert not rep.is_presemifield and rep.witness_zero_divisor == (1, 1)
    assert rep.rank_oracle_agrees


@pytest.mark.parametrize("q", [2, 3])
def test_case_2_2_reduces_to_frobenius_product(q):
    ctx = make_field(q, 1, 2)
    pair = sf.trace_pair(ctx, 1, 2)
    for x in ctx.elements():
        for y in ctx.elements():
            assert pair.product(x, y) == ctx.mul(ctx.frobenius(x, 1), y)
    assert sf.is_presemifield(pair).is_presemifield


def test_scan_oracles_agree_on_random_pairs():
    rng = XorShift64Star(2)
    for _ in range(200):
        L1 = QPoly(F8, tuple(rng.randbelow(8) for _ in range(3)))
        L2 = QPoly(F8, tuple(rng.randbelow(8) for _ in range(3)))
        pair = sf.BelPair(L1, L2)
        rep = sf.is_presemifield(pair)
        assert rep.rank_oracle_agrees
        assert rep.is_presemifield == grid_presemifield(pair)
        assert (sf.zero_divisor(pair) is None) == (sf.zero_divisor_grid(pair) is None)
        if rep.witness_zero_divisor:
            x, y = rep.witness_zero_divisor
            assert x and y and pair.product(x, y) == 0
            assert rep.witness_zero_divisor == sf.zero_divisor_grid(pair)


def test_zero_divisor_matches_linear_set_intersection():
    # a zero divisor exists iff {<(L1(x), x)>} and {<(y, L2(y))>} share a point
    ctx = make_field(3, 1, 3)
    rng = XorShift64Star(8)
    for _ in range(40):
        L1 = QPoly(ctx, tuple(rng.randbelow(27) for _ in range(3)))
        L2 = QPoly(ctx, tuple(rng.randbelow(27) for _ in range(3)))
        if L1.is_zero() or L2.is_zero():
            continue
        a = build(L1, 0, True)
        b = build(L2)
        assert (sf.zero_divisor(sf.BelPair(L1, L2)) is not None) == bool(a.mask & b.mask)


def test_caps():
    ctx = make_field(2, 1, 10)
    pair = sf.trace_pair(ctx, 1, 1)
    with pytest.raises(SizeCapExceeded) as err:
        sf.is_presemifield(pair, cap=1000)
    assert err.value.cost == 2**20
    with pytest.raises(SizeCapExceeded):
        sf.resolve_open_case(3, (9, 3), cap=2**26)


def test_low_degree_trace_pair_can_be_presemifield():
    # Tr(x) y - x y = y (Tr(x) - x) never vanishes on nonzero x, y when Tr(1) = 0
    ctx = make_field(2, 1, 4)
    pair = sf.BelPair(QPoly.trace(ctx, 1), QPoly.identity(ctx))
    assert 2 * pair.L2.idx.d < ctx.n - 2
    assert sf.is_presemifield(pair).is_presemifield
    assert not sf.check_thm41(pair)
    assert not sf.has_identity(pair)


def test_low_degree_sweep_q2_n4():
    ctx = make_field(2, 1, 4)
    bad = []
    for a0 in ctx.nonzero():
        pair = sf.BelPair(QPoly.trace(ctx, 1), QPoly.monomial(ctx, 0, a0))
        if not sf.check_thm41(pair):
            bad.append(a0)
    # exactly the a0 with Tr(a0) = 0 give presemifields
    assert bad == [a for a in ctx.nonzero() if ctx.rel_trace(a, 1) == 0]
    assert sf.check_thm41(sf.BelPair(QPoly.trace(ctx, 1), QPoly.monomial(ctx, 3)))
    with pytest.raises(PreconditionViolated):
        sf.check_thm41(sf.BelPair(QPoly.identity(ctx), QPoly.identity(ctx)))


def test_small_trace_divisors_force_zero_divisor():
    ctx = make_field(2, 1, 6)
    for alpha in ctx.nonzero():
        assert sf.check_cor42(ctx, 1, 1, alpha)
    assert sf.check_cor42(ctx, 3, 2, 1)
    with pytest.raises(NotADivisor):
        sf.check_cor42(ctx, 4, 1, 1)


def test_binomial_monomial_condition_is_norm_condition():
    ctx = make_field(2, 1, 4)
    f = QPoly.monomial(ctx, 0, 3)
    conds = sf.cor43_conditions(sf.BelPair(f, QPoly.binomial_g(ctx, 5, 0, 1)))
    assert len(conds) == 1 and conds[0][0].startswith("N(")


def test_binomial_conditions_hold_on_found_presemifields():
    ctx = make_field(2, 1, 4)
    rng = XorShift64Star(4)
    found = 0
    for _ in range(3000):
        f = QPoly(ctx, tuple(rng.randbelow(16) for _ in range(4)))
        if f.is_zero():
            continue
        g = QPoly.binomial_g(ctx, 1 + rng.randbelow(15), rng.randbelow(16), rng.randint(1, 3))
        rep = sf.check_cor43(sf.BelPair(f, g))
        assert rep.extra["cor43_consistent"]
        if rep.is_presemifield:
            found += 1
            assert all(ok for _, ok in rep.cor43_report)
    assert found > 0


def test_binomial_condition_violation_forces_zero_divisor():
    for spec in [(2, 1, 6), (3, 1, 4), (2, 2, 3)]:
        ctx = make_field(*spec)
        rng = XorShift64Star(spec[2])
        for _ in range(300):
            supp = rng.sample(range(ctx.n), rng.randint(1, 3))
            f = QPoly.from_terms(ctx, {i: 1 + rng.randbelow(ctx.size - 1) for i in supp})
            g = QPoly.binomial_g(ctx, 1 + rng.randbelow(ctx.size - 1), rng.randbelow(ctx.size), rng.randint(1, ctx.n - 1))
            pair = sf.BelPair(f, g)
            if not all(ok for _, ok in sf.cor43_conditions(pair)):
                assert not sf.is_presemifield(pair).is_presemifield


def test_scaled_pair_is_isotopic():
    ctx = make_field(3, 1, 3)
    pair = sf.BelPair(QPoly.from_terms(ctx, {1: 2, 0: 1}), QPoly.from_terms(ctx, {2: 1}))
    for c in (1, 2, 5, 17):
        assert sf.is_presemifield(sf.scaled_pair(pair, c)).is_presemifield == sf.is_presemifield(pair).is_presemifield


def test_open_cases_q2(tmp_path):
    archive = tmp_path / "open.jsonl"
    rows = sf.resolve_open_cases(2, archive=str(archive))
    cases = {(r["n"], r["r"]): r for r in rows}
    for case in sf.OPEN_CASES:
        assert "is_presemifield" in cases[case]
        assert cases[case]["rank_oracle_agrees"]
    assert cases[(2, 2)]["is_presemifield"] is True
    lines = archive.read_text().splitlines()
    sf.resolve_open_cases(2, archive=str(archive))
    assert archive.read_text().splitlines() == lines
    rec = json.loads(lines[0])
    assert set(rec) >= {"p", "m", "n", "r", "modulus", "is_presemifield", "witness"}


def test_archive_rejects_disagreement(tmp_path):
    path = str(tmp_path / "a.jsonl")
    rec = {"p": 2, "m": 1, "n": 2, "r": 2, "modulus": [1, 1, 1], "is_presemifield": True, "witness": None}
    sf.append_result(path, rec)
    with pytest.raises(AssertionError):
        sf.append_result(path, {**rec, "is_presemifield": False})


def test_distributivity():
    rng = XorShift64Star(1)
    pair = sf.trace_pair(make_field(2, 1, 5), 1, 1, 3)
    assert sf.distributivity_spot_check(pair, rng)


coeffs = st.lists(st.integers(0, 7), min_size=3, max_size=3)


@settings(max_examples=80, deadline=None)
@given(coeffs, coeffs)
def test_dual_oracles_property(a, b):
    pair = sf.BelPair(QPoly(F8, tuple(a)), QPoly(F8, tuple(b)))
    rep = sf.is_presemifield(pair)
    assert rep.rank_oracle_agrees
    assert rep.is_presemifield == sf.rank_oracle(pair) == grid_presemifield(pair)
