import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pnveri.config import CapExceeded, default_config
from pnveri.gf import build_field
from pnveri.oracle import (
    brute_pairs,
    distinct_point_search,
    exhaustive_bifactor,
    is_planar,
    is_pp,
)
from pnveri.poly import UniPoly, build_ft_gt
from pnveri.sing import omega_census


def test_is_pp_basics():
    ctx = build_field(5, 1)
    assert is_pp(UniPoly(ctx, [0, 1]))[0] is True  # x
    assert is_pp(UniPoly(ctx, [0, 0, 1]))[0] is False  # x^2
    assert is_pp(UniPoly(ctx, [0, 0, 0, 1]))[0] is True  # x^3, gcd(3,4)=1
    assert is_pp(UniPoly(ctx, [2]))[0] is False  # constant
    ctx27 = build_field(3, 3)
    # Frobenius x^3 permutes, x^2 does not
    assert is_pp(UniPoly(ctx27, [ctx27.zero, ctx27.zero, ctx27.zero, ctx27.one]))[0] is True
    assert is_pp(UniPoly(ctx27, [ctx27.zero, ctx27.zero, ctx27.one]))[0] is False


@given(
    p=st.sampled_from([3, 5, 7]),
    e=st.integers(min_value=1, max_value=30),
)
@settings(max_examples=60, deadline=None)
def test_is_pp_monomial_rule(p, e):
    # x^e permutes F_p iff gcd(e, p-1) = 1
    import math

    ctx = build_field(p, 1)
    coeffs = [ctx.zero] * e + [ctx.one]
    got = is_pp(UniPoly(ctx, coeffs))[0]
    assert got == (math.gcd(e, p - 1) == 1)


def test_is_pp_field_cap():
    cfg = default_config().replace(max_oracle_field=100)
    ctx = build_field(3, 5)
    with pytest.raises(CapExceeded):
        is_pp(UniPoly(ctx, [ctx.zero, ctx.one]), cfg)


def test_is_planar_reference_rows():
    # x^2 is planar everywhere; the other even rows follow the order rules
    assert [is_planar(3, 2, n)[0] for n in range(1, 6)] == [True] * 5
    assert [is_planar(3, 4, n)[0] for n in range(1, 6)] == [True, False, True, False, True]
    assert [is_planar(3, 10, n)[0] for n in range(1, 6)] == [True, True, True, False, True]
    assert [is_planar(3, 14, n)[0] for n in range(1, 6)] == [True, True, False, True, True]
    assert [is_planar(5, 6, n)[0] for n in range(1, 5)] == [True, False, True, False]
    assert [is_planar(7, 8, n)[0] for n in range(1, 4)] == [True, False, True]


def test_is_planar_odd_never():
    for t in (3, 5, 7, 11):
        for n in (1, 2):
            assert is_planar(3, t, n)[0] is False or t % 3 == 0


def test_point_search_duality_spots():
    for p, t, n in [(3, 4, 2), (3, 14, 3), (3, 6, 2), (5, 8, 1), (5, 6, 2), (3, 2, 4)]:
        planar, _ = is_planar(p, t, n)
        found, rep = distinct_point_search(p, t, n)
        assert found == (not planar)
        if found:
            x, y = rep.extra["witness"]
            assert x != y


def test_point_search_witness_is_root():
    found, rep = distinct_point_search(3, 4, 2)
    assert found
    ctx = build_field(3, 2)
    _, g = build_ft_gt(3, 4)
    g = g.recode(ctx)
    x, y = (ctx.from_code(c) for c in rep.extra["witness"])
    assert g.eval(x, y) == ctx.zero


def test_brute_pairs_matches_census():
    for p, t in [(3, 8), (3, 14), (5, 8), (5, 12), (7, 12), (3, 20)]:
        count, rep = brute_pairs(p, t)
        assert count == omega_census(p, t).N_t, (p, t)
        assert "ordered root pairs" in rep.statement


def test_exhaustive_bifactor_g4():
    _, g4 = build_ft_gt(3, 4)
    divs, rep = exhaustive_bifactor(g4, 1)
    assert divs == []
    divs, rep = exhaustive_bifactor(g4.recode(build_field(3, 2)), 1)
    assert len(divs) == 2
    prod = divs[0] * divs[1]
    assert prod.monic_in() == g4.recode(build_field(3, 2)).monic_in()


def test_exhaustive_bifactor_finds_composites():
    # over F_5 the degree-4 curve splits into two conjugate quadratics
    _, g6 = build_ft_gt(5, 6)
    divs, _ = exhaustive_bifactor(g6, 2)
    assert sorted(h.degree() for h in divs) == [2, 2]
    prod = divs[0] * divs[1]
    assert prod.monic_in() == g6.monic_in()


def test_exhaustive_bifactor_space_cap():
    _, g6 = build_ft_gt(5, 6)
    with pytest.raises(CapExceeded):
        exhaustive_bifactor(g6, 3)  # 5^9-ish candidate space over the default cap
    cfg = default_config().replace(max_oracle_space=4_000_000)
    divs, rep = exhaustive_bifactor(g6, 3, cfg)
    assert sorted(h.degree() for h in divs) == [2, 2]
    assert rep.extra["tested"] > 2 * 10**6


def test_oracle_reports_are_serializable():
    import json

    _, rep = is_planar(3, 4, 2)
    json.dumps(rep.to_json())
    _, rep = brute_pairs(3, 8)
    json.dumps(rep.to_json())
