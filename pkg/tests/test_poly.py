import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pnveri.gf import build_field
from pnveri.poly import (
    BiPoly,
    UniPoly,
    build_ft_any,
    build_ft_gt,
    divides_x_plus_y_plus_1,
    multiplicity_and_tangent_cone,
    taylor_shift,
    uni_factor,
)

PRIMES = [3, 5, 7]


def _uni(ctx, codes):
    return UniPoly(ctx, [ctx.from_code(c) for c in codes])


@given(
    p=st.sampled_from(PRIMES),
    a=st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=9),
    b=st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=9),
)
@settings(max_examples=150, deadline=None)
def test_unipoly_divmod_identity(p, a, b):
    ctx = build_field(p, 1)
    f = _uni(ctx, [c % p for c in a])
    g = _uni(ctx, [c % p for c in b])
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree() < g.degree()


@given(
    a=st.lists(st.integers(min_value=0, max_value=24), min_size=1, max_size=7),
    b=st.lists(st.integers(min_value=0, max_value=24), min_size=1, max_size=7),
)
@settings(max_examples=80, deadline=None)
def test_unipoly_gcd_divides_both(a, b):
    ctx = build_field(5, 2)
    f, g = _uni(ctx, a), _uni(ctx, b)
    d = f.gcd(g)
    if d.is_zero():
        assert f.is_zero() and g.is_zero()
        return
    assert (f % d).is_zero()
    assert (g % d).is_zero()
    assert d.is_monic()


def test_uni_factor_vs_sympy():
    x = sympy.symbols("x")
    for p in PRIMES:
        ctx = build_field(p, 1)
        for codes in [
            [1, 0, 1],
            [2, 1, 1, 1],
            [0, 0, 0, 1],
            [1, 1, 0, 0, 2, 1],
            [p - 1, 0, 1, 0, 1],
            [1, 2, 3 % p, 1, 1, 1, 1],
        ]:
            f = _uni(ctx, codes)
            got = uni_factor(f)
            expr = sum(int(c) * x**i for i, c in enumerate(codes))
            _, sy = sympy.factor_list(sympy.Poly(expr, x, modulus=p))
            sy_norm = sorted(
                (fac.degree(), m, tuple(int(c) % p for c in reversed(fac.all_coeffs())))
                for fac, m in sy
            )
            got_norm = sorted(
                (h.degree(), m, tuple(int(h.coeff(i).code()) for i in range(h.degree() + 1)))
                for h, m in got
            )
            assert got_norm == sy_norm, (p, codes)
            prod = _uni(ctx, [f.coeffs()[-1].code()])
            for h, m in got:
                for _ in range(m):
                    prod = prod * h
            assert prod == f.monic().scale(f.coeffs()[-1]) or prod == f


def test_uni_factor_deterministic():
    ctx = build_field(3, 2)
    f = _uni(ctx, [2, 5, 7, 1, 0, 3, 1])
    first = [(h.text(), m) for h, m in uni_factor(f)]
    for _ in range(3):
        assert [(h.text(), m) for h, m in uni_factor(f)] == first


def test_construction_identity_spot():
    for p, t in [(3, 4), (3, 14), (5, 8), (5, 76), (7, 22), (7, 100)]:
        f, g = build_ft_gt(p, t)
        ctx = f.ctx
        xy = BiPoly(ctx, {(1, 0): 1, (0, 1): p - 1})
        assert xy * g == f
        assert g.degree() == t - 2
        assert f.degree() == t - 1


def test_build_ft_rejects():
    with pytest.raises(ValueError):
        build_ft_gt(3, 9)
    with pytest.raises(ValueError):
        build_ft_gt(3, 2)


def test_ft_antisymmetry():
    for p, t in [(3, 8), (5, 12), (7, 10)]:
        f = build_ft_any(p, t)
        assert f.swap_xy() == f.scale(f.ctx.scalar(-1))


def test_divides_x_plus_y_plus_1_parity():
    for p in PRIMES:
        for t in [3, 5, 9, 15, 25]:
            if t % p == 0:
                continue
            f, _ = build_ft_gt(p, t)
            assert divides_x_plus_y_plus_1(f)
        for t in [4, 8, 10, 20]:
            if t % p == 0:
                continue
            f, _ = build_ft_gt(p, t)
            assert not divides_x_plus_y_plus_1(f)


def test_taylor_shift_multiplicity():
    # g_4 over F_3 is (x-y)^2 + 1: multiplicity 0 at points off the curve,
    # 1 at smooth curve points over F_9
    _, g4 = build_ft_gt(3, 4)
    ctx9 = build_field(3, 2)
    g = g4.recode(ctx9)
    i = ctx9.from_code(3)
    assert i * i == ctx9.scalar(-1)
    alpha = i  # (i, 0): (i-0)^2 + 1 = 0, a curve point
    m, cone, distinct = multiplicity_and_tangent_cone(g, alpha, ctx9.zero)
    assert m == 1 and distinct
    parts = taylor_shift(g, alpha, ctx9.zero)
    assert parts[0].is_zero()
    assert parts[1] == cone
    # point off the curve
    m, _, _ = multiplicity_and_tangent_cone(g, ctx9.one, ctx9.zero)
    assert m == 0


def test_infinity_chart():
    _, g = build_ft_gt(3, 8)
    chart = g.infinity_chart(g.degree())
    # top form coefficients survive with z-degree 0
    for (a, b), c in g.terms.items():
        if a + b == g.degree():
            assert chart.coeff(a, 0) == c
    with pytest.raises(ValueError):
        g.infinity_chart(g.degree() - 1)
