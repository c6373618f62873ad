import pytest
import sympy

from pnveri.bifactor import (
    factor_over,
    has_abs_irred_factor_over_base,
    irreducible_over,
)
from pnveri.config import CapExceeded, default_config
from pnveri.gf import build_field
from pnveri.poly import BiPoly, build_ft_gt


def _reassemble(facs, unit, ctx):
    prod = BiPoly(ctx, {(0, 0): unit})
    for h, m in facs:
        for _ in range(m):
            prod = prod * h
    return prod


def test_g4_baseline():
    _, g4 = build_ft_gt(3, 4)
    rep = irreducible_over(g4, 1)
    assert rep.status == "Irreducible"
    rep = irreducible_over(g4, 2)
    assert rep.status == "Factors"
    assert sorted(h.degree() for h, _ in rep.factors) == [1, 1]


@pytest.mark.parametrize("p,t", [(3, 4), (3, 8), (3, 14), (5, 6), (5, 8), (7, 6), (7, 10)])
def test_factor_over_reassembles(p, t):
    _, g = build_ft_gt(p, t)
    for m in (1, 2):
        ctx = build_field(p, m)
        facs, unit, _ = factor_over(g, ctx)
        assert _reassemble(facs, unit, ctx) == g.recode(ctx)
        for h, _mult in facs:
            if h.degree() >= 1:
                assert irreducible_over(h, m).status == "Irreducible"


def test_forced_point_stability():
    # the lift is anchored at a specialization; answers must not depend on it
    _, g = build_ft_gt(5, 8)
    base = None
    for pt in range(3):
        facs, unit, _ = factor_over(g, build_field(5, 1), forced_point=pt)
        shape = sorted((h.degree(), m) for h, m in facs)
        if base is None:
            base = shape
        assert shape == base


def test_specialization_degrees_vs_sympy():
    # bivariate factors must specialize to compatible univariate shapes
    x = sympy.symbols("x")
    for p, t in [(3, 4), (3, 8), (5, 6), (7, 6)]:
        _, g = build_ft_gt(p, t)
        ctx = g.ctx
        facs, unit, _ = factor_over(g, ctx)
        for c in range(min(p, 3)):
            yv = ctx.scalar(c)
            expr = sum(
                int(g.coeff(a, b).code()) * x**a * c**b for (a, b) in g.terms
            )
            poly = sympy.Poly(expr, x, modulus=p)
            if poly.degree() != g.deg_x():
                continue  # top x-coefficient vanished at this slice
            _, sy = sympy.factor_list(poly)
            sy_deg = sum(fac.degree() * m for fac, m in sy)
            slice_deg = 0
            for h, m in facs:
                he = sum(
                    int(h.coeff(a, b).code()) * x**a * c**b for (a, b) in h.terms
                )
                slice_deg += m * sympy.Poly(he, x, modulus=p).degree()
            assert slice_deg == sy_deg, (p, t, c)


def test_repeated_factor_refusal():
    # perfect squares have no squarefree specialization; the factoring
    # engine must refuse rather than guess
    ctx = build_field(3, 1)
    sq = BiPoly(ctx, {(2, 0): 2, (1, 1): 2, (0, 2): 2})  # 2(x-y)^2
    with pytest.raises(CapExceeded, match="squarefree"):
        factor_over(sq, ctx)


def test_degree_cap_skips():
    _, g = build_ft_gt(5, 126)
    cfg = default_config().replace(max_bifactor_degree=100)
    rep = irreducible_over(g, 2, cfg)
    assert rep.status == "Skipped"
    assert "cap" in rep.reason


def test_has_abs_irred_factor_over_base():
    _, g4 = build_ft_gt(3, 4)
    ok, witness = has_abs_irred_factor_over_base(g4)
    assert ok is False and witness is None
    _, g8 = build_ft_gt(3, 8)
    ok, witness = has_abs_irred_factor_over_base(g8)
    assert ok is True
    assert witness.degree() >= 1
    f, _ = build_ft_gt(3, 5)
    ok, witness = has_abs_irred_factor_over_base(f)
    # odd t: x + y + 1 is the guaranteed degree-1 witness
    assert ok is True and witness.degree() == 1
