"""Singular-point census of the difference curve.

Case A is a pure bucket count over roots of unity: pairs (r, s) of
(t-1)-th roots with (r-1)^(t-1) = (s-1)^(t-1), r, s != 1, r != s, mapped
to affine singular points (1/(r-1), 1/(s-1)); the curve itself is never
touched.  Case B enumerates candidate coordinates from roots of unity of
order ell and types each point by whether the degree-p^i Taylor
component vanishes.  Both censuses can be spot-verified against Taylor
expansions, and a tiny-scale audit compares shared-point tallies of the
absolute factors with their degree products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith import Decomposition, decompose, prime_divisors
from .config import CapExceeded, RunConfig, default_config
from .gf import Fel, FieldCtx, build_field, embed, roots_of_unity
from .poly import BiPoly, build_ft_gt, multiplicity_and_tangent_cone

__all__ = [
    "SingularPoint",
    "SingSummary",
    "omega_census",
    "caseB_enum",
    "verify_multiplicities",
    "bezout_audit",
    "BezoutReport",
]


@dataclass(frozen=True)
class SingularPoint:
    """One singular point, affine (alpha, beta) or at infinity (alpha : 1 : 0)."""

    kind: str  # "affine" | "infinity"
    alpha: Fel
    beta: Fel | None
    ptype: str  # "I" | "II" | "III.A" | "III.B" | "A-nodal"
    m_f: int
    m_g: int

    def on_diagonal(self) -> bool:
        if self.kind == "affine":
            return self.alpha == self.beta
        return self.alpha == self.alpha.ctx.one

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "alpha": self.alpha.to_json(),
            "beta": None if self.beta is None else self.beta.to_json(),
            "type": self.ptype,
            "m_f": self.m_f,
            "m_g": self.m_g,
        }


@dataclass
class SingSummary:
    """Census result; N_t counts affine singular points."""

    p: int
    t: int
    case: str
    N_t: int
    class_sizes: dict[bytes, int] | None
    N1: int | None
    N2: int | None
    points: list[SingularPoint] = field(default_factory=list)
    points_complete: bool = False
    bound_ok: bool | None = None
    condition_b: bool | None = None
    field_name: str = ""

    def to_json(self) -> dict:
        hist: dict[str, int] | None = None
        if self.class_sizes is not None:
            hist = {}
            for size in self.class_sizes.values():
                hist[str(size)] = hist.get(str(size), 0) + 1
        return {
            "p": self.p,
            "t": self.t,
            "case": self.case,
            "N_t": self.N_t,
            "class_size_histogram": hist,
            "N1": self.N1,
            "N2": self.N2,
            "bound_ok": self.bound_ok,
            "condition_b": self.condition_b,
            "field": self.field_name,
            "points_complete": self.points_complete,
            "points": [pt.to_json() for pt in self.points] if self.points_complete else None,
        }


def omega_census(p: int, t: int, cfg: RunConfig | None = None) -> SingSummary:
    """Affine singular points in case A, counted by bucketing (r-1)^(t-1).

    Requires t even and t not congruent to 0 or 1 mod p.  Raises
    CapExceeded when the splitting field of the (t-1)-th roots of unity
    is beyond the extension cap.
    """
    cfg = cfg or default_config()
    if t % 2:
        raise ValueError("census applies to even t")
    dec = decompose(p, t)
    if dec.case != "A":
        raise ValueError(f"(p={p}, t={t}) is case {dec.case}, not A")
    ctx, _g, mu = roots_of_unity(p, t - 1, cfg)
    one = ctx.one
    buckets: dict[bytes, list[Fel]] = {}
    for r in mu[1:]:
        key = ((r - one) ** (t - 1)).key()
        buckets.setdefault(key, []).append(r)
    sizes = {k: len(v) for k, v in buckets.items()}
    assert sum(sizes.values()) == t - 2
    N = sum(n * n for n in sizes.values()) - (t - 2)
    bound = (t - 2) * (t - 4) // 2
    assert N <= bound, f"census bound violated at (p={p}, t={t}): {N} > {bound}"
    points: list[SingularPoint] = []
    complete = N <= cfg.max_points
    if complete:
        for members in buckets.values():
            coords = [one / (r - one) for r in members]
            for i, a in enumerate(coords):
                for j, b in enumerate(coords):
                    if i != j:
                        points.append(SingularPoint("affine", a, b, "A-nodal", 2, 2))
    return SingSummary(
        p=p,
        t=t,
        case="A",
        N_t=N,
        class_sizes=sizes,
        N1=None,
        N2=None,
        points=points,
        points_complete=complete,
        bound_ok=N <= bound,
        condition_b=4 * N < (t - 2) * (t - 2),
        field_name=ctx.name,
    )


def caseB_enum(
    p: int, t: int, dec: Decomposition | None = None, cfg: RunConfig | None = None
) -> SingSummary:
    """Explicit singular points in case B (t = p^i * ell + 1).

    Affine candidates are alpha = 1/(rho - 1) for rho in mu(ell)\\{1};
    a pair (alpha, beta) is singular iff alpha^ell = beta^ell.  A point
    is type I exactly when both roots satisfy rho^d = 1 for
    d = gcd(ell, p^i - 1), which is when the degree-p^i Taylor component
    vanishes; type-I multiplicity is p^i + 1, type-II is p^i.  At
    infinity the directions are (alpha : 1 : 0) for alpha in mu(ell),
    type III.A (multiplicity p^i) when alpha lies in F_{p^i}, else III.B
    (multiplicity p^i - 1).
    """
    cfg = cfg or default_config()
    dec = dec or decompose(p, t)
    if dec.case != "B":
        raise ValueError(f"(p={p}, t={t}) is case {dec.case}, not B")
    ell, i = dec.ell, dec.i
    pi = p**i
    d = math.gcd(ell, pi - 1)
    ctx, _g, mu = roots_of_unity(p, ell, cfg)
    one = ctx.one
    points: list[SingularPoint] = []
    N1 = 0
    # affine: bucket candidates by alpha^ell
    cands = []
    for rho in mu[1:]:
        alpha = one / (rho - one)
        cands.append((rho, alpha, (alpha**ell).key(), rho**d == one))
    for rho_a, alpha, key_a, t1_a in cands:
        for rho_b, beta, key_b, t1_b in cands:
            if key_a != key_b:
                continue
            type1 = t1_a and t1_b
            mf = pi + 1 if type1 else pi
            mg = mf - 1 if alpha == beta else mf
            points.append(
                SingularPoint("affine", alpha, beta, "I" if type1 else "II", mf, mg)
            )
            if type1:
                N1 += 1
    N = len(points)
    assert N <= (ell - 1) * (ell - 1), f"affine case-B count {N} > (ell-1)^2"
    if d < ell:
        assert 9 * N1 <= (ell - 3) * (ell - 3), f"N1={N1} violates (ell/3-1)^2 at ell={ell}"
    else:
        assert N1 <= (ell - 1) * (ell - 1)
    # infinity: every direction in mu(ell) is singular (multiplicity >= 2)
    N2 = 0
    for alpha in mu:
        third_a = alpha ** (pi - 1) == one
        mf = pi if third_a else pi - 1
        mg = mf - 1 if alpha == one else mf
        points.append(
            SingularPoint("infinity", alpha, None, "III.A" if third_a else "III.B", mf, mg)
        )
        N2 += 1
    assert N2 <= ell
    complete = len(points) <= cfg.max_points
    if not complete:
        points = points[: cfg.max_points]
    return SingSummary(
        p=p,
        t=t,
        case="B",
        N_t=N,
        class_sizes=None,
        N1=N1,
        N2=N2,
        points=points,
        points_complete=complete,
        bound_ok=None,
        condition_b=None,
        field_name=ctx.name,
    )


def verify_multiplicities(
    summary: SingSummary,
    f_t: BiPoly,
    sample: int = 64,
    g_t: BiPoly | None = None,
    cfg: RunConfig | None = None,
) -> dict:
    """Recompute multiplicities at up to `sample` census points via Taylor
    expansion of f_t and g_t, asserting the typed predictions.

    Mismatch raises AssertionError: the census and the curve must agree.
    """
    cfg = cfg or default_config()
    if g_t is None:
        _f, g_t = build_ft_gt(summary.p, summary.t, cfg)
    t = summary.t
    degf, degg = t - 1, t - 2
    assert f_t.degree() == degf and g_t.degree() == degg
    checked: dict[str, int] = {}
    pts = summary.points[:sample]
    if not pts:
        return {"checked": 0, "by_type": checked, "ok": True}
    ctx = pts[0].alpha.ctx
    f = f_t.recode(ctx)
    g = g_t.recode(ctx)
    f_inf = f.infinity_chart(degf)
    g_inf = g.infinity_chart(degg)
    zero = ctx.zero
    for pt in pts:
        if pt.kind == "affine":
            mf, cone_f, dl_f = multiplicity_and_tangent_cone(f, pt.alpha, pt.beta)
            mg, cone_g, dl_g = multiplicity_and_tangent_cone(g, pt.alpha, pt.beta)
        else:
            mf, cone_f, dl_f = multiplicity_and_tangent_cone(f_inf, pt.alpha, zero)
            mg, cone_g, dl_g = multiplicity_and_tangent_cone(g_inf, pt.alpha, zero)
        assert mf == pt.m_f, f"(p={summary.p}, t={t}) {pt.ptype} point: m_f {mf} != {pt.m_f}"
        assert mg == pt.m_g, f"(p={summary.p}, t={t}) {pt.ptype} point: m_g {mg} != {pt.m_g}"
        if pt.ptype == "A-nodal":
            assert dl_f and dl_g, "case-A singularity is not nodal"
        if pt.ptype == "I":
            assert dl_f, "type-I tangent cone has repeated lines"
        checked[pt.ptype] = checked.get(pt.ptype, 0) + 1
    return {"checked": len(pts), "by_type": checked, "ok": True}


# ---------------------------------------------------------------------------
# Tiny-scale Bezout audit


@dataclass
class BezoutReport:
    p: int
    t: int
    n_components: int
    split_field: str
    pairs: list[dict]
    ok: bool

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "t": self.t,
            "components": self.n_components,
            "split_field": self.split_field,
            "pairs": self.pairs,
            "ok": self.ok,
        }


def _absolute_factors(g: BiPoly, cfg: RunConfig):
    """(ctx, components): the absolute factorization of g at tiny degree."""
    from .bifactor import factor_over, irreducible_over

    p = g.ctx.p
    deg = g.degree()
    for L in range(1, 4 * deg + 1):
        ctxL = build_field(p, L, cfg)
        facs, _unit, _ = factor_over(g, ctxL, cfg)
        if any(m > 1 for _h, m in facs):
            raise CapExceeded("audit requires squarefree input")
        all_abs = True
        for h, _m in facs:
            dh = h.degree()
            if dh <= 1:
                continue
            for r in prime_divisors(dh):
                rep = irreducible_over(h, L * r, cfg)
                if rep.status != "Irreducible":
                    all_abs = False
                    break
            if not all_abs:
                break
        if all_abs:
            return ctxL, [h for h, _m in facs]
    raise CapExceeded(f"no splitting field up to degree {4 * deg} (degree {deg})")


def _top_form_poly(h: BiPoly):
    """The top homogeneous part as a univariate in x (y set to 1), plus the
    multiplicity of the y-free direction (1:0)."""
    from .poly import UniPoly

    D = h.degree()
    coeffs = [h.coeff(e, D - e) for e in range(D + 1)]
    u = UniPoly(h.ctx, coeffs)
    return u, D - u.degree()


def bezout_audit(p: int, t: int, cfg: RunConfig | None = None, tiny_cap: int = 8) -> BezoutReport:
    """Compare shared-singular-point tallies of the absolute components of
    g_t with the Bezout products of their degrees.

    Nodal shared points count 1 each; pairs with no common infinity
    direction must tally exactly deg*deg, others report the infinity
    deficit.  Only for tiny degrees (deg g_t <= tiny_cap).
    """
    cfg = cfg or default_config()
    if t - 2 > tiny_cap:
        raise CapExceeded(f"degree {t - 2} above tiny audit cap {tiny_cap}")
    f_t, g_t = build_ft_gt(p, t, cfg)
    dec = decompose(p, t)
    if dec.case == "A":
        if t % 2:
            raise CapExceeded("audit supports even t in case A")
        summary = omega_census(p, t, cfg)
    else:
        summary = caseB_enum(p, t, dec, cfg)
    if not summary.points_complete:
        raise CapExceeded("census points truncated; audit needs the full list")
    ctxL, comps = _absolute_factors(g_t, cfg)
    if len(comps) < 2:
        return BezoutReport(p, t, len(comps), ctxL.name, [], True)
    pts_ctx = None
    affine_pts = [pt for pt in summary.points if pt.kind == "affine"]
    if affine_pts:
        pts_ctx = affine_pts[0].alpha.ctx
    M = ctxL.k if pts_ctx is None else (ctxL.k * pts_ctx.k // math.gcd(ctxL.k, pts_ctx.k))
    ctxM = build_field(p, M, cfg)
    comps_M = [h.recode(ctxM) for h in comps]
    pts_M = [
        (embed(pt.alpha, ctxM), embed(pt.beta, ctxM)) for pt in affine_pts
    ]
    pairs = []
    ok = True
    for ii in range(len(comps)):
        for jj in range(ii + 1, len(comps)):
            h1, h2 = comps_M[ii], comps_M[jj]
            shared = 0
            for a, b in pts_M:
                if not h1.eval(a, b) and not h2.eval(a, b):
                    shared += 1
            product = comps[ii].degree() * comps[jj].degree()
            u1, ymult1 = _top_form_poly(h1)
            u2, ymult2 = _top_form_poly(h2)
            shared_dirs = u1.gcd(u2).degree() + (1 if ymult1 and ymult2 else 0)
            exact = shared == product if shared_dirs == 0 else None
            if exact is False:
                ok = False
            pairs.append(
                {
                    "components": [comps[ii].text(), comps[jj].text()],
                    "degrees": [comps[ii].degree(), comps[jj].degree()],
                    "affine_shared": shared,
                    "product": product,
                    "shared_infinity_directions": shared_dirs,
                    "infinity_deficit": product - shared,
                    "exact": exact,
                }
            )
            if product - shared < 0:
                ok = False
    return BezoutReport(p, t, len(comps), ctxL.name, pairs, ok)
