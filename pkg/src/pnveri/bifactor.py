"""Bivariate factorization over extension fields.

Strategy: specialize x at a point keeping the y-image squarefree and of
full degree, factor the image, Hensel-lift the factors as power series in
the shifted x, then recombine subsets whose truncated products are true
divisors.  Bounded by explicit caps; on cap overrun the verdict is
Skipped, never a guess.  Also hosts the decision "does f have an
absolutely irreducible factor over the base field", which reduces to
irreducibility over F_{p^r} for prime r dividing the component degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _fpx
from .arith import lucas_binom, prime_divisors
from .config import CapExceeded, RunConfig, default_config
from .gf import Fel, FieldCtx, build_field, down
from .poly import (
    BiPoly,
    UniPoly,
    _mul2,
    _powers,
    _tr2,
    _xgcd2,
    _zeros2,
    uni_factor,
)

__all__ = ["BiFactorReport", "irreducible_over", "has_abs_irred_factor_over_base", "factor_over"]


# ---------------------------------------------------------------------------
# Truncated bivariate tensors: shape (deg_y + 1, W, k), x-precision W


def _ttrim(T: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    while n > 0 and not T[n - 1].any():
        n -= 1
    return T[:n]


def _tzeros(ctx: FieldCtx, rows: int, W: int) -> np.ndarray:
    return np.zeros((rows, W, ctx.k), dtype=np.int64)


def _tone(ctx: FieldCtx, W: int) -> np.ndarray:
    T = _tzeros(ctx, 1, W)
    T[0, 0, 0] = 1
    return T


def _tadd(ctx: FieldCtx, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    rows = max(U.shape[0], V.shape[0])
    out = _tzeros(ctx, rows, U.shape[1])
    out[: U.shape[0]] += U
    out[: V.shape[0]] += V
    return _ttrim(out % ctx.p)


def _tneg(ctx: FieldCtx, U: np.ndarray) -> np.ndarray:
    return (-U) % ctx.p


def _tmul(ctx: FieldCtx, U: np.ndarray, V: np.ndarray, W: int) -> np.ndarray:
    """Product truncated to x-precision W."""
    if U.shape[0] == 0 or V.shape[0] == 0:
        return _tzeros(ctx, 0, W)
    k = ctx.k
    sT = 2 * k - 1 if k > 1 else 1
    Sx = 2 * W - 1
    fu = np.zeros((U.shape[0], Sx, sT), dtype=np.int64)
    fu[:, :W, :k] = U
    fv = np.zeros((V.shape[0], Sx, sT), dtype=np.int64)
    fv[:, :W, :k] = V
    fc = _fpx.mul(fu.ravel(), fv.ravel(), ctx.p)
    rows = U.shape[0] + V.shape[0] - 1
    buf = np.zeros(rows * Sx * sT, dtype=np.int64)
    buf[: len(fc)] = fc
    block = buf.reshape(rows, Sx, sT)[:, :W, :]
    if k == 1:
        return _ttrim(block[:, :, :1] % ctx.p)
    head = block[:, :, :k].copy()
    tail = block[:, :, k:]
    head += tail @ ctx._rc.R
    return _ttrim(head % ctx.p)


def _tdivmod_y(ctx: FieldCtx, U: np.ndarray, V: np.ndarray, W: int):
    """Division in y by V monic in y, x-precision W."""
    V = _ttrim(V)
    dv = V.shape[0] - 1
    assert dv >= 0
    top = V[dv]
    assert top[0, 0] == 1 and not top.ravel()[1:].any(), "divisor not monic in y"
    r = _ttrim(U).copy()
    du = r.shape[0] - 1
    if du < dv:
        return _tzeros(ctx, 0, W), r
    q = _tzeros(ctx, du - dv + 1, W)
    for i in range(du - dv, -1, -1):
        qi = r[i + dv].copy()
        if not qi.any():
            continue
        q[i] = qi
        prod = _tmul(ctx, qi[None, :, :], V, W)
        r[i : i + prod.shape[0]] = (r[i : i + prod.shape[0]] - prod) % ctx.p
    return _ttrim(q), _ttrim(r[:dv] if dv else r[:0])


def _t_from_bipoly(ctx: FieldCtx, f: BiPoly, W: int) -> np.ndarray:
    T = _tzeros(ctx, f.deg_y() + 1, W)
    for (a, b), c in f.terms.items():
        if a >= W:
            raise ValueError("x-degree exceeds precision")
        T[b, a] = c.c
    return T


def _t_to_bipoly(ctx: FieldCtx, T: np.ndarray) -> BiPoly:
    terms = {}
    for b, a in np.argwhere(T.any(axis=2)):
        terms[(int(a), int(b))] = ctx._el(T[b, a])
    return BiPoly(ctx, terms)


# ---------------------------------------------------------------------------
# Hensel lifting of a pairwise-coprime seed factorization


def _hensel_pair(ctx, F, G, H, S, T, W):
    """Lift F = G*H mod x to x-precision W, maintaining S*G + T*H = 1."""
    one = _tone(ctx, W)
    n = 1
    while n < W:
        e = _tadd(ctx, F, _tneg(ctx, _tmul(ctx, G, H, W)))
        if e.shape[0] == 0:
            break
        q, r = _tdivmod_y(ctx, _tmul(ctx, S, e, W), H, W)
        G = _tadd(ctx, G, _tadd(ctx, _tmul(ctx, T, e, W), _tmul(ctx, q, G, W)))
        H = _tadd(ctx, H, r)
        b = _tadd(ctx, _tadd(ctx, _tmul(ctx, S, G, W), _tmul(ctx, T, H, W)), _tneg(ctx, one))
        c, d = _tdivmod_y(ctx, _tmul(ctx, S, b, W), H, W)
        S = _tadd(ctx, S, _tneg(ctx, d))
        T = _tadd(ctx, T, _tneg(ctx, _tadd(ctx, _tmul(ctx, T, b, W), _tmul(ctx, c, G, W))))
        n *= 2
    assert _tadd(ctx, F, _tneg(ctx, _tmul(ctx, G, H, W))).shape[0] == 0
    return G, H


def _uni_to_tensor(ctx, arr2: np.ndarray, W: int) -> np.ndarray:
    T = _tzeros(ctx, max(arr2.shape[0], 1), W)
    for i in range(arr2.shape[0]):
        T[i, 0] = arr2[i]
    return _ttrim(T)


def _lift_tree(ctx, F, seeds: list[np.ndarray], W: int) -> list[np.ndarray]:
    """Lift the pairwise-coprime monic seeds (univariate arrays at x=0) so
    their product is F to x-precision W.  F must be monic in y."""
    if len(seeds) == 1:
        return [F]
    half, acc, total = 0, 0, sum(s.shape[0] - 1 for s in seeds)
    for i, s in enumerate(seeds[:-1]):
        acc += s.shape[0] - 1
        half = i + 1
        if acc * 2 >= total:
            break
    left, right = seeds[:half], seeds[half:]
    G0 = left[0]
    for s in left[1:]:
        G0 = _mul2(ctx, G0, s)
    H0 = right[0]
    for s in right[1:]:
        H0 = _mul2(ctx, H0, s)
    g, S0, T0 = _xgcd2(ctx, G0, H0)
    assert g.shape[0] == 1, "seed factors not coprime"
    G, H = _hensel_pair(
        ctx,
        F,
        _uni_to_tensor(ctx, G0, W),
        _uni_to_tensor(ctx, H0, W),
        _uni_to_tensor(ctx, S0, W),
        _uni_to_tensor(ctx, T0, W),
        W,
    )
    return _lift_tree(ctx, G, left, W) + _lift_tree(ctx, H, right, W)


# ---------------------------------------------------------------------------
# BiPoly-level utilities


def _shift_x(f: BiPoly, a: Fel) -> BiPoly:
    """Substitute x -> x + a."""
    ctx = f.ctx
    if not a:
        return f
    p = ctx.p
    apow = _powers(a, f.deg_x())
    out: dict = {}
    for (al, b), c in f.terms.items():
        for u in range(al + 1):
            cu = lucas_binom(al, u, p)
            if not cu:
                continue
            val = c * apow[al - u]
            if cu != 1:
                val = val * ctx.scalar(cu)
            if not val:
                continue
            key = (u, b)
            s = out.get(key, ctx.zero) + val
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return BiPoly(ctx, out)


def _specialize_x(f: BiPoly, a: Fel) -> UniPoly:
    ctx = f.ctx
    apow = _powers(a, f.deg_x())
    rows = np.zeros((f.deg_y() + 1, ctx.k), dtype=np.int64)
    for (al, b), c in f.terms.items():
        rows[b] = (rows[b] + np.asarray((c * apow[al]).c)) % ctx.p
    return UniPoly(ctx, rows)


def _squarefree_uni(u: UniPoly) -> bool:
    du = u.derivative()
    if du.is_zero():
        return u.degree() == 0
    return u.gcd(du).degree() == 0


def _y_coeff_polys(f: BiPoly) -> list[UniPoly]:
    ctx = f.ctx
    cols: dict = {}
    for (a, b), c in f.terms.items():
        cols.setdefault(b, {})[a] = c
    out = []
    for b in range(f.deg_y() + 1):
        d = cols.get(b, {})
        arr = _zeros2(ctx, max(d, default=-1) + 1)
        for a, c in d.items():
            arr[a] = c.c
        out.append(UniPoly._raw(ctx, _tr2(arr)))
    return out


def _exact_div_y(F: BiPoly, C: BiPoly) -> BiPoly | None:
    """F / C when C is monic in y and divides exactly, else None."""
    ctx = F.ctx
    dyC = C.deg_y()
    top = {a: c for (a, b), c in C.terms.items() if b == dyC}
    if list(top.keys()) != [0] or top[0] != ctx.one:
        raise ValueError("divisor must be monic in y")
    if C.deg_x() > F.deg_x() or dyC > F.deg_y():
        return None
    W = 2 * F.deg_x() + 2
    Ft = _t_from_bipoly(ctx, F, W)
    Ct = _t_from_bipoly(ctx, C, W)
    r = Ft.copy()
    du = r.shape[0] - 1
    q = _tzeros(ctx, du - dyC + 1, W)
    for i in range(du - dyC, -1, -1):
        qi = r[i + dyC].copy()
        if qi[F.deg_x() + 1 :].any():
            return None
        if not qi.any():
            continue
        q[i] = qi
        prod = _tmul(ctx, qi[None, :, :], Ct, W)
        r[i : i + prod.shape[0]] = (r[i : i + prod.shape[0]] - prod) % ctx.p
    if _ttrim(r).shape[0] != 0:
        return None
    Q = _t_to_bipoly(ctx, _ttrim(q))
    assert Q * C == F
    return Q


# ---------------------------------------------------------------------------
# Core machinery


def _core_factor(ctx: FieldCtx, F: BiPoly, cfg: RunConfig, forced_point: int | None = None):
    """Irreducible factors over ctx of F monic in y, primitive, deg_y >= 1.

    Returns (factors, notes); all factors monic in y, multiplicity one.
    Raises CapExceeded when no squarefree specialization is found or the
    recombination budget runs out.
    """
    dy, dx = F.deg_y(), F.deg_x()
    deg = F.degree()
    notes: dict = {}
    if deg <= 1:
        return [F], {"trivial": True}
    level = 1
    found = None
    while True:
        kE = ctx.k * level
        if kE > cfg.max_field_degree:
            raise CapExceeded(f"specialization escalation exceeds field cap at level {level}")
        ctxE = ctx if level == 1 else build_field(ctx.p, kE, cfg)
        Fe = F.recode(ctxE)
        codes: list[int] | range
        if forced_point is not None and level == 1:
            codes = [forced_point]
        else:
            codes = range(min(ctxE.q, 4 * deg * deg + 16))
        for code in codes:
            a = ctxE.from_code(code)
            u = _specialize_x(Fe, a)
            if u.degree() != dy:
                continue
            if _squarefree_uni(u):
                found = (ctxE, Fe, a, u, level)
                break
        if found:
            break
        if forced_point is not None and level == 1:
            raise CapExceeded(f"forced specialization {forced_point} not squarefree")
        if ctxE.q >= deg * deg:
            raise CapExceeded("no squarefree specialization; input may have repeated factors")
        level += 1
    ctxE, Fe, a, u, level = found
    notes["specialization"] = a.code()
    notes["escalation"] = level
    ufacs = uni_factor(u, cfg)
    assert all(m == 1 for _, m in ufacs), "squarefree image factored with multiplicity"
    notes["modular_factors"] = len(ufacs)
    if len(ufacs) == 1:
        # image irreducible over the (possibly bigger) field: F irreducible over ctx
        return [F], notes
    W = 2 * deg + 1
    Fs = _shift_x(Fe, a)
    Ft = _t_from_bipoly(ctxE, Fs, W)
    seeds = sorted((f._a for f, _ in ufacs), key=lambda arr: (arr.shape[0], arr.tobytes()))
    lifted = _lift_tree(ctxE, Ft, seeds, W)
    for seed, lift in zip(seeds, lifted):
        assert np.array_equal(_ttrim(lift[:, 0, :].copy()), seed), "lift lost its seed"

    escalated = level > 1
    pool = list(range(len(lifted)))
    factors: list[BiPoly] = []
    Fcur = F
    budget = cfg.max_recombination
    count = 0
    while pool:
        if len(pool) == 1:
            factors.append(Fcur)
            break
        hit = None
        for size in range(1, len(pool)):
            for subset in combinations(pool, size):
                count += 1
                if count > budget:
                    raise CapExceeded(f"recombination cap {budget} exceeded")
                prod = lifted[subset[0]]
                for i in subset[1:]:
                    prod = _tmul(ctxE, prod, lifted[i], W)
                if prod[:, dx + 1 :, :].any():
                    continue
                cand = _shift_x(_t_to_bipoly(ctxE, prod), -a)
                if escalated:
                    cand_down = _down_bipoly(cand, ctx)
                    if cand_down is None:
                        continue
                    cand = cand_down
                Q = _exact_div_y(Fcur, cand)
                if Q is None:
                    continue
                hit = (subset, cand, Q)
                break
            if hit:
                break
        if hit is None:
            factors.append(Fcur)
            break
        subset, cand, Q = hit
        factors.append(cand)
        Fcur = Q
        pool = [i for i in pool if i not in subset]
    notes["recombination_candidates"] = count
    return factors, notes


def _down_bipoly(f: BiPoly, small: FieldCtx) -> BiPoly | None:
    terms = {}
    for key, c in f.terms.items():
        d = down(c, small)
        if d is None:
            return None
        terms[key] = d
    return BiPoly(small, terms)


def factor_over(
    F: BiPoly, ctx: FieldCtx, cfg: RunConfig | None = None, forced_point: int | None = None
):
    """Full factorization of F over ctx: (factors, unit, notes).

    factors is a list of (BiPoly, multiplicity) with deterministic order and
    lead-term-normalized entries; unit * product == F is asserted per call.
    """
    cfg = cfg or default_config()
    if F.is_zero():
        raise ValueError("cannot factor zero")
    if F.degree() > cfg.max_bifactor_degree:
        raise CapExceeded(f"degree {F.degree()} over factor cap {cfg.max_bifactor_degree}")
    if F.ctx is not ctx:
        F = F.recode(ctx)
    original = F
    notes: dict = {}
    facs: list[tuple[BiPoly, int]] = []
    unit = ctx.one
    if F.degree() == 0:
        u0 = next(iter(F.terms.values()))
        _remult_check(original, [], u0)
        return [], u0, notes

    def _add_uni(upoly: UniPoly, var: str, mult: int = 1):
        for fac, m in uni_factor(upoly, cfg):
            key = (1, 0) if var == "x" else (0, 1)
            terms = {
                (key[0] * i, key[1] * i): fac.coeff(i) for i in range(fac.degree() + 1)
            }
            facs.append((BiPoly(ctx, terms), m * mult))

    if F.deg_y() == 0:
        cs = [F.coeff(i, 0) for i in range(F.deg_x() + 1)]
        _add_uni(UniPoly(ctx, cs), "x")
        done, unit = _finish(original, facs, ctx)
        return done, unit, notes
    if F.deg_x() == 0:
        cs = [F.coeff(0, i) for i in range(F.deg_y() + 1)]
        _add_uni(UniPoly(ctx, cs), "y")
        done, unit = _finish(original, facs, ctx)
        return done, unit, notes

    # x-only content
    ycs = _y_coeff_polys(F)
    cont = ycs[0]
    for u in ycs[1:]:
        cont = cont.gcd(u)
        if cont.degree() == 0 and not cont.is_zero():
            break
    if cont.degree() >= 1:
        _add_uni(cont.monic(), "x")
        newterms: dict = {}
        for b, u in enumerate(ycs):
            q, r = divmod(u, cont.monic())
            assert r.is_zero()
            for i in range(q.degree() + 1):
                c = q.coeff(i)
                if c:
                    newterms[(i, b)] = c
        F = BiPoly(ctx, newterms)
        notes["content_degree"] = cont.degree()
        if F.deg_x() == 0:
            cs = [F.coeff(0, i) for i in range(F.deg_y() + 1)]
            _add_uni(UniPoly(ctx, cs), "y")
            done, unit = _finish(original, facs, ctx)
            return done, unit, notes

    dy = F.deg_y()
    lc = _y_coeff_polys(F)[dy]
    if lc.degree() == 0:
        Fm = F.scale(ctx.inv(lc.coeff(0)))
        core, cnotes = _core_factor(ctx, Fm, cfg, forced_point)
        facs.extend((h, 1) for h in core)
    else:
        # rescale y by the leading coefficient to force monicity, then undo
        G = _monicize(ctx, F, lc)
        core, cnotes = _core_factor(ctx, G, cfg, forced_point)
        for h in core:
            facs.append((_unscale_y(ctx, h, lc), 1))
    notes.update(cnotes)
    done, unit = _finish(original, facs, ctx)
    return done, unit, notes


def _powers_poly(u: UniPoly, n: int) -> list[UniPoly]:
    one = UniPoly(u.ctx, [u.ctx.one])
    out = [one]
    for _ in range(n):
        out.append(out[-1] * u)
    return out


def _monicize(ctx: FieldCtx, F: BiPoly, lc: UniPoly) -> BiPoly:
    """G(x, y) = lc(x)^(d-1) * F(x, y / lc(x)), monic in y."""
    dy = F.deg_y()
    lcs = _powers_poly(lc, dy)
    terms: dict = {}
    for (aa, b), c in F.terms.items():
        piece = lcs[dy - 1 - b] if b < dy else UniPoly(ctx, [ctx.one])
        for i in range(piece.degree() + 1):
            co = piece.coeff(i)
            if not co:
                continue
            key = (aa + i, b)
            s = terms.get(key, ctx.zero) + c * co
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
    G = BiPoly(ctx, terms)
    top = {a: c for (a, b), c in G.terms.items() if b == dy}
    assert list(top) == [0] and top[0] == ctx.one, "monicization failed"
    return G


def _unscale_y(ctx: FieldCtx, h: BiPoly, lc: UniPoly) -> BiPoly:
    """Map a factor of the monicized polynomial back: y -> y*lc, primitive part."""
    dyh = h.deg_y()
    lcs = _powers_poly(lc, dyh)
    terms: dict = {}
    for (aa, b), c in h.terms.items():
        piece = lcs[b]
        for i in range(piece.degree() + 1):
            co = piece.coeff(i)
            if not co:
                continue
            key = (aa + i, b)
            s = terms.get(key, ctx.zero) + c * co
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
    raw = BiPoly(ctx, terms)
    ycs = _y_coeff_polys(raw)
    cont = ycs[0]
    for u in ycs[1:]:
        cont = cont.gcd(u)
        if cont.degree() == 0 and not cont.is_zero():
            break
    if cont.degree() >= 1:
        newterms: dict = {}
        cm = cont.monic()
        for b, u in enumerate(ycs):
            q, r = divmod(u, cm)
            assert r.is_zero()
            for i in range(q.degree() + 1):
                cc = q.coeff(i)
                if cc:
                    newterms[(i, b)] = cc
        raw = BiPoly(ctx, newterms)
    return raw


def _finish(original: BiPoly, facs: list[tuple[BiPoly, int]], ctx: FieldCtx):
    out = [(h.monic_in(), m) for h, m in facs]
    out.sort(key=lambda hm: (hm[0].degree(), hm[0].text()))
    unit = _unit_of(original, out, ctx)
    _remult_check(original, out, unit)
    return out, unit


def _unit_of(original: BiPoly, facs: list[tuple[BiPoly, int]], ctx: FieldCtx) -> Fel:
    prod = BiPoly(ctx, {(0, 0): ctx.one})
    for h, m in facs:
        for _ in range(m):
            prod = prod * h
    key = next(iter(prod.terms))
    return original.coeff(*key) / prod.terms[key]


def _remult_check(original: BiPoly, facs: list[tuple[BiPoly, int]], unit: Fel) -> None:
    ctx = original.ctx
    prod = BiPoly(ctx, {(0, 0): unit})
    for h, m in facs:
        for _ in range(m):
            prod = prod * h
    assert prod == original, "factor product does not re-multiply to the input"


# ---------------------------------------------------------------------------
# Public reports


@dataclass
class BiFactorReport:
    """Outcome of an irreducibility/factorization query over F_{p^m}."""

    input_text: str
    p: int
    m: int
    status: str  # Irreducible | Factors | Skipped
    factors: list[tuple[BiPoly, int]] | None = None
    reason: str | None = None
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "input": self.input_text,
            "p": self.p,
            "m": self.m,
            "status": self.status,
            "factors": None
            if self.factors is None
            else [[h.text(), m] for h, m in self.factors],
            "reason": self.reason,
            "notes": self.notes,
        }


def irreducible_over(
    f: BiPoly,
    m: int,
    cfg: RunConfig | None = None,
    forced_point: int | None = None,
) -> BiFactorReport:
    """Is f irreducible when its coefficients are read in F_{p^m}?"""
    cfg = cfg or default_config()
    p = f.ctx.p
    if f.degree() < 1:
        raise ValueError("irreducibility needs positive degree")
    if m % f.ctx.k != 0:
        raise ValueError(f"coefficient field F_{p}^{f.ctx.k} does not sit inside F_{p}^{m}")
    ctx = build_field(p, m, cfg)
    text = f.text()
    try:
        facs, unit, notes = factor_over(f, ctx, cfg, forced_point)
    except CapExceeded as ce:
        return BiFactorReport(text, p, m, "Skipped", reason=ce.reason)
    total = sum(mm for _, mm in facs)
    if total == 1:
        return BiFactorReport(text, p, m, "Irreducible", factors=facs, notes=notes)
    return BiFactorReport(text, p, m, "Factors", factors=facs, notes=notes)


def has_abs_irred_factor_over_base(
    f: BiPoly, cfg: RunConfig | None = None
) -> tuple[bool | None, BiPoly | None]:
    """Does f (over F_p) have an absolutely irreducible factor over F_p?

    Returns (True, witness) with the first qualifying component in the
    deterministic component order, (False, None) when none qualifies, and
    (None, None) when a required sub-decision was Skipped.
    """
    cfg = cfg or default_config()
    if f.ctx.k != 1:
        raise ValueError("decision is about the prime base field")
    try:
        facs, unit, _ = factor_over(f, f.ctx, cfg)
    except CapExceeded:
        return None, None
    skipped = False
    for h, _m in facs:
        d = h.degree()
        if d == 0:
            continue
        if d == 1:
            return True, h
        ok = True
        for r in prime_divisors(d):
            rep = irreducible_over(h, r, cfg)
            if rep.status == "Skipped":
                skipped = True
                ok = False
                break
            if rep.status == "Factors":
                ok = False
                break
        if ok:
            return True, h
    if skipped:
        return None, None
    return False, None
