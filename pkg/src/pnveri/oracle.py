"""Brute-force ground truth, independent of the certificate machinery.

Everything here answers by full enumeration or refuses (CapExceeded);
nothing samples.  Small fields get a discrete-log table (one generator,
code-indexed power/log/decode arrays) so that value sweeps are numpy
array passes instead of per-element field multiplications.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field

import numpy as np

from .arith import lucas_binom, prime_divisors
from .config import CapExceeded, RunConfig, default_config
from .gf import Fel, FieldCtx, build_field
from .poly import BiPoly, UniPoly, build_ft_any

__all__ = [
    "OracleReport",
    "is_pp",
    "is_planar",
    "distinct_point_search",
    "brute_pairs",
    "exhaustive_bifactor",
]


@dataclass
class OracleReport:
    kind: str
    params: dict
    result: object
    statement: str
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "params": self.params,
            "result": self.result,
            "statement": self.statement,
        }
        out.update(self.extra)
        return out


# ---------------------------------------------------------------------------
# discrete-log tables

_tables: dict = {}
_tables_lock = threading.Lock()


class _FieldTables:
    """Generator-based lookup tables for one small field."""

    __slots__ = ("ctx", "pow_codes", "log_by_code", "vec_by_code", "enc")

    def __init__(self, ctx: FieldCtx):
        q, p, k = ctx.q, ctx.p, ctx.k
        gen = None
        fac = prime_divisors(q - 1)
        for code in range(2, q):
            el = ctx.from_code(code)
            if all(el ** ((q - 1) // r) != ctx.one for r in fac):
                gen = el
                break
        assert gen is not None
        pow_codes = np.empty(q - 1, dtype=np.int64)
        cur = ctx.one
        for j in range(q - 1):
            pow_codes[j] = cur.code()
            cur = cur * gen
        assert cur == ctx.one
        log_by_code = np.full(q, -1, dtype=np.int64)
        log_by_code[pow_codes] = np.arange(q - 1)
        codes = np.arange(q, dtype=np.int64)
        vec = np.zeros((q, k), dtype=np.int8)
        for i in range(k):
            vec[:, i] = codes % p
            codes //= p
        self.ctx = ctx
        self.pow_codes = pow_codes
        self.log_by_code = log_by_code
        self.vec_by_code = vec
        self.enc = np.array([p**i for i in range(k)], dtype=np.int64)


def _field_tables(ctx: FieldCtx, cfg: RunConfig) -> _FieldTables:
    if ctx.q > cfg.max_oracle_field:
        raise CapExceeded(f"field size {ctx.q} above oracle cap {cfg.max_oracle_field}")
    key = (ctx.p, ctx.k)
    with _tables_lock:
        tab = _tables.get(key)
    if tab is None:
        tab = _FieldTables(ctx)
        with _tables_lock:
            tab = _tables.setdefault(key, tab)
    return tab


def _eval_all(h: UniPoly, tab: _FieldTables) -> np.ndarray:
    """Codes of h(x), indexed by the code of x."""
    ctx = h.ctx
    q, p, k = ctx.q, ctx.p, ctx.k
    logs = np.arange(q - 1, dtype=np.int64)
    acc = np.zeros((q - 1, k), dtype=np.int64)
    const = h.coeff(0)
    acc += np.asarray(const.c, dtype=np.int64)
    for e in range(1, h.degree() + 1):
        c = h.coeff(e)
        if not c:
            continue
        xe = tab.vec_by_code[tab.pow_codes[(e * logs) % (q - 1)]].astype(np.int64)
        acc += xe @ ctx.mul_matrix(c)
        acc %= p
    acc %= p
    out = np.empty(q, dtype=np.int64)
    out[0] = const.code()
    out[tab.pow_codes] = acc @ tab.enc
    return out


def is_pp(h: UniPoly, cfg: RunConfig | None = None) -> tuple[bool, OracleReport]:
    """Whether h permutes its field: the value multiset is tallied over
    every element with an occupancy bit-set."""
    cfg = cfg or default_config()
    ctx = h.ctx
    tab = _field_tables(ctx, cfg)
    values = _eval_all(h, tab)
    occ = np.bincount(values, minlength=ctx.q)
    ok = bool((occ > 0).all())
    rep = OracleReport(
        "pp",
        {"p": ctx.p, "k": ctx.k, "degree": h.degree()},
        ok,
        f"all {ctx.q} field elements evaluated",
    )
    return ok, rep


def _planar_diff_poly(p: int, t: int, ctx: FieldCtx) -> UniPoly:
    coeffs = [ctx.scalar(lucas_binom(t, k, p)) for k in range(t)]
    return UniPoly(ctx, coeffs)


def is_planar(p: int, t: int, n: int, cfg: RunConfig | None = None) -> tuple[bool, OracleReport]:
    """Planarity of x^t over F_{p^n}, decided by the permutation test on
    the difference polynomial (x+1)^t - x^t."""
    cfg = cfg or default_config()
    if t < 2:
        raise ValueError("t must be at least 2")
    ctx = build_field(p, n, cfg)
    h = _planar_diff_poly(p, t, ctx)
    ok, inner = is_pp(h, cfg)
    rep = OracleReport(
        "planar",
        {"p": p, "t": t, "n": n},
        ok,
        inner.statement,
    )
    return ok, rep


def _g_any(p: int, t: int, cfg: RunConfig) -> BiPoly:
    from .poly import _div_x_minus_y, _ft_terms

    ctx = build_field(p, 1, cfg)
    return BiPoly(ctx, _div_x_minus_y(_ft_terms(p, t), p))


def distinct_point_search(
    p: int, t: int, n: int, cfg: RunConfig | None = None
) -> tuple[bool, OracleReport]:
    """Whether the division curve has an F_{p^n}-point off the diagonal.

    Sweeps every x and every y (vectorized per x); existence of such a
    point is equivalent to x^t not being planar over F_{p^n}.
    """
    cfg = cfg or default_config()
    if t < 2:
        raise ValueError("t must be at least 2")
    ctx = build_field(p, n, cfg)
    q = ctx.q
    if q * q > cfg.max_oracle_pairs:
        raise CapExceeded(f"{q}^2 pairs above oracle cap {cfg.max_oracle_pairs}")
    tab = _field_tables(ctx, cfg)
    g = _g_any(p, t, cfg).recode(ctx)
    if g.is_zero():
        return True, OracleReport(
            "points", {"p": p, "t": t, "n": n}, True, "zero polynomial; any pair works"
        )
    dy = g.deg_y()
    # coefficient polynomials of y^j, each univariate in x
    ypolys = []
    for j in range(dy + 1):
        coeffs = [g.coeff(a, j) for a in range(g.deg_x() + 1)]
        ypolys.append(UniPoly(ctx, coeffs))
    found = False
    witness = None
    for xcode in range(q):
        x = ctx.from_code(xcode)
        uni = UniPoly(ctx, [up.eval(x) for up in ypolys])
        if uni.is_zero():
            ycode = 0 if xcode != 0 else 1
            found, witness = True, (xcode, ycode)
            break
        vals = _eval_all(uni, tab)
        roots = np.flatnonzero(vals == 0)
        roots = roots[roots != xcode]
        if roots.size:
            found, witness = True, (xcode, int(roots[0]))
            break
    rep = OracleReport(
        "points",
        {"p": p, "t": t, "n": n},
        found,
        f"all {q}x{q} pairs covered" if not found else "stopped at first witness",
        {"witness": list(witness) if witness else None},
    )
    return found, rep


def brute_pairs(p: int, t: int, cfg: RunConfig | None = None) -> tuple[int, OracleReport]:
    """|Omega_t| by testing every ordered pair of nontrivial (t-1)-th
    roots of unity for the power collision (r-1)^(t-1) = (s-1)^(t-1)."""
    from .gf import roots_of_unity

    cfg = cfg or default_config()
    ctx, _g, mu = roots_of_unity(p, t - 1, cfg)
    others = mu[1:]
    powers = [(r - ctx.one) ** (t - 1) for r in others]
    count = 0
    for a in range(len(others)):
        for b in range(len(others)):
            if a != b and powers[a] == powers[b]:
                count += 1
    rep = OracleReport(
        "pairs",
        {"p": p, "t": t},
        count,
        f"all {len(others)}^2 ordered root pairs tested",
    )
    return count, rep


# ---------------------------------------------------------------------------
# exhaustive tiny-degree divisor search


def _mono_key(ab):
    return (ab[0] + ab[1], ab[0])


def _lead_term(terms: dict) -> tuple:
    return max(terms, key=_mono_key)


def _divides(f: BiPoly, h: BiPoly) -> bool:
    """Exact multivariate single-divisor division (graded order)."""
    ctx = f.ctx
    ft = dict(f.terms)
    hl = _lead_term(h.terms)
    hc_inv = ctx.inv(h.terms[hl])
    hitems = list(h.terms.items())
    guard = 0
    while ft:
        fl = _lead_term(ft)
        qa, qb = fl[0] - hl[0], fl[1] - hl[1]
        if qa < 0 or qb < 0:
            return False
        c = ft[fl] * hc_inv
        for (a, b), hc in hitems:
            key = (a + qa, b + qb)
            s = ft.get(key, ctx.zero) - c * hc
            if s:
                ft[key] = s
            else:
                ft.pop(key, None)
        guard += 1
        assert guard <= 4 * (len(f.terms) + 1) * (len(h.terms) + 1)
    return True


def _slice_table(f_slice: UniPoly, max_deg: int, q: int, ctx: FieldCtx) -> set:
    """Code tuples (c_0..c_max_deg) whose univariate divides f_slice."""
    ok: set = set()
    zero_divides = f_slice.is_zero()
    for codes in itertools.product(range(q), repeat=max_deg + 1):
        u = UniPoly(ctx, [ctx.from_code(c) for c in codes])
        if u.is_zero():
            if zero_divides:
                ok.add(codes)
            continue
        if zero_divides or (f_slice % u).is_zero():
            ok.add(codes)
    return ok


def exhaustive_bifactor(
    f: BiPoly, max_deg: int = 3, cfg: RunConfig | None = None
) -> tuple[list[BiPoly], OracleReport]:
    """Every divisor of f of total degree 1..max_deg, found by trial
    division over the full normalized candidate space.

    Candidates are normalized to lead coefficient 1 in the graded order,
    so the list is exactly the monic-normalized divisor set.
    """
    cfg = cfg or default_config()
    if max_deg > 3:
        raise ValueError("oracle divisor search is capped at total degree 3")
    ctx = f.ctx
    if f.is_zero() or f.degree() < 1:
        return [], OracleReport(
            "bifactor", {"p": ctx.p, "k": ctx.k, "max_deg": max_deg}, 0, "degenerate input"
        )
    q = ctx.q
    max_deg = min(max_deg, f.degree())
    monos = sorted(
        ((a, b) for a in range(max_deg + 1) for b in range(max_deg + 1 - a)),
        key=_mono_key,
        reverse=True,
    )
    # candidate count across all lead choices, checked against the cap
    space = 0
    leads = [m for m in monos if m[0] + m[1] >= 1]
    below: dict = {}
    for lead in leads:
        below[lead] = [m for m in monos if _mono_key(m) < _mono_key(lead)]
        space += q ** len(below[lead])
    if space > cfg.max_oracle_space:
        raise CapExceeded(f"candidate space {space} above oracle cap {cfg.max_oracle_space}")
    fx = UniPoly(ctx, [f.coeff(a, 0) for a in range(f.deg_x() + 1)])
    fy = UniPoly(ctx, [f.coeff(0, b) for b in range(f.deg_y() + 1)])
    sx = _slice_table(fx, max_deg, q, ctx)
    sy = _slice_table(fy, max_deg, q, ctx)
    elems = [ctx.from_code(c) for c in range(q)]
    found: list[BiPoly] = []
    tested = 0
    for lead in leads:
        free = below[lead]
        xpos = {m: i for i, m in enumerate(free) if m[1] == 0}
        ypos = {m: i for i, m in enumerate(free) if m[0] == 0}
        lead_x = lead[1] == 0
        lead_y = lead[0] == 0
        for codes in itertools.product(range(q), repeat=len(free)):
            tested += 1
            xsl = tuple(
                (1 if (lead_x and lead[0] == a) else codes[xpos[(a, 0)]] if (a, 0) in xpos else 0)
                for a in range(max_deg + 1)
            )
            if xsl not in sx:
                continue
            ysl = tuple(
                (1 if (lead_y and lead[1] == b) else codes[ypos[(0, b)]] if (0, b) in ypos else 0)
                for b in range(max_deg + 1)
            )
            if ysl not in sy:
                continue
            terms = {lead: ctx.one}
            for m, c in zip(free, codes):
                if c:
                    terms[m] = elems[c]
            h = BiPoly(ctx, terms)
            if _divides(f, h):
                found.append(h)
    found.sort(key=lambda h: (h.degree(), h.text()))
    rep = OracleReport(
        "bifactor",
        {"p": ctx.p, "k": ctx.k, "max_deg": max_deg},
        len(found),
        f"all {space} normalized candidates of degree <= {max_deg} trial-divided",
        {"tested": tested, "divisors": [h.text() for h in found]},
    )
    return found, rep
