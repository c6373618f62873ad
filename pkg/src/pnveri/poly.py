"""Univariate and bivariate polynomials over prime-power fields.

Univariate polynomials store a trimmed 2D int64 array (one row per
coefficient, columns are the tower coordinates of the field element), so
bulk arithmetic stays inside numpy.  Bivariate polynomials are sparse
term dictionaries keyed by (x-degree, y-degree), which suits the very
sparse difference polynomials this package works with.
"""

from __future__ import annotations

import random
from typing import Iterable

import numpy as np

from . import _fpx
from .arith import lucas_binom
from .config import RunConfig, default_config
from .gf import Fel, FieldCtx, build_field, embed

__all__ = [
    "UniPoly",
    "BiPoly",
    "build_ft_gt",
    "divides_x_plus_y_plus_1",
    "taylor_shift",
    "multiplicity_and_tangent_cone",
    "uni_factor",
]


# ---------------------------------------------------------------------------
# 2D coefficient-array helpers (rows = coefficients, little-endian in T)


def _tr2(A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    while n > 0 and not A[n - 1].any():
        n -= 1
    return A[:n]


def _zeros2(ctx: FieldCtx, n: int) -> np.ndarray:
    return np.zeros((n, ctx.k), dtype=np.int64)


def _add2(ctx: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n = max(A.shape[0], B.shape[0])
    out = _zeros2(ctx, n)
    out[: A.shape[0]] += A
    out[: B.shape[0]] += B
    return _tr2(out % ctx.p)


def _neg2(ctx: FieldCtx, A: np.ndarray) -> np.ndarray:
    return (-A) % ctx.p


def _mul2(ctx: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product via packing each coefficient into a stride of 2k-1 slots."""
    if A.shape[0] == 0 or B.shape[0] == 0:
        return _zeros2(ctx, 0)
    p, k = ctx.p, ctx.k
    if k == 1:
        c = _fpx.mul(A[:, 0], B[:, 0], p)
        return c.reshape(-1, 1)
    stride = 2 * k - 1
    fa = np.zeros((A.shape[0], stride), dtype=np.int64)
    fa[:, :k] = A
    fb = np.zeros((B.shape[0], stride), dtype=np.int64)
    fb[:, :k] = B
    fc = _fpx.mul(fa.ravel(), fb.ravel(), p)
    rows = A.shape[0] + B.shape[0] - 1
    flat = np.zeros(rows * stride, dtype=np.int64)
    flat[: len(fc)] = fc
    block = flat.reshape(rows, stride)
    # fold T-degrees k..2k-2 back down with the shared reduction matrix
    head = block[:, :k].copy()
    tail = block[:, k:]
    head += tail @ ctx._rc.R[: stride - k]
    return _tr2(head % p)


def _scalmul2(ctx: FieldCtx, A: np.ndarray, a: Fel) -> np.ndarray:
    if A.shape[0] == 0:
        return A
    M = ctx.mul_matrix(a)
    return _tr2((A @ M) % ctx.p)


def _divmod2(ctx: FieldCtx, A: np.ndarray, B: np.ndarray):
    A, B = _tr2(A), _tr2(B)
    if B.shape[0] == 0:
        raise ZeroDivisionError("polynomial division by zero")
    da, db = A.shape[0] - 1, B.shape[0] - 1
    if da < db:
        return _zeros2(ctx, 0), A.copy()
    lc = ctx._el(B[db])
    inv = ctx.inv(lc)
    Minv = ctx.mul_matrix(inv)
    r = A.copy()
    q = _zeros2(ctx, da - db + 1)
    for i in range(da, db - 1, -1):
        c = (r[i] @ Minv) % ctx.p
        if not c.any():
            continue
        q[i - db] = c
        Mc = ctx.mul_matrix(ctx._el(c))
        r[i - db : i + 1] = (r[i - db : i + 1] - B @ Mc) % ctx.p
    return _tr2(q), _tr2(r[:db] if db > 0 else r[:0])


def _monic2(ctx: FieldCtx, A: np.ndarray) -> np.ndarray:
    if A.shape[0] == 0:
        return A
    lc = ctx._el(A[-1])
    if lc == ctx.one:
        return A
    return _scalmul2(ctx, A, ctx.inv(lc))


def _gcd2(ctx: FieldCtx, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    a, b = _tr2(A.copy()), _tr2(B.copy())
    while b.shape[0] > 0:
        _, r = _divmod2(ctx, a, b)
        a, b = b, r
    return _monic2(ctx, a)


def _xgcd2(ctx: FieldCtx, A: np.ndarray, B: np.ndarray):
    """(g, u, v) with u*A + v*B = g, g monic."""
    r0, r1 = _tr2(A.copy()), _tr2(B.copy())
    one = _zeros2(ctx, 1)
    one[0, 0] = 1
    s0, s1 = one.copy(), _zeros2(ctx, 0)
    t0, t1 = _zeros2(ctx, 0), one.copy()
    while r1.shape[0] > 0:
        q, r = _divmod2(ctx, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _add2(ctx, s0, _neg2(ctx, _mul2(ctx, q, s1)))
        t0, t1 = t1, _add2(ctx, t0, _neg2(ctx, _mul2(ctx, q, t1)))
    if r0.shape[0] == 0:
        raise ZeroDivisionError("xgcd of zero polynomials")
    lc = ctx._el(r0[-1])
    if lc != ctx.one:
        inv = ctx.inv(lc)
        r0 = _scalmul2(ctx, r0, inv)
        s0 = _scalmul2(ctx, s0, inv)
        t0 = _scalmul2(ctx, t0, inv)
    return r0, s0, t0


def _deriv2(ctx: FieldCtx, A: np.ndarray) -> np.ndarray:
    if A.shape[0] <= 1:
        return _zeros2(ctx, 0)
    mult = (np.arange(1, A.shape[0], dtype=np.int64) % ctx.p)[:, None]
    return _tr2((A[1:] * mult) % ctx.p)


def _eval2(ctx: FieldCtx, A: np.ndarray, a: Fel) -> Fel:
    if A.shape[0] == 0:
        return ctx.zero
    M = ctx.mul_matrix(a)
    acc = np.zeros(ctx.k, dtype=np.int64)
    for i in range(A.shape[0] - 1, -1, -1):
        acc = (acc @ M + A[i]) % ctx.p
    return ctx._el(acc)


def _powmod2(ctx: FieldCtx, A: np.ndarray, e: int, F: np.ndarray) -> np.ndarray:
    _, base = _divmod2(ctx, A, F)
    out = _zeros2(ctx, 1)
    out[0, 0] = 1
    for bit in bin(e)[2:]:
        out = _divmod2(ctx, _mul2(ctx, out, out), F)[1]
        if bit == "1":
            out = _divmod2(ctx, _mul2(ctx, out, base), F)[1]
    return out


# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial over a FieldCtx."""

    __slots__ = ("ctx", "_a")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[Fel] | np.ndarray):
        self.ctx = ctx
        if isinstance(coeffs, np.ndarray):
            self._a = _tr2(np.array(coeffs, dtype=np.int64).reshape(-1, ctx.k))
        else:
            rows = []
            for c in coeffs:
                if isinstance(c, int):
                    c = ctx.scalar(c)
                rows.append(c.c)
            arr = np.array(rows, dtype=np.int64) if rows else _zeros2(ctx, 0)
            self._a = _tr2(arr)

    @classmethod
    def _raw(cls, ctx: FieldCtx, arr: np.ndarray) -> "UniPoly":
        out = object.__new__(cls)
        out.ctx = ctx
        out._a = arr
        return out

    def degree(self) -> int:
        return self._a.shape[0] - 1

    def is_zero(self) -> bool:
        return self._a.shape[0] == 0

    def coeff(self, i: int) -> Fel:
        if i < 0 or i >= self._a.shape[0]:
            return self.ctx.zero
        return self.ctx._el(self._a[i])

    def coeffs(self) -> list[Fel]:
        return [self.ctx._el(r) for r in self._a]

    def monic(self) -> "UniPoly":
        return UniPoly._raw(self.ctx, _monic2(self.ctx, self._a))

    def is_monic(self) -> bool:
        return self._a.shape[0] > 0 and self.ctx._el(self._a[-1]) == self.ctx.one

    def __add__(self, other: "UniPoly") -> "UniPoly":
        return UniPoly._raw(self.ctx, _add2(self.ctx, self._a, other._a))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return UniPoly._raw(self.ctx, _add2(self.ctx, self._a, _neg2(self.ctx, other._a)))

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        return UniPoly._raw(self.ctx, _mul2(self.ctx, self._a, other._a))

    def __divmod__(self, other: "UniPoly"):
        q, r = _divmod2(self.ctx, self._a, other._a)
        return UniPoly._raw(self.ctx, q), UniPoly._raw(self.ctx, r)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def gcd(self, other: "UniPoly") -> "UniPoly":
        return UniPoly._raw(self.ctx, _gcd2(self.ctx, self._a, other._a))

    def derivative(self) -> "UniPoly":
        return UniPoly._raw(self.ctx, _deriv2(self.ctx, self._a))

    def eval(self, a: Fel) -> Fel:
        return _eval2(self.ctx, self._a, a)

    def scale(self, a: Fel) -> "UniPoly":
        return UniPoly._raw(self.ctx, _scalmul2(self.ctx, self._a, a))

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.ctx is other.ctx and self._a.shape == other._a.shape and bool(
            (self._a == other._a).all()
        )

    def __hash__(self):
        return hash((id(self.ctx), self._a.tobytes()))

    def key(self) -> tuple:
        return (self.degree(), self._a.tobytes())

    def text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self._a.shape[0] - 1, -1, -1):
            c = self.ctx._el(self._a[i])
            if not c:
                continue
            parts.append(_term_text(c, (("T", i),)))
        return " + ".join(parts)

    def __repr__(self):
        return f"UniPoly({self.ctx.name}, {self.text()})"


def _coeff_text(c: Fel) -> str:
    if c.ctx.k == 1:
        return str(c.c[0])
    return "[" + ",".join(str(v) for v in c.c) + "]"


def _term_text(c: Fel, vars_degs: tuple) -> str:
    mono = []
    for name, d in vars_degs:
        if d == 0:
            continue
        mono.append(name if d == 1 else f"{name}^{d}")
    cs = _coeff_text(c)
    if not mono:
        return cs
    if c == c.ctx.one:
        return "*".join(mono)
    return cs + "*" + "*".join(mono)


# ---------------------------------------------------------------------------


class BiPoly:
    """Sparse bivariate polynomial over a FieldCtx, keyed by (deg_x, deg_y)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: FieldCtx, terms: dict | None = None):
        self.ctx = ctx
        clean = {}
        for key, c in (terms or {}).items():
            if isinstance(c, int):
                c = ctx.scalar(c)
            if c:
                clean[(int(key[0]), int(key[1]))] = c
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(a + b for a, b in self.terms)

    def deg_x(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    def deg_y(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    def coeff(self, a: int, b: int) -> Fel:
        return self.terms.get((a, b), self.ctx.zero)

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, self.ctx.zero) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return BiPoly(self.ctx, out)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                s = out.get(key, self.ctx.zero) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return BiPoly(self.ctx, out)

    def scale(self, c: Fel) -> "BiPoly":
        if not c:
            return BiPoly(self.ctx, {})
        return BiPoly(self.ctx, {k: v * c for k, v in self.terms.items()})

    def eval(self, x: Fel, y: Fel) -> Fel:
        xs = _powers(x, self.deg_x())
        ys = _powers(y, self.deg_y())
        acc = self.ctx.zero
        for (a, b), c in self.terms.items():
            acc = acc + c * xs[a] * ys[b]
        return acc

    def eval_many(self, pairs) -> list[Fel]:
        return [self.eval(x, y) for x, y in pairs]

    def swap_xy(self) -> "BiPoly":
        return BiPoly(self.ctx, {(b, a): c for (a, b), c in self.terms.items()})

    def recode(self, big: FieldCtx) -> "BiPoly":
        if big is self.ctx:
            return self
        return BiPoly(big, {k: embed(c, big) for k, c in self.terms.items()})

    def monic_in(self) -> "BiPoly":
        """Normalize so the lead term (total degree, then x-degree) has coeff 1."""
        if not self.terms:
            return self
        key = max(self.terms, key=lambda ab: (ab[0] + ab[1], ab[0]))
        lc = self.terms[key]
        if lc == self.ctx.one:
            return self
        return self.scale(self.ctx.inv(lc))

    def infinity_chart(self, total_deg: int) -> "BiPoly":
        """Dehomogenize at y=1: term x^a y^b becomes x^a z^(D-a-b)."""
        out = {}
        for (a, b), c in self.terms.items():
            zdeg = total_deg - a - b
            if zdeg < 0:
                raise ValueError("total_deg below actual degree")
            key = (a, zdeg)
            s = out.get(key, self.ctx.zero) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return BiPoly(self.ctx, out)

    def to_array(self) -> np.ndarray:
        """Dense (deg_x+1, deg_y+1, k) int64 tensor."""
        nx, ny = self.deg_x() + 1, self.deg_y() + 1
        out = np.zeros((max(nx, 0), max(ny, 0), self.ctx.k), dtype=np.int64)
        for (a, b), c in self.terms.items():
            out[a, b] = c.c
        return out

    @classmethod
    def from_array(cls, ctx: FieldCtx, arr: np.ndarray) -> "BiPoly":
        terms = {}
        nz = np.argwhere(arr.any(axis=2))
        for a, b in nz:
            terms[(int(a), int(b))] = ctx._el(arr[a, b])
        return cls(ctx, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ctx), tuple(sorted((k, c.key()) for k, c in self.terms.items()))))

    def text(self, x: str = "x", y: str = "y") -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda ab: (ab[0] + ab[1], ab[0]), reverse=True)
        return " + ".join(_term_text(self.terms[k], ((x, k[0]), (y, k[1]))) for k in keys)

    def __repr__(self):
        return f"BiPoly({self.ctx.name}, {self.text()})"


def _powers(a: Fel, n: int) -> list[Fel]:
    out = [a.ctx.one]
    for _ in range(max(n, 0)):
        out.append(out[-1] * a)
    return out


# ---------------------------------------------------------------------------
# Curve construction


def _ft_terms(p: int, t: int) -> dict:
    """Term dict of (x+1)^t - x^t - (y+1)^t + y^t as integers mod p."""
    terms: dict = {}
    for k in range(1, t):
        c = lucas_binom(t, k, p)
        if c:
            terms[(k, 0)] = c
            terms[(0, k)] = (-c) % p
    return terms


def _div_x_minus_y(terms: dict, p: int) -> dict:
    """Exact division by (x - y); raises if the remainder is nonzero."""
    cols: dict = {}
    for (a, b), c in terms.items():
        cols.setdefault(a, {})[b] = c
    dmax = max(cols) if cols else 0
    if dmax == 0:
        raise ValueError("no x term; not divisible by x - y")
    q: dict = {}
    prev = dict(cols.get(dmax, {}))
    q[dmax - 1] = prev
    for m in range(dmax - 1, 0, -1):
        cur = {b + 1: v for b, v in prev.items()}
        for b, v in cols.get(m, {}).items():
            cur[b] = (cur.get(b, 0) + v) % p
        cur = {b: v for b, v in cur.items() if v}
        q[m - 1] = cur
        prev = cur
    rem = {b + 1: v for b, v in prev.items()}
    for b, v in cols.get(0, {}).items():
        rem[b] = (rem.get(b, 0) + v) % p
    if any(v % p for v in rem.values()):
        raise ValueError("nonzero remainder dividing by x - y")
    out = {}
    for a, ys in q.items():
        for b, v in ys.items():
            if v:
                out[(a, b)] = v
    return out


def build_ft_gt(p: int, t: int, cfg: RunConfig | None = None) -> tuple[BiPoly, BiPoly]:
    """The difference polynomial of x^t and its quotient by x - y.

    Requires gcd(p, t) = 1 and t >= 3; the quotient has total degree t - 2.
    """
    if t % p == 0:
        raise ValueError(f"t={t} divisible by p={p}")
    if t < 3:
        raise ValueError("t must be at least 3")
    ctx = build_field(p, 1, cfg)
    fterms = _ft_terms(p, t)
    gterms = _div_x_minus_y(fterms, p)
    f = BiPoly(ctx, fterms)
    g = BiPoly(ctx, gterms)
    assert g.degree() == t - 2, (p, t, g.degree())
    return f, g


def build_ft_any(p: int, t: int, cfg: RunConfig | None = None) -> BiPoly:
    """Difference polynomial alone, allowing p | t (reference-check use)."""
    if t < 2:
        raise ValueError("t must be at least 2")
    ctx = build_field(p, 1, cfg)
    return BiPoly(ctx, _ft_terms(p, t))


def divides_x_plus_y_plus_1(f: BiPoly) -> bool:
    """Whether x + y + 1 divides f, by substituting y = -x - 1."""
    ctx = f.ctx
    p = ctx.p
    acc = np.zeros(max(f.deg_x(), f.deg_y()) * 2 + 2, dtype=np.int64)
    for (a, b), c in f.terms.items():
        cv = int(c.code()) if ctx.k == 1 else None
        if cv is None:
            raise ValueError("substitution check requires a prime-field polynomial")
        sign = (p - 1) ** (b % 2) % p
        for m in range(b + 1):
            acc[a + m] = (acc[a + m] + cv * sign * lucas_binom(b, m, p)) % p
    return not acc.any()


# ---------------------------------------------------------------------------
# Taylor expansion at a point


def taylor_shift(f: BiPoly, alpha: Fel, beta: Fel) -> list[BiPoly]:
    """Homogeneous components of f(x + alpha, y + beta), index = total degree."""
    ctx = alpha.ctx
    if beta.ctx is not ctx:
        raise ValueError("alpha and beta must share a field")
    if f.ctx is not ctx:
        f = f.recode(ctx)
    p = ctx.p
    apow = _powers(alpha, f.deg_x())
    bpow = _powers(beta, f.deg_y())
    acc: dict = {}
    for (a, b), c in f.terms.items():
        # (x+alpha)^a expansion, cached binomial rows would not help: rows vary
        for u in range(a + 1):
            cu = lucas_binom(a, u, p)
            if not cu:
                continue
            left = c * apow[a - u]
            if cu != 1:
                left = left * ctx.scalar(cu)
            if not left:
                continue
            for v in range(b + 1):
                cv = lucas_binom(b, v, p)
                if not cv:
                    continue
                val = left * bpow[b - v]
                if cv != 1:
                    val = val * ctx.scalar(cv)
                if not val:
                    continue
                key = (u, v)
                s = acc.get(key, ctx.zero) + val
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
    total = f.degree()
    comps: list[dict] = [dict() for _ in range(total + 1)]
    for (u, v), c in acc.items():
        comps[u + v][(u, v)] = c
    return [BiPoly(ctx, d) for d in comps]


def multiplicity_and_tangent_cone(f: BiPoly, alpha: Fel, beta: Fel):
    """Multiplicity of f at (alpha, beta) plus the lowest homogeneous part.

    Returns (m, cone, distinct_lines).  distinct_lines reports whether the
    cone is squarefree as a binary form, i.e. splits into distinct lines
    over the algebraic closure; it is vacuously True when m <= 1.
    """
    comps = taylor_shift(f, alpha, beta)
    m = 0
    while m < len(comps) and comps[m].is_zero():
        m += 1
    if m == len(comps):
        raise ValueError("zero polynomial has no multiplicity")
    cone = comps[m]
    if m <= 1:
        return m, cone, True
    ctx = alpha.ctx
    # substitute y=1: the form is u(x) * y^(m - deg u); distinct lines needs
    # the y-line to appear at most once and u to be squarefree
    ucoeffs = [cone.coeff(e, m - e) for e in range(m + 1)]
    u = UniPoly(ctx, ucoeffs)
    du = u.degree()
    if m - du > 1:
        return m, cone, False
    uprime = u.derivative()
    if uprime.is_zero():
        return m, cone, du == 0
    return m, cone, u.gcd(uprime).degree() == 0


# ---------------------------------------------------------------------------
# Univariate factorization (squarefree + distinct-degree + Cantor-Zassenhaus)


def _pth_root_poly(ctx: FieldCtx, A: np.ndarray) -> np.ndarray:
    """Inverse of x -> x^p applied to A(T^p), valid when A' = 0."""
    rows = A[:: ctx.p]
    out = _zeros2(ctx, rows.shape[0])
    inv_exp = ctx.k - 1
    for i in range(rows.shape[0]):
        el = ctx._el(rows[i])
        out[i, :] = (ctx.frob(el, inv_exp) if inv_exp else el).c
    return _tr2(out)


def _squarefree_parts(ctx: FieldCtx, A: np.ndarray) -> list[tuple[np.ndarray, int]]:
    out: list[tuple[np.ndarray, int]] = []
    e0 = 1
    A = _monic2(ctx, _tr2(A.copy()))
    while A.shape[0] - 1 > 0:
        d = _deriv2(ctx, A)
        if d.shape[0] == 0:
            A = _pth_root_poly(ctx, A)
            e0 *= ctx.p
            continue
        C = _gcd2(ctx, A, d)
        W = _divmod2(ctx, A, C)[0]
        m = 1
        while W.shape[0] - 1 > 0:
            Y = _gcd2(ctx, W, C)
            Z = _divmod2(ctx, W, Y)[0]
            if Z.shape[0] - 1 > 0:
                out.append((Z, m * e0))
            W = Y
            C = _divmod2(ctx, C, Y)[0]
            m += 1
        A = C
    return out


def _frob_poly(ctx: FieldCtx, H: np.ndarray, F: np.ndarray) -> np.ndarray:
    """H**q mod F for q = field size, via repeated p-th powers."""
    out = H
    for _ in range(ctx.k):
        out = _powmod2(ctx, out, ctx.p, F)
    return out


def _distinct_degree(ctx: FieldCtx, A: np.ndarray) -> list[tuple[np.ndarray, int]]:
    out = []
    x_arr = _zeros2(ctx, 2)
    x_arr[1, 0] = 1
    h = x_arr.copy()
    d = 0
    while 2 * (d + 1) <= A.shape[0] - 1:
        d += 1
        h = _frob_poly(ctx, h, A)
        g = _gcd2(ctx, _add2(ctx, h, _neg2(ctx, x_arr)), A)
        if g.shape[0] - 1 > 0:
            out.append((g, d))
            A = _divmod2(ctx, A, g)[0]
            h = _divmod2(ctx, h, A)[1]
    if A.shape[0] - 1 > 0:
        out.append((A, A.shape[0] - 1))
    return out


def _equal_degree(ctx: FieldCtx, A: np.ndarray, d: int, rng: random.Random) -> list[np.ndarray]:
    n = A.shape[0] - 1
    if n == d:
        return [A]
    q = ctx.p**ctx.k
    exp = (q**d - 1) // 2
    one = _zeros2(ctx, 1)
    one[0, 0] = 1
    while True:
        R = np.array(
            [[rng.randrange(ctx.p) for _ in range(ctx.k)] for _ in range(n)], dtype=np.int64
        )
        R = _tr2(R)
        if R.shape[0] < 2:
            continue
        u = _powmod2(ctx, R, exp, A)
        u = _add2(ctx, u, _neg2(ctx, one))
        g = _gcd2(ctx, u, A)
        if 0 < g.shape[0] - 1 < n:
            other = _divmod2(ctx, A, g)[0]
            return _equal_degree(ctx, g, d, rng) + _equal_degree(ctx, other, d, rng)


def uni_factor(f: UniPoly, cfg: RunConfig | None = None) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors with multiplicities, deterministically ordered.

    The splitting stage draws from a private RNG seeded from the run
    configuration, then results are sorted, so output is reproducible.
    """
    cfg = cfg or default_config()
    ctx = f.ctx
    if f.is_zero():
        raise ValueError("cannot factor zero")
    if f.degree() == 0:
        return []
    rng = random.Random(cfg.seed)
    found: list[tuple[np.ndarray, int]] = []
    for part, mult in _squarefree_parts(ctx, f._a):
        for block, d in _distinct_degree(ctx, _monic2(ctx, part)):
            for irr in _equal_degree(ctx, block, d, rng):
                found.append((_monic2(ctx, irr), mult))
    out = [(UniPoly._raw(ctx, arr), m) for arr, m in found]
    out.sort(key=lambda fm: fm[0].key())
    total = UniPoly(ctx, [f.coeff(f.degree())])
    for fac, m in out:
        for _ in range(m):
            total = total * fac
    assert total == f, "factor product check failed"
    return out
