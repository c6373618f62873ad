"""Finite fields F_{p^k}: contexts, elements, Frobenius, roots of unity.

A FieldCtx owns a deterministically chosen monic irreducible modulus, so
element encodings are stable across runs and machines. Contexts live in a
process-wide registry guarded by a lock; elements are immutable values.
"""

from __future__ import annotations

import threading

import numpy as np

from . import _fpx, arith
from .config import CapExceeded, RunConfig

_registry: dict = {}
_registry_lock = threading.Lock()


class Fel:
    """An element of a FieldCtx: a length-k coefficient tuple over F_p."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: "FieldCtx", c: tuple):
        self.ctx = ctx
        self.c = c

    def _coerce(self, other):
        if isinstance(other, Fel):
            if other.ctx is not self.ctx:
                raise ValueError("operands from different field contexts")
            return other
        if isinstance(other, int):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.ctx.add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.ctx.sub(self, o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.ctx.sub(o, self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.ctx.mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.ctx.mul(self, self.ctx.inv(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.ctx.mul(o, self.ctx.inv(self))

    def __neg__(self):
        return Fel(self.ctx, tuple((-v) % self.ctx.p for v in self.c))

    def __pow__(self, e: int):
        return self.ctx.pow(self, e)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        return isinstance(other, Fel) and other.ctx is self.ctx and other.c == self.c

    def __hash__(self):
        return hash((id(self.ctx), self.c))

    def __bool__(self):
        return any(self.c)

    def key(self) -> bytes:
        """Canonical byte encoding (little-endian coefficients)."""
        return bytes(self.c)

    def code(self) -> int:
        v = 0
        for d in reversed(self.c):
            v = v * self.ctx.p + d
        return v

    def to_json(self) -> list:
        return list(self.c)

    def __repr__(self):
        return f"Fel({self.ctx.name}, {list(self.c)})"


class FieldCtx:
    """Arithmetic context for F_{p^k} with modulus chosen by build_field."""

    def __init__(self, p: int, k: int, modulus: np.ndarray):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus
        self.name = f"F_{p}" if k == 1 else f"F_{p}^{k}"
        self._rc = _fpx.ReduceCtx(modulus, p) if k >= 2 else None
        self._frob: dict[int, np.ndarray] = {}
        self._frob_lock = threading.Lock()
        self.zero = Fel(self, (0,) * k)
        self.one = Fel(self, (1,) + (0,) * (k - 1))

    # element construction

    def from_coeffs(self, coeffs) -> Fel:
        c = [int(v) % self.p for v in coeffs]
        if len(c) > self.k:
            raise ValueError("coefficient vector longer than extension degree")
        c += [0] * (self.k - len(c))
        return Fel(self, tuple(c))

    def scalar(self, v: int) -> Fel:
        return Fel(self, (v % self.p,) + (0,) * (self.k - 1))

    def from_code(self, v: int) -> Fel:
        digits = []
        for _ in range(self.k):
            v, d = divmod(v, self.p)
            digits.append(d)
        if v:
            raise ValueError("code out of range")
        return Fel(self, tuple(digits))

    def _arr(self, a: Fel) -> np.ndarray:
        return np.asarray(a.c, dtype=np.int64)

    def _el(self, arr: np.ndarray) -> Fel:
        c = tuple(int(v) for v in arr) + (0,) * (self.k - len(arr))
        return Fel(self, c)

    # arithmetic

    def add(self, a: Fel, b: Fel) -> Fel:
        p = self.p
        return Fel(self, tuple((x + y) % p for x, y in zip(a.c, b.c)))

    def sub(self, a: Fel, b: Fel) -> Fel:
        p = self.p
        return Fel(self, tuple((x - y) % p for x, y in zip(a.c, b.c)))

    def mul(self, a: Fel, b: Fel) -> Fel:
        if self.k == 1:
            return Fel(self, (a.c[0] * b.c[0] % self.p,))
        prod = self._rc.mul(self._arr(a), self._arr(b))
        return self._el(prod)

    def inv(self, a: Fel) -> Fel:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return Fel(self, (pow(a.c[0], self.p - 2, self.p),))
        return self._el(_fpx.invert_mod(self._arr(a), self.modulus, self.p))

    def pow(self, a: Fel, e: int) -> Fel:
        if e < 0:
            a = self.inv(a)
            e = -e
        if e == 0:
            return self.one
        if self.k == 1:
            return Fel(self, (pow(a.c[0], e, self.p),))
        return self._el(self._rc.pow(self._arr(a), e))

    # Frobenius machinery

    def _frob_matrix(self, m: int) -> np.ndarray:
        with self._frob_lock:
            mat = self._frob.get(m)
            if mat is not None:
                return mat
            if 1 not in self._frob:
                w = self._rc.pow(np.array([0, 1], dtype=np.int64), self.p)
                phi = np.zeros((self.k, self.k), dtype=np.int64)
                row = np.zeros(self.k, dtype=np.int64)
                row[0] = 1
                phi[0] = row
                cur = np.array([1], dtype=np.int64)
                for jj in range(1, self.k):
                    cur = self._rc.mul(cur, w)
                    phi[jj, : len(cur)] = cur
                self._frob[1] = phi
            mat = self._frob[1]
            if m > 1:
                acc = np.eye(self.k, dtype=np.int64)
                base = mat
                e = m
                while e:
                    if e & 1:
                        acc = acc @ base % self.p
                    base = base @ base % self.p
                    e >>= 1
                mat = acc
                self._frob[m] = mat
            return mat

    def frob(self, a: Fel, m: int = 1) -> Fel:
        """a -> a^(p^m)."""
        if self.k == 1 or m % self.k == 0:
            return a
        mat = self._frob_matrix(m % self.k)
        return self._el(self._arr(a) @ mat % self.p)

    def mul_matrix(self, a: Fel) -> np.ndarray:
        """Matrix M with rows a*T^j, so that x*a == x.c @ M for any element x."""
        if self.k == 1:
            return np.array([[a.c[0]]], dtype=np.int64)
        M = np.zeros((self.k, self.k), dtype=np.int64)
        cur = self._arr(a)
        M[0, : len(cur)] = cur
        for j in range(1, self.k):
            shifted = np.concatenate(([0], cur))
            cur = self._rc.reduce(shifted)
            M[j, : len(cur)] = cur
        return M

    def in_subfield(self, a: Fel, m: int) -> bool:
        if self.k % m != 0:
            raise ValueError(f"{m} does not divide extension degree {self.k}")
        if m == self.k:
            return True
        return self.frob(a, m) == a

    def elements(self):
        for v in range(self.q):
            yield self.from_code(v)

    def __repr__(self):
        return f"FieldCtx({self.name})"


def build_field(p: int, k: int, cfg: RunConfig | None = None) -> FieldCtx:
    """The field F_{p^k} with the smallest monic irreducible modulus.

    Candidates of degree k are ordered by ascending code sum(c_i * p^i) of
    their non-leading coefficients; the constant term must be nonzero for
    k >= 2. Results are cached process-wide.
    """
    if not arith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    cap = cfg.max_field_degree if cfg else 1200
    if k > cap:
        raise CapExceeded(f"field degree cap: k={k} > {cap}")
    with _registry_lock:
        ctx = _registry.get((p, k))
        if ctx is not None:
            return ctx
    if k == 1:
        modulus = _fpx.poly([0, 1], p)
    else:
        modulus = None
        for v in range(1, p ** k):
            if v % p == 0:
                continue
            digits = []
            vv = v
            for _ in range(k):
                vv, d = divmod(vv, p)
                digits.append(d)
            digits.append(1)
            cand = np.array(digits, dtype=np.int64)
            if _fpx.is_irreducible(cand, p):
                modulus = cand
                break
        assert modulus is not None
    ctx = FieldCtx(p, k, modulus)
    with _registry_lock:
        return _registry.setdefault((p, k), ctx)


def roots_of_unity(p: int, n: int, cfg: RunConfig | None = None):
    """(ctx, g, mu): the field F_{p^{e_n}}, an element g of exact order n,
    and the full list mu = [1, g, ..., g^(n-1)]."""
    if n == 1:
        ctx = build_field(p, 1, cfg)
        return ctx, ctx.one, [ctx.one]
    e = arith.mult_order(p, n)
    cap = cfg.max_extension if cfg else 300
    if e > cap:
        raise CapExceeded(f"extension cap: e_{n}={e} > {cap} for p={p}")
    ctx = build_field(p, e, cfg)
    total = ctx.q - 1
    assert total % n == 0
    exp = total // n
    primes = arith.prime_divisors(n)
    g = None
    for v in range(2, ctx.q):
        cand = ctx.from_code(v)
        gc = ctx.pow(cand, exp)
        if gc == ctx.one:
            continue
        if all(ctx.pow(gc, n // q) != ctx.one for q in primes):
            g = gc
            break
    assert g is not None, "no order-n element found"
    mu = [ctx.one]
    cur = g
    for _ in range(n - 1):
        mu.append(cur)
        cur = ctx.mul(cur, g)
    assert cur == ctx.one
    return ctx, g, mu


def _embedding_matrix(small: FieldCtx, big: FieldCtx) -> np.ndarray:
    """Rows r^0..r^(j-1) where r is the smallest root of small.modulus in big."""
    from . import poly as _poly

    j, k = small.k, big.k
    E = np.zeros((j, k), dtype=np.int64)
    E[0, 0] = 1
    if j == 1:
        return E
    lifted = _poly.UniPoly(big, [big.scalar(int(c)) for c in small.modulus])
    roots = []
    for fac, _ in _poly.uni_factor(lifted):
        if fac.degree() == 1:
            roots.append(-fac.coeff(0) / fac.coeff(1))
    assert len(roots) == j, "modulus does not split in the big field"
    root = min(roots, key=lambda a: a.code())
    cur = big.one
    for row in range(1, j):
        cur = big.mul(cur, root)
        E[row] = cur.c
    return E


def _get_embedding(small: FieldCtx, big: FieldCtx) -> np.ndarray:
    if small.p != big.p:
        raise ValueError("different characteristics")
    if big.k % small.k != 0:
        raise ValueError(f"F_{small.p}^{small.k} does not embed in F_{big.p}^{big.k}")
    key = ("embed", small.p, small.k, big.k)
    with _registry_lock:
        E = _registry.get(key)
    if E is None:
        E = _embedding_matrix(small, big)
        with _registry_lock:
            E = _registry.setdefault(key, E)
    return E


def embed(a: Fel, big: FieldCtx) -> Fel:
    """Map a into the bigger field along the canonical embedding."""
    small = a.ctx
    if small is big:
        return a
    E = _get_embedding(small, big)
    vec = np.asarray(a.c, dtype=np.int64) @ E % big.p
    return Fel(big, tuple(int(v) for v in vec))


def down(a: Fel, small: FieldCtx) -> Fel | None:
    """Preimage of a under embed(., a.ctx), or None if a is not in the image."""
    big = a.ctx
    if small is big:
        return a
    E = _get_embedding(small, big)
    x = _fpx.solve_lin(E.T.copy(), np.asarray(a.c, dtype=np.int64), big.p)
    if x is None or not np.array_equal(x @ E % big.p, np.asarray(a.c) % big.p):
        return None
    return Fel(small, tuple(int(v) for v in x))
