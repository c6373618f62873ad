"""Dense univariate polynomial arithmetic over F_p on numpy int64 arrays.

Internal kernel. Coefficient vectors are little-endian (index = degree) and
trimmed, so the zero polynomial is the empty array. Entries are reduced
mod p on the way in and stay reduced.
"""

from __future__ import annotations

import numpy as np

_EMPTY = np.zeros(0, dtype=np.int64)

# product length above which multiplication goes through the FFT
_FFT_CUTOFF = 4096


def zero() -> np.ndarray:
    return _EMPTY


def trim(a: np.ndarray) -> np.ndarray:
    nz = np.nonzero(a)[0]
    if len(nz) == 0:
        return _EMPTY
    return a[: nz[-1] + 1]


def poly(coeffs, p: int) -> np.ndarray:
    return trim(np.asarray(coeffs, dtype=np.int64) % p)


def deg(a: np.ndarray) -> int:
    # degree of the zero polynomial reported as -1
    return len(a) - 1


def add(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    c = a.copy()
    c[: len(b)] = (c[: len(b)] + b) % p
    return trim(c)


def sub(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = max(len(a), len(b))
    c = np.zeros(n, dtype=np.int64)
    c[: len(a)] = a
    c[: len(b)] = (c[: len(b)] - b) % p
    return trim(c)


def neg(a: np.ndarray, p: int) -> np.ndarray:
    return (-a) % p


def scale(a: np.ndarray, c: int, p: int) -> np.ndarray:
    c %= p
    if c == 0 or len(a) == 0:
        return _EMPTY
    return a * c % p


def _fft_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a) + len(b) - 1
    size = 1 << (n - 1).bit_length()
    fa = np.fft.rfft(a.astype(np.float64), size)
    fb = np.fft.rfft(b.astype(np.float64), size)
    c = np.fft.irfft(fa * fb, size)[:n]
    return np.rint(c).astype(np.int64)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return _EMPTY
    n = len(a) + len(b) - 1
    # exactness bound for both int64 convolution and float FFT recovery
    bound = min(len(a), len(b)) * (p - 1) * (p - 1)
    if n > _FFT_CUTOFF and bound < (1 << 52):
        c = _fft_mul(a, b)
    else:
        assert bound < (1 << 62)
        c = np.convolve(a, b)
    return trim(c % p)


def divmod_(a: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    a, b = trim(a), trim(b)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return _EMPTY, a.copy()
    r = a.copy()
    db = len(b) - 1
    inv = pow(int(b[-1]), p - 2, p)
    q = np.zeros(len(a) - db, dtype=np.int64)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = c * inv % p
            q[i - db] = c
            r[i - db: i + 1] = (r[i - db: i + 1] - c * b) % p
    return trim(q), trim(r[:db] if db else r[:0])


def mod_(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return divmod_(a, b, p)[1]


def make_monic(a: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or a[-1] == 1:
        return a
    return scale(a, pow(int(a[-1]), p - 2, p), p)


def gcd(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    while len(b):
        a, b = b, mod_(a, b, p)
    return make_monic(a, p)


def xgcd(a: np.ndarray, b: np.ndarray, p: int):
    """Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = trim(a), trim(b)
    u0, u1 = poly([1], p), _EMPTY
    v0, v1 = _EMPTY, poly([1], p)
    while len(r1):
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, sub(u0, mul(q, u1, p), p)
        v0, v1 = v1, sub(v0, mul(q, v1, p), p)
    if len(r0) and r0[-1] != 1:
        c = pow(int(r0[-1]), p - 2, p)
        r0, u0, v0 = scale(r0, c, p), scale(u0, c, p), scale(v0, c, p)
    return r0, u0, v0


def invert_mod(a: np.ndarray, f: np.ndarray, p: int) -> np.ndarray:
    g, u, _ = xgcd(a, f, p)
    if deg(g) != 0:
        raise ZeroDivisionError("element not invertible modulo f")
    return mod_(u, f, p)


def deriv(a: np.ndarray, p: int) -> np.ndarray:
    if len(a) <= 1:
        return _EMPTY
    return trim(np.arange(1, len(a), dtype=np.int64) * a[1:] % p)


def eval_at(a: np.ndarray, x: int, p: int) -> int:
    acc = 0
    for c in a[::-1]:
        acc = (acc * x + int(c)) % p
    return acc


def pow_mod(a: np.ndarray, e: int, f: np.ndarray, p: int) -> np.ndarray:
    """a^e mod f by square-and-multiply; e may be a big Python int."""
    rc = ReduceCtx(f, p)
    return rc.pow(mod_(a, f, p), e)


class ReduceCtx:
    """Fast reduction modulo a fixed monic f of degree k >= 1.

    Precomputes the images of T^k .. T^(2k-2) as a (k-1, k) matrix so that
    reducing a product of two residues is one matrix product.
    """

    def __init__(self, f: np.ndarray, p: int):
        assert len(f) >= 2 and f[-1] == 1
        self.f = f
        self.p = p
        self.k = len(f) - 1
        k = self.k
        R = np.zeros((max(k - 1, 0), k), dtype=np.int64)
        if k > 1:
            cur = (-f[:k]) % p
            R[0] = cur
            for j in range(1, k - 1):
                top = cur[k - 1]
                nxt = np.empty(k, dtype=np.int64)
                nxt[0] = 0
                nxt[1:] = cur[: k - 1]
                if top:
                    nxt = (nxt + top * R[0]) % p
                R[j] = nxt
                cur = nxt
        self.R = R

    def reduce(self, c: np.ndarray) -> np.ndarray:
        k = self.k
        if len(c) <= k:
            return c
        assert len(c) <= 2 * k - 1
        head = c[:k].copy()
        tail = c[k:]
        head = (head + tail @ self.R[: len(tail)]) % self.p
        return trim(head)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(mul(a, b, self.p))

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        if e < 0:
            a = invert_mod(a, self.f, self.p)
            e = -e
        result = poly([1], self.p)
        if e == 0:
            return result
        base = a
        for bit in bin(e)[2:]:
            result = self.mul(result, result)
            if bit == "1":
                result = self.mul(result, base)
        return result


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: np.ndarray, p: int) -> bool:
    """Rabin test with early distinct-degree rejection; f monic, deg >= 1."""
    k = deg(f)
    assert k >= 1 and f[-1] == 1
    if k == 1:
        return True
    if f[0] == 0:
        return False
    for x in range(p):
        if eval_at(f, x, p) == 0:
            return False
    d1 = deriv(f, p)
    if len(d1) == 0 or deg(gcd(f, d1, p)) > 0:
        return False
    rc = ReduceCtx(f, p)
    t_poly = poly([0, 1], p)
    # checkpoints where gcd(T^(p^d) - T, f) must be trivial
    musts = {k // q for q in _prime_divisors(k)}
    early = set(range(2, min(6, k - 1) + 1))
    h = rc.pow(t_poly, p)
    d = 1
    while d < k:
        if d in early or d in musts:
            g = gcd(sub(h, t_poly, p), f, p)
            if deg(g) > 0:
                return False
        h = rc.pow(h, p)
        d += 1
    return len(h) == 2 and h[0] == 0 and h[1] == 1


def solve_lin(A: np.ndarray, b: np.ndarray, p: int):
    """Solve A @ x = b over F_p; returns one solution or None. A is (n, m)."""
    A = A.copy() % p
    b = b.copy() % p
    n, m = A.shape
    piv_cols = []
    row = 0
    for col in range(m):
        sel = None
        for r in range(row, n):
            if A[r, col]:
                sel = r
                break
        if sel is None:
            continue
        if sel != row:
            A[[row, sel]] = A[[sel, row]]
            b[[row, sel]] = b[[sel, row]]
        inv = pow(int(A[row, col]), p - 2, p)
        A[row] = A[row] * inv % p
        b[row] = b[row] * inv % p
        for r in range(n):
            if r != row and A[r, col]:
                c = A[r, col]
                A[r] = (A[r] - c * A[row]) % p
                b[r] = (b[r] - c * b[row]) % p
        piv_cols.append(col)
        row += 1
        if row == n:
            break
    for r in range(row, n):
        if b[r] % p:
            return None
    x = np.zeros(m, dtype=np.int64)
    for r, col in enumerate(piv_cols):
        x[col] = b[r]
    return x
