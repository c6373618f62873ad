"""Integer-only number theory for the condition engine.

Exponent decomposition t = p^i * ell + r (with ell = p*s + j), reduction of
exponents by powers of p, multiplicative orders, divisor enumeration, and
detection of the known planar exponent families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import CapExceeded


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def prime_divisors(n: int) -> list[int]:
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


def divisors(n: int, cap: int = 10 ** 9) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise CapExceeded(f"divisor enumeration cap: n={n} > {cap}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mult_order(p: int, n: int) -> int:
    """Smallest e >= 1 with p^e = 1 mod n."""
    if n < 2:
        raise ValueError("order is defined for n >= 2")
    if math.gcd(p, n) != 1:
        raise ValueError(f"gcd({p},{n}) != 1, order undefined")
    e = 1
    acc = p % n
    while acc != 1:
        acc = acc * p % n
        e += 1
    return e


def lucas_binom(n: int, k: int, p: int) -> int:
    """Binomial coefficient C(n, k) mod p via base-p digits."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        n, nd = divmod(n, p)
        k, kd = divmod(k, p)
        if kd > nd:
            return 0
        out = out * (math.comb(nd, kd) % p) % p
    return out


def reduce_exponent(p: int, t: int) -> int:
    """Strip all factors of p from t (planarity of x^t only depends on this)."""
    if t < 2:
        raise ValueError("t must be >= 2")
    while t % p == 0:
        t //= p
    return t


@dataclass(frozen=True)
class Decomposition:
    p: int
    t: int
    r: int      # t mod p, 0 < r < p
    i: int      # max power of p dividing t - r (0 when t - r == 0)
    ell: int    # (t - r) / p^i, coprime to p (0 when t - r == 0)
    j: int      # ell mod p (0 when ell == 0)
    s: int      # (ell - j) / p
    t_even: bool
    case: str   # "A" when r != 1, "B" when r == 1

    def reconstruct(self) -> int:
        return self.p ** self.i * self.ell + self.r


def decompose(p: int, t: int) -> Decomposition:
    if t < 2:
        raise ValueError("t must be >= 2")
    if t % p == 0:
        raise ValueError(f"p={p} divides t={t}; reduce the exponent first")
    r = t % p
    rest = t - r
    if rest == 0:
        # t < p: no p-power part at all
        i, ell, j, s = 0, 0, 0, 0
    else:
        i = 0
        while rest % p == 0:
            rest //= p
            i += 1
        ell = rest
        j = ell % p
        s = (ell - j) // p
    return Decomposition(p=p, t=t, r=r, i=i, ell=ell, j=j, s=s,
                         t_even=(t % 2 == 0), case="A" if r != 1 else "B")


def is_exceptional(p: int, t: int) -> tuple[bool, str | None]:
    """Known planar exponent families: t=2, t=p^i+1, and (3^i+1)/2 for p=3.

    Returns (flag, witness) where the witness names the family and the i.
    """
    if math.gcd(p, t) != 1:
        raise ValueError("reduce the exponent first")
    if t == 2:
        return True, "classical t=2"
    q = p
    i = 1
    while q + 1 <= t:
        if q + 1 == t:
            return True, f"p^i+1 with i={i}"
        q *= p
        i += 1
    if p == 3:
        q = 3
        i = 1
        while (q + 1) // 2 <= t:
            if q + 1 == 2 * t:
                return True, f"(3^i+1)/2 with i={i}"
            q *= 3
            i += 1
    return False, None
