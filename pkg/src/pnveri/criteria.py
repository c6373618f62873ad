"""Non-planarity certificates for even exponents.

Each checker proves, when it can, that x^t is not planar over every
extension of F_p (equivalently, that the difference curve has an
absolutely irreducible factor over F_p, or an explicit pair of distinct
points where the derivative collides).  Checkers return one of four
statuses:

* Proven        the certificate applies; t is settled
* Fails         the certificate was evaluated and does not apply
* Inapplicable  a precondition of the certificate is not met
* Skipped       evaluation hit a resource cap; nothing is claimed

Checkers are grouped by cost.  Group 1 (a, d, e, f) is pure integer
arithmetic; group 2 adds the irreducibility test over the base field
(g); group 3 adds the root-of-unity sweeps (c, and b on request);
groups 4 and 5 add irreducibility over the quadratic and cubic
extensions.  Exponents decomposing as t = p^i*ell + 1 get the two
subfield certificates (B.1, B.2) instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import (
    Decomposition,
    decompose,
    divisors,
    is_exceptional,
    is_prime,
    mult_order,
    reduce_exponent,
)
from .config import CapExceeded, RunConfig, default_config
from .gf import roots_of_unity

__all__ = [
    "ConditionResult",
    "Verdict",
    "check_a",
    "check_ahat",
    "check_b",
    "check_c",
    "check_d",
    "check_e",
    "check_f",
    "check_g",
    "check_B",
    "check",
    "CONDITION_GROUP",
    "KNOWN_DIVERGENT",
]


@dataclass(frozen=True)
class ConditionResult:
    id: str
    status: str  # Proven | Fails | Inapplicable | Skipped
    trace: str

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "trace": self.trace}


# group number of each condition; within a group the evaluation order is
# the listing order in _case_a_plan below
CONDITION_GROUP = {
    "a": 1,
    "d": 1,
    "e": 1,
    "f": 1,
    "g": 2,
    "c": 3,
    "b": 3,
    "ahat2": 4,
    "ahat3": 5,
    "B.1": 1,
    "B.2": 1,
}

# exponents our subfield certificates settle although they are usually
# recorded as open; scan output must carry a note on these rows
KNOWN_DIVERGENT = {(5, 76), (7, 22), (7, 148)}


def check_a(p: int, t: int) -> ConditionResult:
    """Divisor test on p-1: gcd(p-1, t) >= 3 or gcd(p-1, t-1) >= 2."""
    g1 = math.gcd(p - 1, t)
    g2 = math.gcd(p - 1, t - 1)
    ok = g1 >= 3 or g2 >= 2
    trace = f"gcd(p-1,t)={g1} gcd(p-1,t-1)={g2}"
    return ConditionResult("a", "Proven" if ok else "Fails", trace)


def check_ahat(p: int, t: int, m: int, cfg: RunConfig | None = None) -> ConditionResult:
    """Divisor test on p^m-1 plus irreducibility of g_t over F_{p^m}."""
    from .bifactor import irreducible_over
    from .poly import build_ft_gt

    cfg = cfg or default_config()
    cid = f"ahat{m}"
    q1 = p**m - 1
    g1 = math.gcd(q1, t)
    g2 = math.gcd(q1, t - 1)
    if g1 < 3 and g2 < 2:
        return ConditionResult(
            cid, "Fails", f"gcd(p^{m}-1,t)={g1} gcd(p^{m}-1,t-1)={g2}"
        )
    try:
        _f, g_t = build_ft_gt(p, t, cfg)
    except CapExceeded as e:
        return ConditionResult(cid, "Skipped", f"gcd ok; {e.reason}")
    rep = irreducible_over(g_t, m, cfg)
    if rep.status == "Skipped":
        return ConditionResult(cid, "Skipped", f"gcd ok; {rep.reason}")
    if rep.status == "Irreducible":
        return ConditionResult(cid, "Proven", f"gcd ok; irreducible over F_p^{m}")
    nfac = sum(mult for _h, mult in rep.factors)
    return ConditionResult(cid, "Fails", f"gcd ok; {nfac} factors over F_p^{m}")


def check_b(p: int, t: int, cfg: RunConfig | None = None) -> ConditionResult:
    """Census bound: N_t < (t-2)^2/4 singular points."""
    from .sing import omega_census

    cfg = cfg or default_config()
    if t % 2:
        return ConditionResult("b", "Inapplicable", "t odd")
    if t % p == 1:
        return ConditionResult("b", "Inapplicable", "t = 1 mod p")
    try:
        s = omega_census(p, t, cfg)
    except CapExceeded as e:
        return ConditionResult("b", "Skipped", e.reason)
    bound4 = (t - 2) * (t - 2)
    trace = f"4*N_t={4 * s.N_t} (t-2)^2={bound4}"
    return ConditionResult("b", "Proven" if s.condition_b else "Fails", trace)


def check_c(p: int, t: int, cfg: RunConfig | None = None) -> ConditionResult:
    """Root sweep: no (s-1)^(t-1) with s in mu(t-1)\\{1} lies in F_p, and no
    (s-1)^((t-1)(p-1)) equals -1."""
    cfg = cfg or default_config()
    if t <= 2:
        return ConditionResult("c", "Inapplicable", "no roots to test")
    if (t - 1) % p == 0:
        return ConditionResult("c", "Inapplicable", "p divides t-1")
    try:
        ctx, _g, mu = roots_of_unity(p, t - 1, cfg)
    except CapExceeded as e:
        return ConditionResult("c", "Skipped", e.reason)
    minus_one = ctx.scalar(-1)
    for idx, s in enumerate(mu[1:], 1):
        x = (s - ctx.one) ** (t - 1)
        if ctx.in_subfield(x, 1):
            return ConditionResult("c", "Fails", f"root #{idx}: power lies in F_p")
        if x ** (p - 1) == minus_one:
            return ConditionResult("c", "Fails", f"root #{idx}: power of order 2(p-1)")
    return ConditionResult("c", "Proven", f"all {len(mu) - 1} roots pass")


def check_d(p: int, t: int) -> ConditionResult:
    """Order test mod t-1: ord is divisible by 4 and p^(ord/2) = -1.

    Computed in two equivalent forms (the direct order form and the
    exponent search p^(2e) = -1, e <= ord); they must agree.
    """
    if (t - 1) % p == 0:
        return ConditionResult("d", "Inapplicable", "p divides t-1")
    n = t - 1
    if n == 1:
        return ConditionResult("d", "Fails", "t-1=1")
    u = mult_order(p, n)
    form_b = u % 4 == 0 and pow(p, u // 2, n) == n - 1
    form_a = any(pow(p, 2 * e, n) == n - 1 for e in range(1, u + 1))
    assert form_a == form_b, f"order forms disagree at (p={p}, t={t}): {form_a} {form_b}"
    trace = f"ord={u} both_forms={form_b}"
    return ConditionResult("d", "Proven" if form_b else "Fails", trace)


def check_e(p: int, t: int) -> ConditionResult:
    """Prime t-1 with p of half-maximal order: ord_{t-1}(p) = (t-2)/2.

    The half order must be at least 2: at (t-2)/2 = 1 the roots of unity
    collapse into F_p and the certificate's conjugacy argument (and the
    chain to the root-sweep certificate) breaks down.
    """
    n = t - 1
    if not (is_prime(n) and n >= 3):
        return ConditionResult("e", "Fails", f"t-1={n} not an odd prime")
    if n == p:
        return ConditionResult("e", "Inapplicable", "t-1 = p")
    want = (t - 2) // 2
    if want < 2:
        return ConditionResult("e", "Inapplicable", "half order below 2")
    u = mult_order(p, n)
    trace = f"ord={u} half={want}"
    return ConditionResult("e", "Proven" if u == want else "Fails", trace)


def check_f(p: int, t: int, cfg: RunConfig | None = None) -> ConditionResult:
    """Coprime-order divisor: some d|t (d>2) or d|t-1 (d>1) has ord_d(p)
    coprime to gcd(ord_{t-1}(p), ord_t(p))."""
    cfg = cfg or default_config()
    if (t - 1) % p == 0:
        return ConditionResult("f", "Inapplicable", "p divides t-1")
    e_base = math.gcd(mult_order(p, t - 1), mult_order(p, t))
    cands: list[int] = []
    for d in divisors(t, cfg.max_divisor):
        if d > 2:
            cands.append(d)
    for d in divisors(t - 1, cfg.max_divisor):
        if d > 1 and d not in cands:
            cands.append(d)
    cands.sort()
    skipped = []
    for d in cands:
        if d % p == 0:
            skipped.append(d)
            continue
        e_d = mult_order(p, d)
        if math.gcd(e_base, e_d) == 1:
            return ConditionResult("f", "Proven", f"e={e_base} d={d} e_d={e_d}")
    trace = f"e={e_base} no admissible divisor"
    if skipped:
        trace += f" (undefined for d in {skipped})"
    return ConditionResult("f", "Fails", trace)


def check_g(p: int, t: int, cfg: RunConfig | None = None) -> ConditionResult:
    """Coprime order family plus base-field irreducibility: the orders of p
    mod every d>2 dividing t or t-1 have gcd 1, and g_t is irreducible
    over F_p.  The gcd leg is evaluated first; it is the cheap one."""
    from .bifactor import irreducible_over
    from .poly import build_ft_gt

    cfg = cfg or default_config()
    E = sorted(
        {d for d in divisors(t, cfg.max_divisor) if d > 2}
        | {d for d in divisors(t - 1, cfg.max_divisor) if d > 2}
    )
    orders = []
    skipped = []
    for d in E:
        if d % p == 0:
            skipped.append(d)
            continue
        orders.append(mult_order(p, d))
    g = 0
    for e_d in orders:
        g = math.gcd(g, e_d)
    note = f" (undefined for d in {skipped})" if skipped else ""
    if g != 1:
        return ConditionResult("g", "Fails", f"gcd of orders = {g}{note}")
    try:
        _f, g_t = build_ft_gt(p, t, cfg)
    except CapExceeded as e:
        return ConditionResult("g", "Skipped", f"gcd of orders = 1{note}; {e.reason}")
    rep = irreducible_over(g_t, 1, cfg)
    if rep.status == "Skipped":
        return ConditionResult("g", "Skipped", f"gcd of orders = 1{note}; {rep.reason}")
    if rep.status == "Irreducible":
        return ConditionResult("g", "Proven", f"gcd of orders = 1{note}; irreducible")
    nfac = sum(mult for _h, mult in rep.factors)
    return ConditionResult("g", "Fails", f"gcd of orders = 1{note}; {nfac} factors")


def check_B(
    p: int, t: int, dec: Decomposition | None = None, cfg: RunConfig | None = None
) -> tuple[ConditionResult, ConditionResult]:
    """Subfield certificates for t = p^i*ell + 1 (ell >= 3, p-free)."""
    dec = dec or decompose(p, t)
    if dec.case != "B" or dec.ell < 3:
        why = "not case B" if dec.case != "B" else f"ell={dec.ell} < 3"
        return (
            ConditionResult("B.1", "Inapplicable", why),
            ConditionResult("B.2", "Inapplicable", why),
        )
    ell, i = dec.ell, dec.i
    pi = p**i
    d = math.gcd(ell, pi - 1)
    if d < ell:
        shape = (
            (p >= 5 and i >= 1 and ell > 3)
            or (p >= 5 and i >= 2 and ell >= 3)
            or (p == 3 and i >= 2 and ell >= 3)
        )
        b1 = ConditionResult(
            "B.1",
            "Proven" if shape else "Fails",
            f"gcd(ell,p^i-1)={d}<ell={ell} i={i} shape={'ok' if shape else 'no'}",
        )
        b2 = ConditionResult("B.2", "Fails", f"gcd(ell,p^i-1)={d} != ell={ell}")
    else:
        b1 = ConditionResult("B.1", "Fails", f"gcd(ell,p^i-1)=ell={ell}")
        proper = ell < pi - 1
        b2 = ConditionResult(
            "B.2",
            "Proven" if proper else "Fails",
            f"gcd(ell,p^i-1)=ell={ell}" + (f"<p^i-1={pi - 1}" if proper else "=p^i-1"),
        )
    return b1, b2


# ---------------------------------------------------------------------------
# Verdict pipeline


@dataclass
class Verdict:
    p: int
    t: int
    t_reduced: int
    case: str | None  # "A" | "B" | None before decomposition applies
    classification: str  # Proven | ProvenOdd | Exceptional | Unresolved | Skipped
    group_attained: int | None
    proven_by: str | None
    conditions: list[ConditionResult]
    notes: list[str]

    def failed_ids(self) -> list[str]:
        return [c.id for c in self.conditions if c.status == "Fails"]

    def skipped_ids(self) -> list[str]:
        return [c.id for c in self.conditions if c.status == "Skipped"]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "t": self.t,
            "t_reduced": self.t_reduced,
            "case": self.case,
            "classification": self.classification,
            "group_attained": self.group_attained,
            "proven_by": self.proven_by,
            "conditions": [c.to_json() for c in self.conditions],
            "notes": self.notes,
        }


def _case_a_plan(cfg: RunConfig) -> list[tuple[str, int]]:
    plan = [("a", 1), ("d", 1), ("e", 1), ("f", 1), ("g", 2), ("c", 3)]
    if cfg.with_b:
        plan.append(("b", 3))
    plan += [("ahat2", 4), ("ahat3", 5)]
    return plan


def _run_condition(cid: str, p: int, t: int, cfg: RunConfig) -> ConditionResult:
    if cid == "a":
        return check_a(p, t)
    if cid == "d":
        return check_d(p, t)
    if cid == "e":
        return check_e(p, t)
    if cid == "f":
        return check_f(p, t, cfg)
    if cid == "g":
        return check_g(p, t, cfg)
    if cid == "c":
        return check_c(p, t, cfg)
    if cid == "b":
        return check_b(p, t, cfg)
    if cid == "ahat2":
        return check_ahat(p, t, 2, cfg)
    if cid == "ahat3":
        return check_ahat(p, t, 3, cfg)
    raise ValueError(f"unknown condition {cid}")


def check(
    p: int,
    t: int,
    cfg: RunConfig | None = None,
    exhaustive: bool = False,
) -> Verdict:
    """Classify the exponent t over F_p and its extensions.

    Short-circuits at the first proving condition unless `exhaustive`,
    which evaluates every condition of both cases (order independence of
    the outcome is then checkable by the caller).
    """
    cfg = cfg or default_config()
    if p < 3 or not is_prime(p):
        raise ValueError(f"p={p} must be an odd prime")
    if t < 1:
        raise ValueError(f"t={t} must be positive")
    notes: list[str] = []
    t_red = reduce_exponent(p, t)
    if t_red != t:
        notes.append(f"reduced from t={t} by p-powers")
    if t_red == 1:
        return Verdict(
            p, t, t_red, None, "Skipped", None, None, [], notes + ["degenerate exponent"]
        )
    exc, label = is_exceptional(p, t_red)
    dec = decompose(p, t_red) if t_red > 1 else None
    case = dec.case if dec else None
    if t_red % 2 == 1 and not exhaustive:
        return Verdict(p, t, t_red, case, "ProvenOdd", None, None, [], notes + ["odd exponent"])
    if exc and not exhaustive:
        return Verdict(p, t, t_red, case, "Exceptional", None, None, [], notes + [label])
    enabled = set(cfg.groups)
    results: list[ConditionResult] = []
    proven_by: str | None = None
    if case == "B" and not exhaustive:
        b1, b2 = check_B(p, t_red, dec, cfg)
        results = [b1, b2]
        if b1.status == "Proven":
            proven_by = "B.1"
            results = [b1]
        elif b2.status == "Proven":
            proven_by = "B.2"
    else:
        plan = _case_a_plan(cfg)
        if exhaustive:
            plan = [("a", 1), ("d", 1), ("e", 1), ("f", 1), ("g", 2), ("c", 3), ("b", 3),
                    ("ahat2", 4), ("ahat3", 5)]
        for cid, grp in plan:
            if grp not in enabled and not exhaustive:
                continue
            res = _run_condition(cid, p, t_red, cfg)
            results.append(res)
            if res.status == "Proven" and proven_by is None:
                proven_by = cid
                if not exhaustive:
                    break
        if exhaustive:
            b1, b2 = check_B(p, t_red, dec, cfg)
            results += [b1, b2]
            if proven_by is None and b1.status == "Proven":
                proven_by = "B.1"
            if proven_by is None and b2.status == "Proven":
                proven_by = "B.2"
    if exhaustive and t_red % 2 == 1:
        classification = "ProvenOdd"
        group = None
        proven_by = None
    elif exhaustive and exc:
        classification = "Exceptional"
        group = None
        proven_by = None
    elif proven_by is not None:
        classification = "Proven"
        group = CONDITION_GROUP[proven_by]
    elif any(r.status == "Skipped" for r in results):
        classification = "Skipped"
        group = None
    else:
        classification = "Unresolved"
        group = None
    if proven_by == "B.2" and (p, t_red) in KNOWN_DIVERGENT:
        notes.append("discrepancy: B.2 settles an exponent usually recorded as open")
    if exc and exhaustive:
        notes.append(label)
    return Verdict(p, t, t_red, case, classification, group, proven_by, results, notes)
