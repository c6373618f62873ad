import pytest

from pnveri.config import CapExceeded, default_config
from pnveri.gf import build_field, down, embed, roots_of_unity


@pytest.mark.parametrize("p,k", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (5, 4), (7, 1), (7, 3)])
def test_field_axioms(p, k):
    ctx = build_field(p, k)
    q = p**k
    assert ctx.q == q
    elems = [ctx.from_code(c) for c in range(q)]
    zero, one = ctx.zero, ctx.one
    assert not zero and one
    for a in elems:
        assert a.code() == elems[a.code()].code()
        assert a + zero == a
        assert a * one == a
        assert a - a == zero
        assert a * zero == zero
        if a:
            inv = one / a
            assert a * inv == one
            assert inv == a ** (q - 2)
        # Frobenius is the p-power map
        assert ctx.frob(a) == a**p
        assert ctx.frob(a, k) == a
    with pytest.raises(ZeroDivisionError):
        one / zero


def test_field_commutativity_small():
    ctx = build_field(3, 2)
    elems = [ctx.from_code(c) for c in range(9)]
    for a in elems:
        for b in elems:
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) - b == a
            if b:
                assert (a * b) / b == a


def test_deterministic_moduli():
    # the tower must be reproducible across processes: no randomized moduli
    ctx9a = build_field(3, 2)
    ctx9b = build_field(3, 2)
    assert ctx9a is ctx9b
    i = ctx9a.from_code(3)  # the generator T of F_9 = F_3[T]/(T^2+1)
    assert i * i == ctx9a.scalar(-1)


def test_embed_down_roundtrip():
    small = build_field(5, 2)
    big = build_field(5, 4)
    for c in range(25):
        a = small.from_code(c)
        lifted = embed(a, big)
        assert down(lifted, small) == a
        assert big.in_subfield(lifted, 2)
    # embedding respects multiplication
    x, y = small.from_code(7), small.from_code(13)
    assert embed(x * y, big) == embed(x, big) * embed(y, big)
    assert embed(x + y, big) == embed(x, big) + embed(y, big)


def test_in_subfield():
    ctx = build_field(3, 4)
    for c in range(81):
        a = ctx.from_code(c)
        assert ctx.in_subfield(a, 1) == (a**3 == a)
        assert ctx.in_subfield(a, 2) == (a**9 == a)


@pytest.mark.parametrize(
    "p,n",
    [(3, 13), (3, 7), (5, 13), (5, 7), (7, 13), (7, 9), (3, 80), (5, 11)],
)
def test_roots_of_unity(p, n):
    ctx, g, mu = roots_of_unity(p, n)
    assert len(mu) == n
    assert len({r.key() for r in mu}) == n
    assert mu[0] == ctx.one
    for r in mu:
        assert r**n == ctx.one
    # g generates the whole group of n-th roots
    seen = {ctx.one.key()}
    cur = g
    while cur != ctx.one:
        seen.add(cur.key())
        cur = cur * g
    assert len(seen) == n


def test_roots_of_unity_extension_cap():
    cfg = default_config().replace(max_extension=4)
    with pytest.raises(CapExceeded):
        roots_of_unity(3, 121, cfg)  # ord_121(3) = 5 > 4
