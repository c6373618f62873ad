import pytest

from pnveri.arith import decompose
from pnveri.config import CapExceeded, default_config
from pnveri.poly import build_ft_gt
from pnveri.sing import bezout_audit, caseB_enum, omega_census, verify_multiplicities


def test_maximal_census_3_14():
    s = omega_census(3, 14)
    assert s.N_t == 60 == (14 - 2) * (14 - 4) // 2
    assert sorted(s.class_sizes.values()) == [6, 6]
    assert s.points_complete
    assert len(s.points) == 60
    assert s.bound_ok
    assert s.condition_b is False  # 4*60 >= 12^2
    for pt in s.points:
        assert pt.kind == "affine"
        assert pt.ptype == "A-nodal"
        assert not pt.on_diagonal()
        # off the diagonal f and g agree to a unit, so multiplicities match
        assert (pt.m_f, pt.m_g) == (2, 2)


def test_empty_census_3_8():
    s = omega_census(3, 8)
    assert s.N_t == 0
    assert s.condition_b is True
    assert s.points == []


@pytest.mark.parametrize("p,t", [(3, 8), (3, 14), (3, 20), (5, 8), (5, 14), (7, 12)])
def test_census_bound(p, t):
    s = omega_census(p, t)
    assert s.N_t <= (t - 2) * (t - 4) // 2
    assert sum(s.class_sizes.values()) == t - 2


def test_omega_census_rejects_case_b():
    with pytest.raises(ValueError):
        omega_census(5, 16)
    with pytest.raises(ValueError):
        omega_census(3, 7)


def test_caseB_3_10():
    # ell = 3, i = 1: the affine candidates are both smooth; the only
    # singular point sits at infinity in the diagonal direction
    s = caseB_enum(3, 10)
    assert s.case == "B"
    assert s.N_t == 0
    assert s.N1 == 0
    assert s.N2 == 1
    assert len(s.points) == 1
    pt = s.points[0]
    assert pt.kind == "infinity"
    assert pt.ptype == "III.A"
    assert pt.on_diagonal()
    assert (pt.m_f, pt.m_g) == (9, 8)


def test_caseB_7_22():
    s = caseB_enum(7, 22)
    affine = [pt for pt in s.points if pt.kind == "affine"]
    inf = [pt for pt in s.points if pt.kind == "infinity"]
    assert s.N_t == 2 and len(affine) == 2
    for pt in affine:
        assert pt.ptype == "I" and pt.on_diagonal()
        assert (pt.m_f, pt.m_g) == (8, 7)
    assert s.N2 == 3 and len(inf) == 3
    for pt in inf:
        assert pt.ptype == "III.A"
        assert pt.m_f == 7
        assert pt.m_g == 7 - int(pt.on_diagonal())
    assert sum(1 for pt in inf if pt.on_diagonal()) == 1


def test_caseB_type1_counts():
    for p, t in [(3, 16), (3, 22), (5, 16), (5, 36), (7, 36)]:
        dec = decompose(p, t)
        s = caseB_enum(p, t, dec)
        ell = dec.ell
        assert s.N_t <= (ell - 1) ** 2
        assert s.N2 <= ell
        d = __import__("math").gcd(ell, p**dec.i - 1)
        if d < ell:
            assert 9 * s.N1 <= (ell - 3) ** 2


def test_verify_multiplicities_taylor():
    for p, t in [(3, 14), (7, 22), (3, 10)]:
        dec = decompose(p, t)
        s = omega_census(p, t) if dec.case == "A" else caseB_enum(p, t, dec)
        f, g = build_ft_gt(p, t)
        out = verify_multiplicities(s, f, g_t=g)
        assert out["ok"]
        assert out["checked"] == len(s.points)


def test_bezout_audit_two_lines():
    rep = bezout_audit(3, 4)
    assert rep.ok
    assert rep.n_components == 2
    assert len(rep.pairs) == 1
    pair = rep.pairs[0]
    assert pair["affine_shared"] == 0
    assert pair["shared_infinity_directions"] == 1
    assert pair["infinity_deficit"] == 1


def test_bezout_audit_four_lines():
    rep = bezout_audit(5, 6)
    assert rep.ok
    assert rep.n_components == 4
    assert len(rep.pairs) == 6
    for pair in rep.pairs:
        assert pair["affine_shared"] == 0
        assert pair["shared_infinity_directions"] == 1


def test_bezout_audit_irreducible():
    for p, t in [(3, 8), (5, 8), (7, 6)]:
        rep = bezout_audit(p, t)
        assert rep.ok
        assert rep.n_components == 1
        assert rep.pairs == []


def test_bezout_audit_caps():
    with pytest.raises(CapExceeded):
        bezout_audit(3, 14, tiny_cap=8)
