import pytest

from pnveri.config import default_config
from pnveri.criteria import (
    CONDITION_GROUP,
    check,
    check_a,
    check_ahat,
    check_b,
    check_B,
    check_c,
    check_d,
    check_e,
    check_f,
    check_g,
)


def test_check_a_examples():
    assert check_a(5, 4).status == "Proven"
    assert check_a(3, 8).status == "Fails"
    assert check_a(7, 8).status == "Fails"  # gcd(6,8)=2 and gcd(6,7)=1
    assert check_a(5, 8).status == "Proven"  # gcd(4,8)=4


def test_check_ahat_examples():
    r = check_ahat(3, 4, 2)
    assert r.status == "Fails"
    assert "2 factors" in r.trace
    # the gcd leg is decided before any factoring
    r = check_ahat(3, 8, 2)
    assert r.id == "ahat2"
    cfg = default_config().replace(max_bifactor_degree=40)
    r = check_ahat(5, 82, 2, cfg)
    assert r.status == "Skipped"
    assert "gcd ok" in r.trace


def test_check_b_examples():
    r = check_b(3, 14)
    assert r.status == "Fails"
    assert "4*N_t=240" in r.trace
    assert check_b(3, 9).status == "Inapplicable"
    assert check_b(5, 16).status == "Inapplicable"
    assert check_b(3, 8).status == "Proven"  # N_t = 0


def test_check_c_examples():
    assert check_c(5, 14).status == "Proven"
    assert check_c(3, 14).status == "Fails"
    r = check_c(7, 4)
    assert r.status == "Fails"
    assert "lies in F_p" in r.trace
    assert check_c(3, 4).status == "Inapplicable"  # p | t-1


def test_check_d_examples():
    r = check_d(5, 14)
    assert r.status == "Proven"
    assert "ord=4" in r.trace
    assert check_d(3, 8).status == "Fails"
    assert check_d(3, 20).status == "Fails"
    assert check_d(3, 4).status == "Inapplicable"


def test_check_e_examples():
    r = check_e(5, 8)
    assert r.status == "Fails"
    assert "ord=6" in r.trace
    assert check_e(3, 12).status == "Proven"  # 11 prime, ord_11(3)=5=(t-2)/2
    assert check_e(3, 24).status == "Proven"  # 23 prime, ord_23(3)=11
    assert check_e(5, 10).status == "Fails"  # 9 not prime
    assert check_e(3, 4).status == "Inapplicable"  # t-1 = p
    # degenerate half order: mu(t-1) collapses into F_p
    assert check_e(7, 4).status == "Inapplicable"


def test_check_f_example():
    r = check_f(5, 8)
    assert r.status == "Proven"
    assert "e=2" in r.trace and "d=4" in r.trace


def test_check_g_skips_p_divisors():
    r = check_g(3, 4)
    # E = {3, 4} and d = 3 is skipped because p | d
    assert "undefined" in r.trace or r.status in ("Proven", "Fails")


def test_check_B_examples():
    b1, b2 = check_B(3, 46)
    assert b1.status == "Proven"
    assert b2.status == "Fails"
    b1, b2 = check_B(5, 76)
    assert b1.status == "Fails"
    assert b2.status == "Proven"
    b1, b2 = check_B(5, 16)
    assert b1.status == "Fails" and b2.status == "Fails"
    b1, b2 = check_B(3, 8)  # case A exponent
    assert b1.status == "Inapplicable" and b2.status == "Inapplicable"


def test_condition_groups():
    assert CONDITION_GROUP["a"] == 1
    assert CONDITION_GROUP["g"] == 2
    assert CONDITION_GROUP["c"] == 3
    assert CONDITION_GROUP["ahat2"] == 4
    assert CONDITION_GROUP["ahat3"] == 5


def test_verdict_exceptional():
    v = check(3, 14)
    assert v.classification == "Exceptional"
    assert v.proven_by is None
    assert v.group_attained is None


def test_verdict_proven_odd():
    v = check(5, 9)
    assert v.classification == "ProvenOdd"
    assert "odd exponent" in v.notes


def test_verdict_reduction():
    v = check(3, 54)
    assert v.t_reduced == 2
    assert v.classification == "Exceptional"
    assert any("reduced from t=54" in n for n in v.notes)
    v = check(3, 27)
    assert v.classification == "Skipped"
    assert any("degenerate" in n for n in v.notes)


def test_verdict_B_rows():
    v = check(3, 46)
    assert v.case == "B"
    assert v.classification == "Proven"
    assert v.proven_by == "B.1"
    v = check(5, 16)
    assert v.classification == "Unresolved"
    v = check(5, 76)
    assert v.proven_by == "B.2"
    assert any("discrepancy" in n for n in v.notes)


def test_verdict_rejects_bad_input():
    with pytest.raises(ValueError):
        check(4, 8)
    with pytest.raises(ValueError):
        check(2, 8)
    with pytest.raises(ValueError):
        check(5, 0)


def test_group_filtering():
    cfg1 = default_config().replace(groups=(1,))
    v = check(5, 82, cfg1)
    assert v.classification == "Unresolved"
    assert all(CONDITION_GROUP[c.id] == 1 for c in v.conditions)
    v = check(5, 82, default_config().replace(groups=(1, 2, 3)))
    assert v.classification == "Unresolved"  # the t<=120 group-3 residual


def test_exhaustive_mode_order_independence():
    # the short-circuit witness may vary with plan order, the outcome may not;
    # degrees stay small so the full-plan factoring legs are cheap
    for p, t in [(3, 8), (3, 16), (5, 8), (5, 12), (7, 4), (7, 12)]:
        pipeline = check(p, t)
        exhaustive = check(p, t, exhaustive=True)
        proven_any = any(c.status == "Proven" for c in exhaustive.conditions)
        if pipeline.classification == "Proven":
            assert proven_any
        if pipeline.classification == "Unresolved":
            a_conditions = [c for c in exhaustive.conditions if not c.id.startswith("B")]
            assert not any(
                c.status == "Proven" and CONDITION_GROUP[c.id] in (1, 2, 3)
                for c in a_conditions
                if c.id != "b"
            )


def test_trace_determinism():
    for p, t in [(3, 8), (5, 76), (3, 46), (5, 14), (3, 14)]:
        a = check(p, t).to_json()
        b = check(p, t).to_json()
        assert a == b


def test_exceptional_exhaustive_keeps_classification():
    v = check(3, 14, exhaustive=True)
    assert v.classification == "Exceptional"
    assert v.proven_by is None
    assert all(c.status != "Proven" for c in v.conditions)
