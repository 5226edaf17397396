import pytest

from crmaps.canonical import canonical_polynomial
from crmaps.groups import GroupKind, invariant_rank_N, make_group
from crmaps.iteration import apply_H, family_member
from crmaps.poly import Poly, rank
from crmaps.verify import (
    check_corollary1,
    check_lemma1,
    check_lemma2,
    check_lemma3,
    check_membership,
    hyperplane_restriction,
)

from oracles import schedule_moves, support_of_moves


def test_hyperplane_restriction_examples():
    for kind, p in [("g1", 5), ("g2", 3), ("scalar", 4), ("seven", 7)]:
        assert hyperplane_restriction(canonical_polynomial(make_group(kind, p))) == Poly.const(1, 2)
    x1, x2 = Poly.var(0), Poly.var(1)
    assert hyperplane_restriction(x1 + x2) == Poly({(1, 0): 1, (0, 1): 1}, 2)
    assert hyperplane_restriction((x1 + x2 + Poly.var(2)) ** 5) == Poly.const(1, 2)


def test_membership_of_family_member():
    g = make_group("seven", 7)
    r = check_membership(family_member(g, (2, 6)), g)
    assert r.nonneg_ok and r.hyperplane_ok and r.weights_ok and r.ok


def test_membership_rejects_single_variable():
    g = make_group("scalar", 2)
    r = check_membership(Poly.var(0), g)
    assert not r.hyperplane_ok and not r.weights_ok and r.nonneg_ok
    assert r.offending_terms == [(1, 0, 0)]


def test_membership_rejects_negative_coefficient():
    g = make_group("scalar", 3)
    f = canonical_polynomial(g)
    P = f - 2 * Poly.monomial((3, 0, 0))
    assert P.coeff((3, 0, 0)) == -1
    r = check_membership(P, g)
    assert not r.nonneg_ok and not r.ok
    assert (3, 0, 0) in r.offending_terms


def test_lemma1_examples():
    rep = check_lemma1("g1", [3])
    assert [i.computed for i in rep.instances] == [13, 15, 17, 19]
    assert rep.ok
    rep = check_lemma1("g1", [7])
    assert rep.instances[0].computed == 41 and rep.ok
    rep = check_lemma1(GroupKind.G2, [3], check_members=True)
    assert [i.computed for i in rep.instances] == [13, 15, 17, 19]
    assert all(i.member for i in rep.instances)


def _corollary_value(rep, p, m0, m):
    (inst,) = [i for i in rep.instances if (i.p, i.m0, i.m) == (p, m0, m)]
    assert inst.ok
    return inst.computed


def test_corollary1_examples():
    rep = check_corollary1("g1", [3])
    assert _corollary_value(rep, 3, 0, 0) == 14
    assert _corollary_value(rep, 3, 1, 1) == 17
    rep = check_corollary1("g2", [5])
    assert _corollary_value(rep, 5, 2, 4) == 38
    assert rep.ok


def test_lemma2_examples():
    rep = check_lemma2([2, 3])
    assert _corollary_value(rep, 2, -1, 0) == 11
    assert _corollary_value(rep, 2, -1, 1) == 13
    assert _corollary_value(rep, 3, -1, 0) == (3 + 2) * (3 + 1) - 1 == 19
    assert rep.ok


def test_lemma3_examples():
    rep = check_lemma3([3, 4])
    assert _corollary_value(rep, 3, -1, 2) == 31
    assert _corollary_value(rep, 3, 0, 2) == 32
    assert _corollary_value(rep, 4, 1, 3) == 53
    assert rep.ok


@pytest.mark.parametrize("p", [2, 3, 4])
def test_lemma3_against_support_oracle(p):
    g = make_group("scalar", p)
    f = set(canonical_polynomial(g).terms)
    sched = [(p - j, j, 0) for j in range(p + 1)]
    N = invariant_rank_N(g)
    for m in range(2, p + 1):
        for m0 in range(-1, m + 1):
            s = support_of_moves(f, schedule_moves(sched, m0, m) + [((0, 0, p), "F")])
            assert len(s) == rank(apply_H(family_member(g, (m0, m)), g)) == 2 * N + m0 + m * p + N - 2 - m


def test_lemma_report_flags_wrong_rank(monkeypatch):
    import crmaps.verify as verify

    monkeypatch.setattr(verify, "rank", lambda P: len(P) + 1)
    rep = verify.check_lemma2([2])
    assert not rep.ok and rep.failures()
    assert rep.to_dict()["ok"] is False


def test_lemma1_rejects_scalar():
    with pytest.raises(ValueError):
        check_lemma1("scalar", [3])
