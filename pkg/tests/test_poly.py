import json
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crmaps.canonical import canonical_polynomial
from crmaps.groups import make_group
from crmaps.poly import (
    ArityError,
    Poly,
    compare_grlex,
    eval_at,
    grlex_key,
    rank,
    restrict_to_hyperplane,
    substitute_var,
)

x1, x2, x3 = (Poly.var(i) for i in range(3))


def test_add_cancels_to_zero():
    z = x1 + (-x1)
    assert z == Poly.zero(3)
    assert dict(z.terms) == {}


def test_add_collects():
    assert (x1 + x2) + (x2 + x3) == x1 + 2 * x2 + x3


def test_add_zero_identity():
    f = canonical_polynomial(make_group("g1", 3))
    assert f + Poly.zero(3) == f


def test_mul_difference_of_squares():
    assert (x1 + x2) * (x1 - x2) == x1**2 - x2**2


def test_square_of_linear_form():
    sq = (x1 + x2 + x3) ** 2
    assert len(sq) == 6
    assert sorted(sq.terms.values()) == [1, 1, 1, 2, 2, 2]


def test_shifted_scalar_square():
    # expand (x1+x2+x3)^2 by hand and shift by x1^2
    expected = Poly(
        {(4, 0, 0): 1, (3, 1, 0): 2, (3, 0, 1): 2, (2, 2, 0): 1, (2, 1, 1): 2, (2, 0, 2): 1}, 3
    )
    f = canonical_polynomial(make_group("scalar", 2))
    assert x1**2 * f == expected
    assert f.shift((2, 0, 0)) == expected


def test_arity_mismatch_raises():
    with pytest.raises(ArityError):
        x1 + Poly.var(0, arity=2)
    with pytest.raises(ArityError):
        x1 * Poly.var(0, arity=2)
    with pytest.raises(ArityError):
        compare_grlex((1, 0), (1, 0, 0))


def test_substitute_linear_form_on_hyperplane():
    line = Poly.const(1) - x1 - x2
    assert substitute_var(x1 + x2 + x3, 2, line) == Poly.const(1)
    assert substitute_var(x3**2, 2, line) == line**2
    assert len(substitute_var(x3**2, 2, line)) == 6


def test_substitute_canonical_g1_is_one():
    f = canonical_polynomial(make_group("g1", 3))
    assert substitute_var(f, 2, Poly.const(1) - x1 - x2) == Poly.const(1)


def test_substitute_index_out_of_range():
    with pytest.raises(IndexError):
        substitute_var(x1, 3, x2)


def test_eval_examples():
    third = Fraction(1, 3)
    assert eval_at(x1 + x2 + x3, (third, third, third)) == 1
    assert eval_at(canonical_polynomial(make_group("g1", 3)), (third, third, third)) == 1
    assert eval_at(Poly.zero(3), (5, 7, 11)) == 0


def test_rank_examples():
    assert rank(canonical_polynomial(make_group("seven", 7))) == 17
    assert rank((x1 + x2 + x3) ** 2) == 6
    assert rank(canonical_polynomial(make_group("g1", 3))) == 7
    assert rank(Poly.const(5)) == 1
    assert rank(Poly.zero(3)) == 0


@pytest.mark.parametrize(
    "a, b, expected",
    [((2, 0, 0), (1, 1, 0), 1), ((1, 0, 1), (0, 3, 0), -1), ((1, 1, 1), (1, 1, 1), 0)],
)
def test_compare_grlex(a, b, expected):
    assert compare_grlex(a, b) == expected
    assert compare_grlex(b, a) == -expected


def test_canonical_json_format():
    P = Fraction(1, 2) * x1**2 + 3 * x2 * x3 - Fraction(4, 6) * x3
    data = json.loads(P.to_json())
    assert data["arity"] == 3
    keys = [grlex_key(tuple(t["exp"])) for t in data["terms"]]
    assert keys == sorted(keys, reverse=True) and len(set(keys)) == len(keys)
    for t in data["terms"]:
        num, den = int(t["num"]), int(t["den"])
        assert den > 0 and gcd(num, den) == 1
    assert data["terms"][-1] == {"exp": [0, 0, 1], "num": "-2", "den": "3"}


def test_from_dict_rejects_bad_denominator():
    with pytest.raises(ValueError):
        Poly.from_dict({"arity": 3, "terms": [{"exp": [1, 0, 0], "num": "1", "den": "0"}]})


# -- properties --------------------------------------------------------------

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, coeffs, max_size=6).map(lambda d: Poly(d, 3))
rationals = st.fractions(min_value=-3, max_value=3, max_denominator=7)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.zero(3)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_serialization_round_trip(a):
    b = Poly.from_json(a.to_json())
    assert b == a
    assert b.to_json() == a.to_json()


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_rank_of_product_bounded(a, b):
    assert rank(a * b) <= rank(a) * rank(b)


@settings(max_examples=60, deadline=None)
@given(polys, rationals, rationals)
def test_substitution_commutes_with_evaluation(P, a, b):
    line = Poly.const(1) - x1 - x2
    lhs = eval_at(substitute_var(P, 2, line), (a, b, 0))
    assert lhs == eval_at(P, (a, b, 1 - a - b))
    restricted = restrict_to_hyperplane(P)
    assert eval_at(restricted, (a, b)) == eval_at(P, (a, b, 1 - a - b))


@settings(max_examples=40, deadline=None)
@given(polys)
def test_fast_restriction_matches_generic_substitution(P):
    generic = substitute_var(P, 2, Poly({(0, 0): 1, (1, 0): -1, (0, 1): -1}, 2))
    assert restrict_to_hyperplane(P) == generic


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_evaluation_is_a_ring_homomorphism(a, b):
    pt = (Fraction(1, 2), Fraction(-2, 3), Fraction(5, 7))
    assert eval_at(a * b, pt) == eval_at(a, pt) * eval_at(b, pt)
    assert eval_at(a + b, pt) == eval_at(a, pt) + eval_at(b, pt)
