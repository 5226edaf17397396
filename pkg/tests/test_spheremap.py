from decimal import Decimal
from fractions import Fraction

import numpy as np
import pytest

from crmaps.canonical import canonical_polynomial
from crmaps.coverage import check_theorem_window
from crmaps.groups import make_group
from crmaps.poly import Poly
from crmaps.spheremap import MembershipError, extract_sphere_map, random_sphere_points, sphere_defect


def test_scalar_square_map():
    g = make_group("scalar", 2)
    smap = extract_sphere_map(canonical_polynomial(g), g, 20)
    assert smap.target_dimension == 6
    coeffs = {c.exp: c.coeff for c in smap.components}
    assert coeffs == {
        (2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1, (1, 1, 0): 2, (1, 0, 1): 2, (0, 1, 1): 2
    }
    root2 = next(c.sqrt for c in smap.components if c.exp == (1, 1, 0))
    assert Decimal(root2) == Decimal("1.4142135623730950488")


def test_g1_map_has_sqrt3_terms():
    g = make_group("g1", 3)
    smap = extract_sphere_map(canonical_polynomial(g), g, 30)
    assert smap.target_dimension == 7
    assert {c.exp for c in smap.components if c.coeff == 3} == {(2, 1, 0), (1, 2, 0), (1, 0, 1), (0, 1, 1)}


def test_seven_map_coefficients():
    g = make_group("seven", 7)
    smap = extract_sphere_map(canonical_polynomial(g), g, 50)
    assert smap.target_dimension == 17
    assert {c.coeff for c in smap.components} == {1, 7, 14}
    assert smap.to_dict()["minimal_embedding_dimension"] == 17
    s7 = next(c.sqrt for c in smap.components if c.coeff == 7)
    assert len(s7.replace(".", "")) == 50
    assert abs(Decimal(s7) ** 2 - 7) < Decimal(10) ** -45


def test_components_in_grlex_order():
    g = make_group("scalar", 3)
    exps = [c.exp for c in extract_sphere_map(canonical_polynomial(g), g).components]
    assert exps == [e for e, _ in canonical_polynomial(g).sorted_terms()]


def test_non_member_rejected():
    with pytest.raises(MembershipError):
        extract_sphere_map(Poly.var(0), make_group("scalar", 2))


def test_random_points_are_on_sphere():
    z = random_sphere_points(50, seed=3)
    assert np.allclose(np.linalg.norm(z, axis=1), 1.0)


@pytest.mark.parametrize("kind, p", [("seven", 7), ("g1", 5), ("scalar", 4), ("g2", 5)])
def test_map_sends_sphere_to_sphere(kind, p):
    g = make_group(kind, p)
    rep = check_theorem_window(g)
    polys = [canonical_polynomial(g)] + [rep.achieved[r].poly for r in (min(rep.achieved), max(rep.achieved))]
    for P in polys:
        assert sphere_defect(extract_sphere_map(P, g, 25), 100, seed=7) < 1e-12


def test_half_split_coefficients_are_exact_fractions():
    g = make_group("seven", 7)
    w = check_theorem_window(g).achieved[57].poly
    smap = extract_sphere_map(w, g, 20)
    assert any(c.coeff.denominator > 1 for c in smap.components)
    assert all(isinstance(c.coeff, Fraction) for c in smap.components)
