"""Canonical invariant polynomials, built two independent ways.

``group_product_polynomial`` expands the full cyclotomic product and is the
oracle.  ``canonical_polynomial`` uses the closed forms (bivariate helper
composed with grouped variables, multinomial power, or the published
17-term polynomial) and is what the rest of the package consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .cyclotomic import one_minus_product
from .groups import GroupKind, GroupSpec, invariant_rank_N
from .poly import Exponent, Poly, compose

# The order-7 group's canonical polynomial, as a term table (x1, x2, x3 exponents).
SEVEN_TERMS: dict[Exponent, int] = {
    (7, 0, 0): 1,
    (5, 1, 0): 7,
    (3, 2, 0): 14,
    (1, 3, 0): 7,
    (3, 0, 1): 7,
    (1, 1, 1): 14,
    (0, 7, 0): 1,
    (2, 4, 1): 7,
    (0, 5, 1): 7,
    (4, 1, 2): 7,
    (2, 2, 2): 7,
    (0, 3, 2): 14,
    (2, 0, 3): 14,
    (0, 1, 3): 7,
    (1, 2, 4): 7,
    (1, 0, 5): 7,
    (0, 0, 7): 1,
}


@lru_cache(maxsize=None)
def group_product_polynomial(g: GroupSpec, root_power: int = 1) -> Poly:
    """1 - prod over the group of (1 - <gz, z>), in the variables x_j = |z_j|^2.

    ``root_power`` replaces the generator's root of unity w by w^t; the result
    must not depend on it when gcd(t, p) = 1.
    """
    weights = [(root_power * w) % g.p for w in g.weights]
    return one_minus_product(weights, g.p)


@lru_cache(maxsize=None)
def f_p2(p: int) -> Poly:
    """Invariant polynomial of <diag(w, w^2)> in U(2), by cyclotomic expansion."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"f_p2 needs an odd p >= 3, got {p}")
    return one_minus_product([1, 2], p)


@lru_cache(maxsize=None)
def canonical_polynomial(g: GroupSpec) -> Poly:
    x1, x2, x3 = (Poly.var(i) for i in range(3))
    if g.kind is GroupKind.G1:
        return compose(f_p2(g.p), [x1 + x2, x3])
    if g.kind is GroupKind.G2:
        return compose(f_p2(g.p), [x1, x2 + x3])
    if g.kind is GroupKind.SCALAR:
        return (x1 + x2 + x3) ** g.p
    return Poly(SEVEN_TERMS, 3)


@dataclass
class CanonicalReport:
    group: GroupSpec
    ok: bool
    rank: int
    expected_rank: int
    positive: bool
    mismatches: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "group": self.group.kind.value,
            "p": self.group.p,
            "ok": self.ok,
            "rank": self.rank,
            "expected_rank": self.expected_rank,
            "all_coefficients_positive": self.positive,
            "mismatches": self.mismatches,
        }


def verify_canonical(g: GroupSpec) -> CanonicalReport:
    """Cross-check the product expansion against the closed form, term by term."""
    product = group_product_polynomial(g)
    closed = canonical_polynomial(g)
    mismatches = []
    for e in sorted(product.support() | closed.support(), reverse=True):
        a, b = product.coeff(e), closed.coeff(e)
        if a != b:
            mismatches.append({"exp": list(e), "product": str(a), "closed": str(b)})
    positive = all(c > 0 for c in closed.terms.values())
    N = invariant_rank_N(g)
    ok = not mismatches and positive and len(closed) == N
    return CanonicalReport(g, ok, len(closed), N, positive, mismatches)
