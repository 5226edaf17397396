"""Read off the monomial sphere map encoded by a member polynomial.

A polynomial sum_a c_a x^a with c_a >= 0 that is identically 1 on
x1 + x2 + x3 = 1 gives the map z -> (sqrt(c_a) z^a)_a, which sends the unit
sphere of C^3 into the unit sphere of C^rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np

from .groups import GroupSpec
from .poly import Exponent, Poly
from .verify import check_membership


class MembershipError(ValueError):
    pass


@dataclass(frozen=True)
class Component:
    exp: Exponent
    coeff: Fraction
    sqrt: str  # decimal expansion of sqrt(coeff)

    def to_dict(self) -> dict:
        return {
            "exp": list(self.exp),
            "coeff": {"num": str(self.coeff.numerator), "den": str(self.coeff.denominator)},
            "sqrt": self.sqrt,
        }


@dataclass(frozen=True)
class SphereMap:
    group: GroupSpec
    components: tuple[Component, ...]
    precision: int

    @property
    def target_dimension(self) -> int:
        return len(self.components)

    def to_dict(self) -> dict:
        return {
            "group": self.group.kind.value,
            "p": self.group.p,
            "source_dimension": 3,
            "target_dimension": self.target_dimension,
            "minimal_embedding_dimension": self.target_dimension,
            "precision": self.precision,
            "components": [c.to_dict() for c in self.components],
        }

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """Complex component values at the points ``z`` (shape (..., 3))."""
        z = np.asarray(z, dtype=complex)
        exps = np.array([c.exp for c in self.components])
        scale = np.array([float(c.sqrt) for c in self.components])
        return scale * np.prod(z[..., None, :] ** exps, axis=-1)


def sqrt_decimal(q: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 5
        root = (Decimal(q.numerator) / Decimal(q.denominator)).sqrt()
        ctx.prec = digits
        return str(+root)


def extract_sphere_map(P: Poly, g: GroupSpec, precision: int = 50) -> SphereMap:
    report = check_membership(P, g)
    if not report.ok:
        raise MembershipError(f"polynomial is not an invariant sphere-map polynomial: {report.to_dict()}")
    comps = tuple(
        Component(e, Fraction(c), sqrt_decimal(Fraction(c), precision)) for e, c in P.sorted_terms()
    )
    return SphereMap(g, comps, precision)


def random_sphere_points(count: int, seed: int = 0, dim: int = 3) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, dim)) + 1j * rng.standard_normal((count, dim))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def sphere_defect(smap: SphereMap, count: int = 100, seed: int = 0) -> float:
    """Largest |sum |component|^2 - 1| over ``count`` random unit-sphere points."""
    z = random_sphere_points(count, seed)
    values = smap.evaluate(z)
    return float(np.max(np.abs(np.sum(np.abs(values) ** 2, axis=1) - 1.0)))
