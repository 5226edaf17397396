"""Substitution operators on invariant polynomials and the families they generate.

Every operator replaces one designated monomial ``mu`` (with coefficient ``c``)
of a polynomial ``P`` by a multiple of ``mu * f``, where ``f`` is the group's
canonical polynomial:

* full replace (F):  c*mu            ->  c*mu*f
* half split   (G):  c*mu            ->  c/2*mu + c/2*mu*f

Both are the identity when ``mu`` is absent from ``P``.  Since ``f`` equals 1 on
the hyperplane x1 + x2 + x3 = 1, both preserve membership.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .canonical import canonical_polynomial
from .groups import GroupKind, GroupSpec, weight_residue
from .poly import Exponent, Poly, grlex_key


class IterationMode(str, enum.Enum):
    FULL = "F"
    HALF = "G"


SEVEN_SCHEDULE: tuple[Exponent, ...] = (
    (7, 0, 0),
    (5, 1, 0),
    (3, 2, 0),
    (1, 3, 0),
    (1, 1, 1),
    (2, 0, 3),
    (0, 1, 3),
)


class ScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class Schedule:
    """Ordered monomials acted on by the family constructors."""

    group: GroupSpec
    monomials: tuple[Exponent, ...]

    def __post_init__(self):
        f = canonical_polynomial(self.group)
        if len(set(self.monomials)) != len(self.monomials):
            raise ScheduleError("schedule monomials must be pairwise distinct")
        for mu in self.monomials:
            if weight_residue(self.group, mu):
                raise ScheduleError(f"schedule monomial {mu} is not invariant under {self.group}")
            if mu not in f:
                raise ScheduleError(f"schedule monomial {mu} does not occur in the canonical polynomial")

    @property
    def length(self) -> int:
        """Largest admissible ``m`` (index of the last monomial)."""
        return len(self.monomials) - 1

    def __len__(self) -> int:
        return len(self.monomials)


def schedule_for(g: GroupSpec) -> Schedule:
    p = g.p
    if g.kind in (GroupKind.G1, GroupKind.SCALAR):
        mons = tuple((p - j, j, 0) for j in range(p + 1))
    elif g.kind is GroupKind.G2:
        # x2 and x3 share a weight here; walk the expansion of (x2 + x3)^p
        mons = tuple((0, p - j, j) for j in range(p + 1))
    else:
        mons = SEVEN_SCHEDULE
    return Schedule(g, mons)


@dataclass(frozen=True)
class FamilyIndex:
    m0: int
    m: int

    def validate(self, schedule: Schedule) -> None:
        if not (-1 <= self.m0 <= self.m <= schedule.length and self.m >= 0):
            raise IndexError(
                f"family index (m0={self.m0}, m={self.m}) outside -1 <= m0 <= m <= {schedule.length}"
            )


def substitute_mode(P: Poly, mu: Sequence[int], mode: IterationMode | str, g: GroupSpec) -> Poly:
    mu = tuple(mu)
    c = P.coeff(mu)
    if not c:
        return P
    f = canonical_polynomial(g)
    mode = IterationMode(mode)
    terms = dict(P.terms)
    if mode is IterationMode.FULL:
        del terms[mu]
        added = f.shift(mu, c)
    else:
        half = Fraction(c) / 2
        terms[mu] = half if half.denominator != 1 else half.numerator
        added = f.shift(mu, half)
    return Poly._raw(terms, P.arity) + added


def apply_F(P: Poly, mu: Sequence[int], g: GroupSpec) -> Poly:
    return substitute_mode(P, mu, IterationMode.FULL, g)


def apply_G(P: Poly, mu: Sequence[int], g: GroupSpec) -> Poly:
    return substitute_mode(P, mu, IterationMode.HALF, g)


def apply_H(P: Poly, g: GroupSpec) -> Poly:
    """Full replace on x3^p."""
    return substitute_mode(P, (0, 0, g.p), IterationMode.FULL, g)


def top_monomial(P: Poly) -> Exponent:
    """Monomial with the largest x1 exponent, ties broken by grlex maximum."""
    if not P:
        raise ValueError("the zero polynomial has no top monomial")
    return max(P.terms, key=lambda e: (e[0], grlex_key(e)))


def top_multiply(P: Poly, g: GroupSpec) -> Poly:
    return substitute_mode(P, top_monomial(P), IterationMode.FULL, g)


def apply_custom(
    P: Poly, moves: Iterable[tuple[Sequence[int], IterationMode | str]], g: GroupSpec
) -> Poly:
    for mu, mode in moves:
        P = substitute_mode(P, mu, mode, g)
    return P


def family_moves(schedule: Schedule, idx: FamilyIndex) -> list[tuple[Exponent, IterationMode]]:
    """The move list defining f_{m0,m}: G on mu_0..mu_m0, then F on mu_{m0+1}..mu_m."""
    idx.validate(schedule)
    mons = schedule.monomials
    return [
        (mons[j], IterationMode.HALF if j <= idx.m0 else IterationMode.FULL)
        for j in range(idx.m + 1)
    ]


def family_member(
    g: GroupSpec, idx: FamilyIndex | tuple[int, int], schedule: Schedule | None = None
) -> Poly:
    if not isinstance(idx, FamilyIndex):
        idx = FamilyIndex(*idx)
    schedule = schedule or schedule_for(g)
    return apply_custom(canonical_polynomial(g), family_moves(schedule, idx), g)


def family_table(
    g: GroupSpec, m_max: int | None = None, schedule: Schedule | None = None
) -> dict[tuple[int, int], Poly]:
    """All f_{m0,m} with m <= m_max, sharing prefixes.

    f_{m0,m} = F_{mu_m}(f_{m0,m-1}) for m > m0 and f_{m,m} = G_{mu_m}(f_{m-1,m-1})
    (reading f_{m0,-1} as f), so each member costs a single substitution.
    """
    schedule = schedule or schedule_for(g)
    m_max = schedule.length if m_max is None else m_max
    if m_max > schedule.length:
        raise IndexError(f"m_max={m_max} exceeds schedule length {schedule.length}")
    mons = schedule.monomials
    f = canonical_polynomial(g)
    table: dict[tuple[int, int], Poly] = {}
    for m in range(m_max + 1):
        for m0 in range(-1, m):
            prev = table[(m0, m - 1)] if m else f
            table[(m0, m)] = apply_F(prev, mons[m], g)
        table[(m, m)] = apply_G(table[(m - 1, m - 1)] if m else f, mons[m], g)
    return table
