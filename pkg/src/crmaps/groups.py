"""The four admissible cyclic subgroups of U(3), as diagonal weight systems.

Each group is generated by ``diag(w^a, w^b, w^c)`` for a primitive p-th root of
unity ``w``; only the weight vector ``(a, b, c)`` mod p matters for everything
downstream.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Sequence


class GroupKind(str, enum.Enum):
    G1 = "g1"  # <w I_2 (+) w^2 I_1>
    G2 = "g2"  # <w I_1 (+) w^2 I_2>
    SCALAR = "scalar"  # <w I_3>
    SEVEN = "seven"  # <w I_1 (+) w^2 I_1 (+) w^4 I_1>, p = 7


_WEIGHTS = {
    GroupKind.G1: (1, 1, 2),
    GroupKind.G2: (1, 2, 2),
    GroupKind.SCALAR: (1, 1, 1),
    GroupKind.SEVEN: (1, 2, 4),
}


class InvalidGroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    kind: GroupKind
    p: int
    weights: tuple[int, int, int]

    @property
    def k(self) -> int:
        """(p - 1) / 2 for the two-weight groups."""
        if self.kind not in (GroupKind.G1, GroupKind.G2):
            raise AttributeError(f"k is only defined for g1/g2, not {self.kind.value}")
        return (self.p - 1) // 2

    @property
    def label(self) -> str:
        return f"{self.kind.value}(p={self.p})"

    def __str__(self) -> str:
        return self.label


def make_group(kind: GroupKind | str, p: int) -> GroupSpec:
    kind = GroupKind(kind)
    if kind in (GroupKind.G1, GroupKind.G2):
        if p < 3 or p % 2 == 0:
            raise InvalidGroupError(f"{kind.value} needs an odd p >= 3, got {p}")
    elif kind is GroupKind.SCALAR:
        if p < 2:
            raise InvalidGroupError(f"scalar group needs p >= 2, got {p}")
    elif p != 7:
        raise InvalidGroupError(f"seven group is only defined for p = 7, got {p}")
    w = tuple(v % p for v in _WEIGHTS[kind])
    return GroupSpec(kind, p, w)  # type: ignore[arg-type]


def invariant_rank_N(g: GroupSpec) -> int:
    """Rank of the canonical invariant polynomial, from the closed forms."""
    p = g.p
    if g.kind is GroupKind.G1:
        num, den = p * p + 4 * p + 7, 4
    elif g.kind is GroupKind.G2:
        num, den = p * p + 12 * p + 11, 8
    elif g.kind is GroupKind.SCALAR:
        return comb(p + 2, 2)
    else:
        return 17
    if num % den:
        raise ArithmeticError(f"closed form for N is not integral at {g}")
    return num // den


def gap_bound_n(g: GroupSpec) -> int:
    """Threshold n beyond which every target dimension is realised."""
    N = invariant_rank_N(g)
    if g.kind in (GroupKind.G1, GroupKind.G2):
        return 2 * N - 1 + g.k**2 - 1
    if g.kind is GroupKind.SCALAR:
        return 2 * N - 1 + (g.p - 2) * g.p
    return 2 * N - 1 + 3 * 7 + 2


def dangelo_general_bound(g: GroupSpec) -> int:
    """The general bound N^2 - 2N + 2 valid for any admissible group."""
    N = invariant_rank_N(g)
    return N * N - 2 * N + 2


def weight_residue(g: GroupSpec, e: Sequence[int]) -> int:
    if len(e) != 3:
        raise ValueError(f"exponent {tuple(e)} is not trivariate")
    return sum(w * a for w, a in zip(g.weights, e)) % g.p


def is_invariant_monomial(g: GroupSpec, e: Sequence[int]) -> bool:
    return weight_residue(g, e) == 0


def parse_group(name: str, p: int) -> GroupSpec:
    """CLI-facing constructor; ``name`` is one of g1, g2, scalar, seven."""
    try:
        kind = GroupKind(name.lower())
    except ValueError:
        raise InvalidGroupError(f"unknown group {name!r}; expected g1, g2, scalar or seven") from None
    return make_group(kind, p)
