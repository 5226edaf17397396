"""Exact arithmetic in Z[w], w a primitive p-th root of unity.

Elements are integer coordinate vectors modulo the p-th cyclotomic polynomial,
which makes "is this a rational integer" a syntactic test even for composite p.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .poly import Exponent, Poly


class CyclotomicIntegrityError(ArithmeticError):
    """A coefficient that must be a rational integer was not."""


def _divmod_monic(num: list[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    # coefficient lists low -> high; den monic
    num = list(num)
    d = len(den) - 1
    if len(num) - 1 < d:
        return [0], num
    quot = [0] * (len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            quot[i - d] = c
            for j in range(d + 1):
                num[i - d + j] -= c * den[j]
    return quot, num[:d] or [0]


@lru_cache(maxsize=None)
def cyclotomic_poly(p: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the p-th cyclotomic polynomial."""
    if p < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {p}")
    num = [-1] + [0] * (p - 1) + [1]
    for d in range(1, p):
        if p % d == 0:
            num, rem = _divmod_monic(num, cyclotomic_poly(d))
            if any(rem):
                raise ArithmeticError(f"Phi_{d} does not divide t^{p}-1 (remainder {rem})")
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


class CyclotomicRing:
    """Z[t]/Phi_p with list-level helpers used in hot loops."""

    def __init__(self, p: int):
        self.p = p
        self.phi = cyclotomic_poly(p)
        self.degree = len(self.phi) - 1

    def reduce(self, v: Sequence[int]) -> list[int]:
        v = list(v)
        d, phi = self.degree, self.phi
        for i in range(len(v) - 1, d - 1, -1):
            c = v[i]
            if c:
                base = i - d
                for j in range(d):
                    if phi[j]:
                        v[base + j] -= c * phi[j]
        v = v[:d]
        if len(v) < d:
            v.extend([0] * (d - len(v)))
        return v

    def mul_root(self, v: Sequence[int], a: int) -> list[int]:
        """Multiply by t^a: rotate in Z[t]/(t^p - 1), then reduce mod Phi_p."""
        p = self.p
        a %= p
        if a == 0:
            return list(v)
        full = list(v) + [0] * (p - len(v))
        full = full[p - a :] + full[: p - a]
        return self.reduce(full)

    def mul(self, u: Sequence[int], v: Sequence[int]) -> list[int]:
        out = [0] * (len(u) + len(v) - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    out[i + j] += a * b
        return self.reduce(out)

    def one(self) -> list[int]:
        return [1] + [0] * (self.degree - 1)

    def root(self, a: int = 1) -> list[int]:
        return self.mul_root(self.one(), a)


class CycElem:
    """Immutable element of Z[w], stored reduced mod Phi_p."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CyclotomicRing, coeffs: Iterable[int]):
        self.ring = ring
        self.coeffs = tuple(ring.reduce(list(coeffs)))

    @classmethod
    def integer(cls, ring: CyclotomicRing, n: int) -> "CycElem":
        return cls(ring, [n])

    @classmethod
    def root(cls, ring: CyclotomicRing, a: int = 1) -> "CycElem":
        return cls(ring, ring.root(a))

    def __add__(self, other: "CycElem") -> "CycElem":
        return CycElem(self.ring, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "CycElem") -> "CycElem":
        return CycElem(self.ring, [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "CycElem":
        return CycElem(self.ring, [-x for x in self.coeffs])

    def __mul__(self, other: "CycElem") -> "CycElem":
        return CycElem(self.ring, self.ring.mul(self.coeffs, other.coeffs))

    def __pow__(self, n: int) -> "CycElem":
        out = CycElem.integer(self.ring, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_integer() and self.coeffs[0] == other
        return isinstance(other, CycElem) and self.ring.p == other.ring.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring.p, self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise CyclotomicIntegrityError(f"{self.coeffs} is not a rational integer")
        return self.coeffs[0]

    def __repr__(self) -> str:
        return f"CycElem(p={self.ring.p}, {list(self.coeffs)})"


def expand_group_product(weights: Sequence[int], p: int) -> dict[Exponent, CycElem]:
    """Expand prod_{s=0}^{p-1} (1 - sum_j w^{s*weights[j]} x_j) with cyclotomic coefficients.

    Returns the CycPoly term map (zero coefficients dropped).
    """
    ring = CyclotomicRing(p)
    n = len(weights)
    units = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    state: dict[Exponent, list[int]] = {(0,) * n: ring.one()}
    for s in range(p):
        powers = [(s * w) % p for w in weights]
        nxt = {e: list(c) for e, c in state.items()}
        for e, c in state.items():
            for u, a in zip(units, powers):
                target = tuple(x + y for x, y in zip(e, u))
                rotated = ring.mul_root(c, a)
                acc = nxt.get(target)
                if acc is None:
                    nxt[target] = [-x for x in rotated]
                else:
                    for i, x in enumerate(rotated):
                        acc[i] -= x
        state = {e: c for e, c in nxt.items() if any(c)}
    return {e: CycElem(ring, c) for e, c in state.items()}


def one_minus_product(weights: Sequence[int], p: int) -> Poly:
    """``1 - prod_s (1 - sum_j w^{s*weights[j]} x_j)`` as an integer-coefficient Poly.

    Raises CyclotomicIntegrityError if any coefficient is not a rational integer.
    """
    n = len(weights)
    product = expand_group_product(weights, p)
    terms: dict[Exponent, int] = {}
    for e, c in product.items():
        if not c.is_integer():
            raise CyclotomicIntegrityError(
                f"coefficient of x^{e} in the group product is {c.coeffs}, not an integer"
            )
        terms[e] = -c.coeffs[0]
    zero = (0,) * n
    terms[zero] = terms.get(zero, 0) + 1
    return Poly(terms, n)
