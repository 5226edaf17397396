"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a mapping from exponent tuples to nonzero coefficients.
Coefficients are Python ints when integral and ``Fraction`` otherwise, so the
integer-heavy paths (group products, closed forms) never pay for rational
normalisation.  The zero polynomial has an empty term map.

    x1^2*x2 + 3  ->  {(2, 1, 0): 1, (0, 0, 0): 3}
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence, Tuple, Union

import numpy as np

Exponent = Tuple[int, ...]
Coeff = Union[int, Fraction]
Number = Union[int, Fraction]


class ArityError(ValueError):
    """Raised when polynomials or exponents of different arity are combined."""


def _norm(c: Number) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def grlex_key(e: Exponent) -> tuple:
    """Sort key realising graded-lexicographic order (larger key = larger monomial)."""
    return (sum(e),) + tuple(e)


def compare_grlex(a: Exponent, b: Exponent) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b`` in grlex."""
    if len(a) != len(b):
        raise ArityError(f"cannot compare exponents of arity {len(a)} and {len(b)}")
    ka, kb = grlex_key(a), grlex_key(b)
    return (ka > kb) - (ka < kb)


class Poly:
    """Immutable sparse polynomial in ``arity`` variables ``x1 .. x_arity``."""

    __slots__ = ("_terms", "_arity", "_hash")

    def __init__(self, terms: Mapping[Exponent, Number] | None = None, arity: int = 3):
        self._arity = arity
        clean: dict[Exponent, Coeff] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != arity:
                raise ArityError(f"exponent {e} does not have arity {arity}")
            if any(v < 0 for v in e):
                raise ValueError(f"negative exponent in {e}")
            if c:
                clean[e] = _norm(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, arity: int) -> "Poly":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._arity = arity
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, arity: int = 3) -> "Poly":
        return cls._raw({}, arity)

    @classmethod
    def const(cls, value: Number, arity: int = 3) -> "Poly":
        return cls({(0,) * arity: value}, arity)

    @classmethod
    def var(cls, i: int, arity: int = 3) -> "Poly":
        """The variable ``x_{i+1}`` (0-based index)."""
        if not 0 <= i < arity:
            raise IndexError(f"variable index {i} out of range for arity {arity}")
        e = [0] * arity
        e[i] = 1
        return cls._raw({tuple(e): 1}, arity)

    @classmethod
    def monomial(cls, e: Sequence[int], coeff: Number = 1) -> "Poly":
        return cls({tuple(e): coeff}, len(e))

    # -- basic accessors --------------------------------------------------

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def terms(self) -> Mapping[Exponent, Coeff]:
        return self._terms

    def coeff(self, e: Sequence[int]) -> Coeff:
        return self._terms.get(tuple(e), 0)

    def __contains__(self, e) -> bool:
        return tuple(e) in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def sorted_terms(self) -> list[tuple[Exponent, Coeff]]:
        """Terms in strictly decreasing grlex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    # -- ring operations --------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self._arity != other._arity:
            raise ArityError(f"arity mismatch: {self._arity} vs {other._arity}")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self._arity)
        return NotImplemented

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return Poly._raw(out, self._arity)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({e: -c for e, c in self._terms.items()}, self._arity)

    def __sub__(self, other) -> "Poly":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponent, Number] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return Poly._raw({e: _norm(c) for e, c in out.items() if c}, self._arity)

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1, self._arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Number) -> "Poly":
        if not c:
            return Poly.zero(self._arity)
        return Poly._raw({e: _norm(v * c) for e, v in self._terms.items()}, self._arity)

    def shift(self, e: Sequence[int], c: Number = 1) -> "Poly":
        """Multiply by the monomial ``c * x^e``."""
        e = tuple(e)
        if len(e) != self._arity:
            raise ArityError(f"monomial {e} does not have arity {self._arity}")
        if not c:
            return Poly.zero(self._arity)
        return Poly._raw(
            {tuple(x + y for x, y in zip(k, e)): _norm(v * c) for k, v in self._terms.items()},
            self._arity,
        )

    # -- equality / hashing -----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self._arity)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._arity == other._arity and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._arity, frozenset(self._terms.items())))
        return self._hash

    # -- presentation -----------------------------------------------------

    def __repr__(self) -> str:
        return f"Poly({self!s}, arity={self._arity})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if v == 1 else f"x{i + 1}^{v}" for i, v in enumerate(e) if v
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_dict(self) -> dict:
        """Canonical JSON-ready form: terms in decreasing grlex, reduced num/den strings."""
        terms = []
        for e, c in self.sorted_terms():
            f = Fraction(c)
            terms.append({"exp": list(e), "num": str(f.numerator), "den": str(f.denominator)})
        return {"arity": self._arity, "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> "Poly":
        arity = int(data["arity"])
        terms: dict[Exponent, Number] = {}
        for t in data["terms"]:
            e = tuple(int(v) for v in t["exp"])
            den = int(t.get("den", "1"))
            if den <= 0:
                raise ValueError(f"non-positive denominator in term {t}")
            if e in terms:
                raise ValueError(f"duplicate exponent {e}")
            terms[e] = Fraction(int(t["num"]), den)
        return cls(terms, arity)

    @classmethod
    def from_json(cls, text: str) -> "Poly":
        return cls.from_dict(json.loads(text))

    def common_denominator(self) -> int:
        return lcm(1, *(c.denominator for c in self._terms.values() if isinstance(c, Fraction)))


def rank(P: Poly) -> int:
    """Number of linearly independent monomials, i.e. the number of stored terms."""
    return len(P)


def eval_at(P: Poly, point: Sequence[Number]) -> Number:
    if len(point) != P.arity:
        raise ArityError(f"point of length {len(point)} for arity {P.arity}")
    pt = [Fraction(v) for v in point]
    total = Fraction(0)
    for e, c in P.terms.items():
        v = Fraction(c)
        for x, k in zip(pt, e):
            if k:
                v *= x**k
        total += v
    return _norm(total)


def _embed(e: Exponent, drop: int) -> Exponent:
    return e[:drop] + e[drop + 1 :]


def substitute_var(P: Poly, i: int, Q: Poly) -> Poly:
    """Replace ``x_{i+1}`` by ``Q`` and expand.

    ``Q`` may either have the arity of ``P`` (result keeps that arity) or one less,
    in which case it is read in the remaining variables and the result drops
    ``x_{i+1}`` altogether.
    """
    n = P.arity
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range for arity {n}")
    if Q.arity == n:
        reduced = False
    elif Q.arity == n - 1:
        reduced = True
    else:
        raise ArityError(f"substitute arity {Q.arity} incompatible with {n}")

    # group by power of x_i, then Horner in Q
    by_power: dict[int, dict[Exponent, Coeff]] = {}
    for e, c in P.terms.items():
        rest = _embed(e, i) if reduced else e[:i] + (0,) + e[i + 1 :]
        by_power.setdefault(e[i], {})[rest] = c
    out_arity = n - 1 if reduced else n
    if not by_power:
        return Poly.zero(out_arity)
    result = Poly.zero(out_arity)
    for k in range(max(by_power), -1, -1):
        result = result * Q
        if k in by_power:
            result = result + Poly._raw(dict(by_power[k]), out_arity)
    return result


def compose(P: Poly, images: Sequence[Poly]) -> Poly:
    """Substitute ``x_j -> images[j]`` for every variable of ``P`` simultaneously."""
    if len(images) != P.arity:
        raise ArityError(f"{len(images)} images for arity {P.arity}")
    arity = images[0].arity
    powers: list[dict[int, Poly]] = [{0: Poly.const(1, arity)} for _ in images]

    def power(j: int, k: int) -> Poly:
        cache = powers[j]
        if k not in cache:
            cache[k] = power(j, k - 1) * images[j]
        return cache[k]

    out = Poly.zero(arity)
    for e, c in P.terms.items():
        term = Poly.const(c, arity)
        for j, k in enumerate(e):
            if k:
                term = term * power(j, k)
        out = out + term
    return out


def restrict_to_hyperplane(P: Poly) -> Poly:
    """Expand ``P(x1, x2, 1 - x1 - x2)`` for a trivariate ``P``; returns a bivariate Poly.

    Dense Horner in ``x3`` over integer numpy object arrays (after clearing
    denominators); this is the hot path of every membership check.
    """
    if P.arity != 3:
        raise ArityError("hyperplane restriction needs a trivariate polynomial")
    if not P:
        return Poly.zero(2)
    den = P.common_denominator()
    d1 = max(e[0] for e in P.terms) + 1
    d2 = max(e[1] for e in P.terms) + 1
    d3 = max(e[2] for e in P.terms)
    size = d1 + d2 + d3 + 1
    layers: dict[int, list[tuple[int, int, int]]] = {}
    for (a, b, c), v in P.terms.items():
        iv = v * den
        layers.setdefault(c, []).append((a, b, int(iv)))
    acc = np.zeros((size, size), dtype=object)
    acc[:, :] = 0
    for c in range(d3, -1, -1):
        if c != d3:
            # acc *= (1 - x1 - x2)
            nxt = acc.copy()
            nxt[1:, :] -= acc[:-1, :]
            nxt[:, 1:] -= acc[:, :-1]
            acc = nxt
        for a, b, iv in layers.get(c, ()):
            acc[a, b] += iv
    out: dict[Exponent, Number] = {}
    for a, b in zip(*np.nonzero(acc)):
        out[(int(a), int(b))] = Fraction(int(acc[a, b]), den)
    return Poly(out, 2)


def grlex_sorted(exps: Iterable[Exponent], reverse: bool = True) -> list[Exponent]:
    return sorted(exps, key=grlex_key, reverse=reverse)

