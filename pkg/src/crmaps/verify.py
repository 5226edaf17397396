"""Membership in the invariant sphere-map class and the rank-law checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .groups import GroupKind, GroupSpec, invariant_rank_N, make_group, weight_residue
from .iteration import apply_H, family_table
from .poly import Exponent, Poly, rank, restrict_to_hyperplane


def hyperplane_restriction(P: Poly) -> Poly:
    """``P(x1, x2, 1 - x1 - x2)``, fully expanded, as a bivariate polynomial."""
    return restrict_to_hyperplane(P)


@dataclass
class MembershipReport:
    nonneg_ok: bool
    hyperplane_ok: bool
    weights_ok: bool
    offending_terms: list[Exponent] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.nonneg_ok and self.hyperplane_ok and self.weights_ok

    def to_dict(self) -> dict:
        return {
            "member": self.ok,
            "nonneg_ok": self.nonneg_ok,
            "hyperplane_ok": self.hyperplane_ok,
            "weights_ok": self.weights_ok,
            "offending_terms": [list(e) for e in self.offending_terms],
        }


def check_membership(P: Poly, g: GroupSpec) -> MembershipReport:
    if P.arity != 3:
        return MembershipReport(False, False, False, sorted(P.terms, reverse=True))
    negative = [e for e, c in P.terms.items() if c < 0]
    non_invariant = [e for e in P.terms if weight_residue(g, e)]
    hyper = hyperplane_restriction(P) == Poly.const(1, 2)
    offending = sorted(set(negative) | set(non_invariant), reverse=True)
    return MembershipReport(not negative, hyper, not non_invariant, offending)


@dataclass
class LemmaInstance:
    p: int
    m0: int
    m: int
    expected: int
    computed: int
    member: bool | None = None

    @property
    def ok(self) -> bool:
        return self.expected == self.computed and self.member is not False


@dataclass
class LemmaReport:
    law: str
    group: GroupKind
    p_values: list[int]
    instances: list[LemmaInstance] = field(default_factory=list)
    increment_failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.instances) and not self.increment_failures

    def failures(self) -> list[LemmaInstance]:
        return [i for i in self.instances if not i.ok]

    def to_dict(self) -> dict:
        return {
            "law": self.law,
            "group": self.group.value,
            "p_values": self.p_values,
            "ok": self.ok,
            "instances": [
                {"p": i.p, "m0": i.m0, "m": i.m, "expected": i.expected,
                 "computed": i.computed, "member": i.member, "ok": i.ok}
                for i in self.instances
            ],
            "increment_failures": self.increment_failures,
        }


MembershipHook = Callable[[Poly, GroupSpec], bool]


def _membership(check: bool) -> MembershipHook | None:
    if not check:
        return None
    return lambda P, g: check_membership(P, g).ok


def _two_weight_law(kind: GroupKind, p_values: Iterable[int], law: str, check_members: bool) -> LemmaReport:
    if kind not in (GroupKind.G1, GroupKind.G2):
        raise ValueError(f"lemma 1 / corollary 1 concern g1 and g2, not {kind.value}")
    hook = _membership(check_members)
    report = LemmaReport(law, kind, list(p_values))
    for p in report.p_values:
        g = make_group(kind, p)
        N, k = invariant_rank_N(g), g.k
        table = family_table(g)
        for (m0, m), P in sorted(table.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            if law == "1" and m0 != -1:
                continue
            expected = 2 * N - 1 + m * (k + 1) if m0 == -1 else 2 * N + m0 + m * (k + 1)
            member = hook(P, g) if hook else None
            report.instances.append(LemmaInstance(p, m0, m, expected, rank(P), member))
        if law == "1":
            for m in range(p):
                step = rank(table[(-1, m + 1)]) - rank(table[(-1, m)])
                if step != k + 1:
                    report.increment_failures.append(f"p={p} m={m}: increment {step} != {k + 1}")
    return report


def check_lemma1(kind: GroupKind | str, p_values: Iterable[int], check_members: bool = False) -> LemmaReport:
    """rank(f_{-1,m}) = 2N - 1 + m(k + 1), with consecutive increments k + 1."""
    return _two_weight_law(GroupKind(kind), p_values, "1", check_members)


def check_corollary1(kind: GroupKind | str, p_values: Iterable[int], check_members: bool = False) -> LemmaReport:
    """rank(f_{m0,m}) = 2N + m0 + m(k + 1) over every family index (m0 = -1 included)."""
    return _two_weight_law(GroupKind(kind), p_values, "c1", check_members)


def check_lemma2(p_values: Iterable[int], check_members: bool = False) -> LemmaReport:
    """Scalar group: rank(f_{m0,m}) = 2N + m0 + m p."""
    hook = _membership(check_members)
    report = LemmaReport("2", GroupKind.SCALAR, list(p_values))
    for p in report.p_values:
        g = make_group(GroupKind.SCALAR, p)
        N = invariant_rank_N(g)
        for (m0, m), P in sorted(family_table(g).items(), key=lambda kv: (kv[0][1], kv[0][0])):
            member = hook(P, g) if hook else None
            report.instances.append(LemmaInstance(p, m0, m, 2 * N + m0 + m * p, rank(P), member))
    return report


def check_lemma3(p_values: Iterable[int], check_members: bool = False) -> LemmaReport:
    """Scalar group, m >= 2: rank(H(f_{m0,m})) = rank(f_{m0,m}) + N - 2 - m."""
    hook = _membership(check_members)
    report = LemmaReport("3", GroupKind.SCALAR, list(p_values))
    for p in report.p_values:
        g = make_group(GroupKind.SCALAR, p)
        N = invariant_rank_N(g)
        for (m0, m), P in sorted(family_table(g).items(), key=lambda kv: (kv[0][1], kv[0][0])):
            if m < 2:
                continue
            HP = apply_H(P, g)
            member = hook(HP, g) if hook else None
            report.instances.append(LemmaInstance(p, m0, m, rank(P) + N - 2 - m, rank(HP), member))
    return report


LAWS = {
    "1": check_lemma1,
    "c1": check_corollary1,
    "2": check_lemma2,
    "3": check_lemma3,
}
