"""Rank coverage: the consecutive window above n(G), tiling beyond it, and a
bounded explorer for ranks below it.

A window witness set is built exactly as the existence argument prescribes
for each group; every rank claim is carried with the polynomial realising it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .groups import GroupKind, GroupSpec, gap_bound_n, invariant_rank_N
from .iteration import IterationMode, apply_H, family_table, substitute_mode, top_multiply
from .canonical import canonical_polynomial
from .poly import Poly, rank
from .verify import check_membership


@dataclass
class Witness:
    label: str
    poly: Poly = field(repr=False)
    member: bool | None = None

    @property
    def rank(self) -> int:
        return rank(self.poly)

    def to_dict(self, include_poly: bool = False) -> dict:
        out = {"label": self.label, "rank": self.rank, "member": self.member}
        if include_poly:
            out["poly"] = self.poly.to_dict()
        return out


@dataclass
class CoverageReport:
    group: GroupSpec
    N: int
    n: int
    window: tuple[int, int]
    r_max: int
    achieved: dict[int, Witness] = field(default_factory=dict)
    holes: list[int] = field(default_factory=list)
    increments: list[int] = field(default_factory=list)
    anomalies: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def members_ok(self) -> bool:
        return all(w.member is not False for w in self.achieved.values())

    @property
    def ok(self) -> bool:
        return not self.holes and not self.anomalies and self.members_ok

    def to_dict(self, include_polys: bool = False) -> dict:
        return {
            "group": self.group.kind.value,
            "p": self.group.p,
            "N": self.N,
            "n": self.n,
            "window": list(self.window),
            "max_rank": self.r_max,
            "ok": self.ok,
            "holes": self.holes,
            "increment_set": sorted(set(self.increments)),
            "anomalies": self.anomalies,
            "notes": self.notes,
            "witnesses": [
                self.achieved[r].to_dict(include_polys) for r in sorted(self.achieved)
            ],
        }


def _fam(m0: int, m: int) -> str:
    return f"f[{m0},{m}]"


def window_candidates(g: GroupSpec) -> Iterator[Witness]:
    """The witness polynomials used to cover [n, n + N - 2] for ``g``."""
    p = g.p
    if g.kind in (GroupKind.G1, GroupKind.G2):
        k = g.k
        table = family_table(g, p - 1)
        for m in range(k - 1, p):
            for m0 in range(-1, m + 1):
                yield Witness(_fam(m0, m), table[(m0, m)])
    elif g.kind is GroupKind.SEVEN:
        table = family_table(g)
        for (m0, m), P in sorted(table.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            yield Witness(_fam(m0, m), P)
    else:
        yield from _scalar_candidates(g)


def _scalar_candidates(g: GroupSpec) -> Iterator[Witness]:
    p = g.p
    N = invariant_rank_N(g)
    table = family_table(g)
    for m in range(max(p - 2, 0), p + 1):
        for m0 in range(-1, m + 1):
            yield Witness(_fam(m0, m), table[(m0, m)])
    # ranks beyond the 3p + 2 reached above: Euclidean division of the offset
    for ell in range(3 * p + 2, N - 1):
        q, r = divmod(p * p - 2 * p + ell - N, p)
        if r <= q:
            if (r, q) in table:
                yield Witness(f"top({_fam(r, q)})", top_multiply(table[(r, q)], g))
        else:
            m0 = q + 2 + r - p
            if (m0, q + 1) in table:
                yield Witness(f"H({_fam(m0, q + 1)})", apply_H(table[(m0, q + 1)], g))


def check_theorem_window(g: GroupSpec, check_members: bool = True) -> CoverageReport:
    N, n = invariant_rank_N(g), gap_bound_n(g)
    lo, hi = n, n + N - 2
    report = CoverageReport(g, N, n, (lo, hi), hi)
    for w in window_candidates(g):
        r = w.rank
        if lo <= r <= hi and r not in report.achieved:
            if check_members:
                w.member = check_membership(w.poly, g).ok
            report.achieved[r] = w
    report.holes = [r for r in range(lo, hi + 1) if r not in report.achieved]
    if g.kind is GroupKind.G2:
        report.notes.append("g2 uses the default schedule x2^(p-j) x3^j")
    return report


def coverage_scan(g: GroupSpec, r_max: int, check_members: bool = True) -> CoverageReport:
    """Tile [n, r_max] by repeated top-multiplication of the window witnesses."""
    base = check_theorem_window(g, check_members)
    N, n = base.N, base.n
    if r_max < n:
        raise ValueError(f"max rank {r_max} is below n = {n}")
    report = CoverageReport(g, N, n, base.window, r_max, dict(base.achieved), notes=list(base.notes))
    for r0 in sorted(base.achieved):
        w = base.achieved[r0]
        P, label, steps = w.poly, w.label, 0
        while rank(P) + N - 1 <= r_max:
            Q = top_multiply(P, g)
            steps += 1
            inc = rank(Q) - rank(P)
            report.increments.append(inc)
            if inc != N - 1:
                report.anomalies.append(
                    f"top-multiply step {steps} on {w.label}: increment {inc} != {N - 1}"
                )
            P = Q
            label = f"top^{steps}({w.label})"
            r = rank(P)
            if r not in report.achieved:
                nw = Witness(label, P)
                if check_members:
                    nw.member = check_membership(P, g).ok
                report.achieved[r] = nw
    report.achieved = {r: w for r, w in report.achieved.items() if n <= r <= r_max}
    report.holes = [r for r in range(n, r_max + 1) if r not in report.achieved]
    return report


@dataclass
class ExploreResult:
    group: GroupSpec
    depth: int
    beam: int
    observed: dict[int, str] = field(default_factory=dict)
    states_seen: int = 0

    def to_dict(self) -> dict:
        return {
            "group": self.group.kind.value,
            "p": self.group.p,
            "depth": self.depth,
            "beam": self.beam,
            "states_seen": self.states_seen,
            "observed_ranks": sorted(self.observed),
            "witnesses": {str(r): self.observed[r] for r in sorted(self.observed)},
            "note": "observed ranks only; absence below n is not a proof of non-existence",
        }


def _move_label(mu, mode: IterationMode) -> str:
    return f"{mode.value}{list(mu)}"


def explore_ranks(g: GroupSpec, depth: int, beam: int = 64) -> ExploreResult:
    """Breadth-first search over single F/G moves on any present monomial.

    States are deduplicated by monomial support (rank depends on nothing
    else); each level keeps at most ``beam`` new states, chosen in a fixed
    (rank, support) order so results do not depend on dict iteration.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    f = canonical_polynomial(g)
    result = ExploreResult(g, depth, beam)
    result.observed[rank(f)] = "f"
    seen = {f.support()}
    frontier: list[tuple[Poly, str]] = [(f, "f")]
    for _ in range(depth):
        children: dict[frozenset, tuple[Poly, str]] = {}
        for P, label in frontier:
            for mu in sorted(P.terms, reverse=True):
                for mode in (IterationMode.FULL, IterationMode.HALF):
                    Q = substitute_mode(P, mu, mode, g)
                    key = Q.support()
                    if key in seen or key in children:
                        continue
                    children[key] = (Q, f"{label} -> {_move_label(mu, mode)}")
        seen.update(children)
        ordered = sorted(children.values(), key=lambda t: (rank(t[0]), sorted(t[0].support())))
        for Q, label in ordered:
            result.observed.setdefault(rank(Q), label)
        frontier = ordered[:beam]
        if not frontier:
            break
    result.states_seen = len(seen)
    return result
