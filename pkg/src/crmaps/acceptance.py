"""The full reproduction matrix: every rank law and coverage claim, checked exactly.

Shared by ``crmaps reproduce`` and the acceptance tests.  Expensive reports are
cached so the membership criterion can audit every polynomial the other
criteria generated without rebuilding them.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .canonical import SEVEN_TERMS, canonical_polynomial, group_product_polynomial, verify_canonical
from .coverage import CoverageReport, check_theorem_window, coverage_scan
from .groups import dangelo_general_bound, gap_bound_n, invariant_rank_N, make_group
from .iteration import family_table
from .poly import Poly, rank
from .spheremap import extract_sphere_map, sphere_defect
from .verify import LemmaReport, check_corollary1, check_lemma1, check_lemma2, check_lemma3, check_membership

ODD_CANONICAL = list(range(3, 32, 2))
SCALAR_CANONICAL = list(range(2, 21))
ODD_LEMMA = list(range(3, 20, 2))
SCALAR_LEMMA = list(range(2, 13))
# groups for the window / tiling criteria
COVERAGE_GROUPS = (
    [("g1", p) for p in ODD_LEMMA]
    + [("g2", p) for p in ODD_LEMMA]
    + [("scalar", p) for p in SCALAR_LEMMA]
    + [("seven", 7)]
)
TILING_MULTIPLE = 5
MAP_TOLERANCE = 1e-12
MAP_POINTS = 100
MAP_SEED = 20251015

# published ranks of f_{m0,m} for the order-7 group
SEVEN_PUBLISHED = {
    0: {-1: 33, 0: 34},
    1: {-1: 41, 0: 42, 1: 43},
    2: dict(zip(range(-1, 3), range(49, 53))),
    3: dict(zip(range(-1, 4), range(56, 61))),
    4: dict(zip(range(-1, 5), range(58, 64))),
    5: dict(zip(range(-1, 6), range(62, 69))),
    6: {2: 69, 3: 70, 4: 71},
}


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number:2d}. {self.title}: {self.detail}"


def worker_count() -> int:
    raw = os.environ.get("CRMAPS_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _canonical_case(case: tuple[str, int]) -> tuple[str, int, bool, int, int]:
    r = verify_canonical(make_group(*case))
    return case[0], case[1], r.ok, r.rank, r.expected_rank


def criterion_canonical() -> tuple[bool, str]:
    cases = (
        [("g1", p) for p in ODD_CANONICAL]
        + [("g2", p) for p in ODD_CANONICAL]
        + [("scalar", p) for p in SCALAR_CANONICAL]
        + [("seven", 7)]
    )
    workers = min(worker_count(), len(cases))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_canonical_case, cases))
    else:
        results = [_canonical_case(c) for c in cases]
    bad = [f"{k}(p={p}) rank {r} vs N {n}" for k, p, ok, r, n in results if not ok]
    return not bad, f"{len(results)} groups, product == closed form and rank == N" if not bad else "; ".join(bad)


def criterion_seven_literal() -> tuple[bool, str]:
    product = group_product_polynomial(make_group("seven", 7))
    ok = product == Poly(SEVEN_TERMS, 3) and set(product.terms.values()) == {1, 7, 14}
    return ok, f"{len(product)} terms, coefficients {sorted(set(product.terms.values()))}"


@lru_cache(maxsize=None)
def lemma_reports() -> dict[str, list[LemmaReport]]:
    return {
        "1": [check_lemma1(k, ODD_LEMMA, check_members=True) for k in ("g1", "g2")],
        "c1": [check_corollary1(k, ODD_LEMMA, check_members=True) for k in ("g1", "g2")],
        "2": [check_lemma2(SCALAR_LEMMA, check_members=True)],
        "3": [check_lemma3(SCALAR_LEMMA, check_members=True)],
    }


def _lemma_summary(reports: list[LemmaReport]) -> tuple[bool, str]:
    rank_fail = [
        f"{r.group.value} p={i.p} ({i.m0},{i.m}): {i.computed} != {i.expected}"
        for r in reports for i in r.instances if i.computed != i.expected
    ]
    rank_fail += [f for r in reports for f in r.increment_failures]
    n = sum(len(r.instances) for r in reports)
    if rank_fail:
        return False, f"{len(rank_fail)} mismatches, first: {rank_fail[0]}"
    return True, f"{n} instances match exactly"


def criterion_lemma(law: str) -> Callable[[], tuple[bool, str]]:
    return lambda: _lemma_summary(lemma_reports()[law])


@lru_cache(maxsize=None)
def seven_table() -> dict[tuple[int, int], Poly]:
    return family_table(make_group("seven", 7))


def criterion_seven_schedule() -> tuple[bool, str]:
    table = seven_table()
    bad = [
        f"f[{m0},{m}] rank {rank(table[(m0, m)])} != {want}"
        for m, row in SEVEN_PUBLISHED.items() for m0, want in row.items()
        if rank(table[(m0, m)]) != want
    ]
    n = sum(len(row) for row in SEVEN_PUBLISHED.values())
    return not bad, f"{n} published ranks reproduced" if not bad else "; ".join(bad)


@lru_cache(maxsize=None)
def coverage_reports() -> dict[tuple[str, int], CoverageReport]:
    out = {}
    for kind, p in COVERAGE_GROUPS:
        g = make_group(kind, p)
        N, n = invariant_rank_N(g), gap_bound_n(g)
        out[(kind, p)] = coverage_scan(g, n + TILING_MULTIPLE * (N - 1))
    return out


@lru_cache(maxsize=None)
def window_reports() -> dict[tuple[str, int], CoverageReport]:
    return {(k, p): check_theorem_window(make_group(k, p)) for k, p in COVERAGE_GROUPS}


def criterion_windows() -> tuple[bool, str]:
    reports = window_reports()
    bad = [f"{k}(p={p}) holes {r.holes}" for (k, p), r in reports.items() if r.holes]
    if reports[("seven", 7)].n != 56:
        bad.append(f"seven n = {reports[('seven', 7)].n} != 56")
    unrecomputable = [
        f"{k}(p={p}) {w.label}" for (k, p), r in reports.items()
        for rr, w in r.achieved.items() if rank(w.poly) != rr
    ]
    bad += unrecomputable
    return not bad, f"{len(reports)} windows fully covered" if not bad else "; ".join(bad[:5])


def criterion_tiling() -> tuple[bool, str]:
    reports = coverage_reports()
    bad = []
    for (k, p), r in reports.items():
        if r.holes:
            bad.append(f"{k}(p={p}) holes {r.holes[:5]}")
        bad += [f"{k}(p={p}) {a}" for a in r.anomalies]
        if set(r.increments) != {r.N - 1}:
            bad.append(f"{k}(p={p}) increments {sorted(set(r.increments))}")
    steps = sum(len(r.increments) for r in reports.values())
    return not bad, f"{len(reports)} groups tiled to n + {TILING_MULTIPLE}(N-1), {steps} steps of N-1" if not bad else "; ".join(bad[:5])


def criterion_headline() -> tuple[bool, str]:
    cases = (
        [("g1", p) for p in ODD_CANONICAL]
        + [("g2", p) for p in ODD_CANONICAL]
        + [("scalar", p) for p in SCALAR_CANONICAL]
        + [("seven", 7)]
    )
    bad = []
    for k, p in cases:
        g = make_group(k, p)
        if not gap_bound_n(g) < dangelo_general_bound(g):
            bad.append(f"{k}(p={p}): n={gap_bound_n(g)} >= {dangelo_general_bound(g)}")
    return not bad, f"{len(cases)} groups satisfy n < N^2 - 2N + 2" if not bad else "; ".join(bad)


def criterion_membership() -> tuple[bool, str]:
    checked = failed = 0
    first = ""
    for reports in lemma_reports().values():
        for r in reports:
            for i in r.instances:
                checked += 1
                if i.member is not True:
                    failed += 1
                    first = first or f"{r.law} {r.group.value} p={i.p} ({i.m0},{i.m})"
    g7 = make_group("seven", 7)
    for key, P in seven_table().items():
        checked += 1
        if not check_membership(P, g7).ok:
            failed += 1
            first = first or f"seven f{list(key)}"
    for reports in (window_reports(), coverage_reports()):
        for (k, p), r in reports.items():
            for w in r.achieved.values():
                checked += 1
                if w.member is not True:
                    failed += 1
                    first = first or f"{k}(p={p}) {w.label}"
    return not failed, f"{checked} polynomials are members" if not failed else f"{failed} failures, first {first}"


def criterion_map() -> tuple[bool, str]:
    g = make_group("seven", 7)
    window = window_reports()[("seven", 7)]
    ranks = sorted(window.achieved)
    chosen = [ranks[0], ranks[len(ranks) // 2], ranks[-1]]
    polys = [("f", canonical_polynomial(g))] + [(window.achieved[r].label, window.achieved[r].poly) for r in chosen]
    worst = 0.0
    for _, P in polys:
        worst = max(worst, sphere_defect(extract_sphere_map(P, g, 30), MAP_POINTS, MAP_SEED))
    return worst <= MAP_TOLERANCE, f"max |sum|phi|^2 - 1| = {worst:.2e} over {len(polys)} maps x {MAP_POINTS} points"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "canonical equivalence", criterion_canonical),
    (2, "order-7 literal polynomial", criterion_seven_literal),
    (3, "lemma 1", criterion_lemma("1")),
    (4, "corollary 1", criterion_lemma("c1")),
    (5, "lemma 2", criterion_lemma("2")),
    (6, "lemma 3", criterion_lemma("3")),
    (7, "order-7 rank schedule", criterion_seven_schedule),
    (8, "theorem windows", criterion_windows),
    (9, "tiling", criterion_tiling),
    (10, "headline inequality", criterion_headline),
    (11, "membership", criterion_membership),
    (12, "sphere-map smoke test", criterion_map),
]


def run_criterion(number: int) -> CriterionResult:
    for num, title, fn in CRITERIA:
        if num == number:
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failed criterion, not an aborted run
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            return CriterionResult(num, title, ok, detail)
    raise KeyError(number)


def run_all() -> list[CriterionResult]:
    return [run_criterion(num) for num, _, _ in CRITERIA]
