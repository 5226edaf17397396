"""``crmaps`` command line.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error,
3 internal invariant violation.  Reports go to stdout; progress to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import acceptance
from .canonical import canonical_polynomial, group_product_polynomial, verify_canonical
from .coverage import check_theorem_window, coverage_scan, explore_ranks
from .cyclotomic import CyclotomicIntegrityError
from .groups import GroupSpec, InvalidGroupError, dangelo_general_bound, gap_bound_n, invariant_rank_N, parse_group
from .iteration import FamilyIndex, IterationMode, Schedule, ScheduleError, apply_custom, family_member, schedule_for
from .poly import Poly, rank
from .spheremap import MembershipError, extract_sphere_map
from .verify import LAWS, check_membership

log = logging.getLogger("crmaps")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2) itself; keep control flow here
        raise UsageError(f"{self.prog}: {message}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _emit(args, payload: dict, text: str | None = None) -> None:
    if getattr(args, "format", "json") == "text" and text is not None:
        out = text
    else:
        out = _dump(payload)
    if getattr(args, "out", None):
        Path(args.out).write_text(_dump(payload) + "\n")
        log.info("wrote %s", args.out)
    sys.stdout.write(out + "\n")


def _read_poly(path: str) -> Poly:
    try:
        return Poly.from_json(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse polynomial from {path}: {exc}") from None


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except ValueError as exc:
        raise UsageError(f"invalid JSON in {path}: {exc}") from None


def _group(args) -> GroupSpec:
    try:
        return parse_group(args.group, args.p)
    except InvalidGroupError as exc:
        raise UsageError(str(exc)) from None


def _add_group(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--group", required=True, choices=["g1", "g2", "scalar", "seven"])
    sp.add_argument("--p", required=True, type=int)


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells)


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


# -- subcommands ------------------------------------------------------------


def cmd_canonical(args) -> int:
    g = _group(args)
    if args.method == "product":
        P = group_product_polynomial(g)
    elif args.method == "closed":
        P = canonical_polynomial(g)
    else:
        report = verify_canonical(g)
        payload = {"poly": canonical_polynomial(g).to_dict(), "verification": report.to_dict()}
        _emit(args, payload, f"{g}: rank {report.rank} (N = {report.expected_rank}) "
                             f"{'match' if report.ok else 'MISMATCH'}\n{canonical_polynomial(g)}")
        return EXIT_OK if report.ok else EXIT_FAIL
    _emit(args, P.to_dict(), f"{g}: rank {rank(P)}\n{P}")
    return EXIT_OK


def _schedule(args, g: GroupSpec) -> Schedule:
    if not getattr(args, "schedule", None):
        return schedule_for(g)
    data = _read_json(args.schedule)
    try:
        return Schedule(g, tuple(tuple(int(v) for v in e) for e in data))
    except (ScheduleError, TypeError, ValueError) as exc:
        raise UsageError(f"bad schedule: {exc}") from None


def cmd_family(args) -> int:
    g = _group(args)
    sched = _schedule(args, g)
    idx = FamilyIndex(args.m0, args.m)
    try:
        idx.validate(sched)
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    P = family_member(g, idx, sched)
    _emit(args, P.to_dict(), f"{g} f[{args.m0},{args.m}]: rank {rank(P)}")
    return EXIT_OK


def cmd_iterate(args) -> int:
    g = _group(args)
    P = _read_poly(args.input)
    raw = _read_json(args.moves)
    try:
        moves = [(tuple(int(v) for v in m["exp"]), IterationMode(m["mode"])) for m in raw]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad moves file: {exc}") from None
    Q = apply_custom(P, moves, g)
    _emit(args, Q.to_dict(), f"rank {rank(P)} -> {rank(Q)}")
    return EXIT_OK


def cmd_rank(args) -> int:
    P = _read_poly(args.input)
    _emit(args, {"rank": rank(P), "terms": len(P), "degree": P.degree()}, str(rank(P)))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _group(args)
    P = _read_poly(args.input)
    report = check_membership(P, g)
    payload = report.to_dict() | {"rank": rank(P), "group": g.kind.value, "p": g.p}
    flags = ", ".join(f"{k}={payload[k]}" for k in ("nonneg_ok", "hyperplane_ok", "weights_ok"))
    _emit(args, payload, f"{'member' if report.ok else 'NOT a member'} of rank {rank(P)} ({flags})")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_lemmas(args) -> int:
    if args.p_min > args.p_max:
        raise UsageError("--p-min exceeds --p-max")
    laws = [args.law] if args.law else (["2", "3"] if args.group == "scalar" else ["1", "c1"])
    if args.group == "seven":
        raise UsageError("the rank lemmas concern g1, g2 and scalar; use coverage for seven")
    if args.group == "scalar" and not set(laws) <= {"2", "3"}:
        raise UsageError("laws 1 and c1 apply to g1/g2 only")
    if args.group != "scalar" and not set(laws) <= {"1", "c1"}:
        raise UsageError("laws 2 and 3 apply to the scalar group only")
    p_values = list(range(args.p_min, args.p_max + 1))
    if args.group == "scalar":
        p_values = [p for p in p_values if p >= 2]
    else:
        p_values = [p for p in p_values if p >= 3 and p % 2]
    if not p_values:
        raise UsageError("no valid p in the requested range")
    reports = []
    for law in laws:
        log.info("checking law %s for %s, p in %s", law, args.group, p_values)
        if law in ("1", "c1"):
            reports.append(LAWS[law](args.group, p_values, check_members=args.members))
        else:
            reports.append(LAWS[law](p_values, check_members=args.members))
    ok = all(r.ok for r in reports)
    header = ["law", "p", "m0", "m", "expected", "computed", "ok"]
    rows = [[r.law, i.p, i.m0, i.m, i.expected, i.computed, i.ok] for r in reports for i in r.instances]
    if args.csv:
        sys.stdout.write(_csv(rows, header) + "\n")
    else:
        _emit(args, {"ok": ok, "reports": [r.to_dict() for r in reports]}, _table(rows, header))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_coverage(args) -> int:
    g = _group(args)
    N, n = invariant_rank_N(g), gap_bound_n(g)
    r_max = args.max_rank if args.max_rank is not None else n + N - 2
    if r_max < n:
        raise UsageError(f"--max-rank {r_max} is below n = {n}")
    report = coverage_scan(g, r_max) if r_max > n + N - 2 else check_theorem_window(g)
    payload = report.to_dict(include_polys=args.polys)
    payload["general_bound"] = dangelo_general_bound(g)
    rows = [[r, w.label, w.member] for r, w in sorted(report.achieved.items())]
    if args.csv:
        sys.stdout.write(_csv(rows, ["rank", "witness", "member"]) + "\n")
    else:
        text = f"{g}: N={N} n={n} window={list(report.window)} holes={report.holes}\n" + _table(rows, ["rank", "witness", "member"])
        _emit(args, payload, text)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_map(args) -> int:
    g = _group(args)
    P = _read_poly(args.input)
    try:
        smap = extract_sphere_map(P, g, args.precision)
    except MembershipError as exc:
        log.error("%s", exc)
        return EXIT_FAIL
    text = "\n".join(f"sqrt({c.coeff}) * z^{list(c.exp)}  ~ {c.sqrt}" for c in smap.components)
    _emit(args, smap.to_dict(), text)
    return EXIT_OK


def cmd_explore(args) -> int:
    g = _group(args)
    if args.depth < 0 or args.beam < 1:
        raise UsageError("--depth must be >= 0 and --beam >= 1")
    result = explore_ranks(g, args.depth, args.beam)
    _emit(args, result.to_dict(), f"{g}: observed ranks {sorted(result.observed)}")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    results = []
    for num, title, _ in acceptance.CRITERIA:
        log.info("criterion %d: %s", num, title)
        r = acceptance.run_criterion(num)
        results.append(r)
        sys.stdout.write(r.line() + "\n")
        sys.stdout.flush()
    passed = sum(r.ok for r in results)
    sys.stdout.write(f"{passed}/{len(results)} criteria passed\n")
    return EXIT_OK if passed == len(results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crmaps", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="progress lines on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--format", choices=["json", "text"], default="json")
        return sp

    sp = add("canonical", cmd_canonical, "build the canonical invariant polynomial")
    _add_group(sp)
    sp.add_argument("--method", choices=["product", "closed", "both"], default="closed")
    sp.add_argument("--out")

    sp = add("family", cmd_family, "build f_{m0,m}")
    _add_group(sp)
    sp.add_argument("--m0", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--schedule", help="JSON list of exponent triples replacing the default schedule")
    sp.add_argument("--out")

    sp = add("iterate", cmd_iterate, "apply a list of F/G moves to a polynomial")
    _add_group(sp)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--moves", required=True)
    sp.add_argument("--out")

    sp = add("rank", cmd_rank, "rank of a polynomial")
    sp.add_argument("--in", dest="input", required=True)

    sp = add("verify", cmd_verify, "check membership of a polynomial")
    _add_group(sp)
    sp.add_argument("--in", dest="input", required=True)

    sp = add("lemmas", cmd_lemmas, "check the rank laws over a range of p")
    sp.add_argument("--group", required=True, choices=["g1", "g2", "scalar", "seven"])
    sp.add_argument("--p-min", type=int, required=True)
    sp.add_argument("--p-max", type=int, required=True)
    sp.add_argument("--law", choices=sorted(LAWS))
    sp.add_argument("--members", action="store_true", help="also check membership of every polynomial")
    sp.add_argument("--csv", action="store_true")

    sp = add("coverage", cmd_coverage, "certify the rank window and tiling up to a bound")
    _add_group(sp)
    sp.add_argument("--max-rank", type=int)
    sp.add_argument("--polys", action="store_true", help="embed witness polynomials in the report")
    sp.add_argument("--csv", action="store_true")

    sp = add("map", cmd_map, "extract the sphere map of a member polynomial")
    _add_group(sp)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--precision", type=int, default=50)
    sp.add_argument("--out")

    sp = add("explore", cmd_explore, "bounded search for ranks reachable by F/G moves")
    _add_group(sp)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--beam", type=int, default=64)

    add("reproduce", cmd_reproduce, "run the full acceptance matrix")
    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="crmaps: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"crmaps: {exc}\n")
        return EXIT_USAGE
    except CyclotomicIntegrityError as exc:
        sys.stderr.write(f"crmaps: internal invariant violated: {exc}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
