"""Command-line front end.

Subcommands: analyze, orbit, search, graph, bounds, sunit-solve,
verify-corollary3.  Every subcommand supports --json; JSON reports are
deterministic (no timestamps) and print big integers as exact decimal
strings.  Exit codes: 0 success, 1 usage error, 2 computation error
(budget exhausted, unsupported configuration, undecidable orbit), 3 a
verification subcommand found a bound violation (which would indicate an
implementation bug, not a counterexample).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bounds import BoundContext, compute_bounds, preper_total_bound, verify_report
from .dynamics import (
    Budget,
    OrbitReport,
    functional_graph,
    orbit,
    preperiodic_search,
)
from .errors import ArithDynError, BudgetExceededError, MapParseError
from .fields import (
    QQ,
    BaseField,
    archimedean_place,
    function_field,
    infinite_place,
    parse_place,
    parse_place_set,
    place_set,
)
from .parsing import parse_element, parse_map, parse_point
from .ratmap import bad_places, reduce_map, resultant
from .sunit import UnitEquationInstance, unit_equation_report


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_field(token: str) -> BaseField:
    token = token.strip()
    if token in ("Q", "q"):
        return QQ
    if token.lower().startswith("fp:"):
        return function_field(int(token[3:]))
    raise UsageError(f"unknown field {token!r} (use Q or Fp:<prime>)")


def _budget(args) -> Budget:
    return Budget(
        max_steps=getattr(args, "max_steps", None) or 2000,
        height_cap=getattr(args, "height_cap", None),
    )


def _point_json(pt) -> str:
    return str(pt)


def _orbit_json(outcome) -> dict:
    if isinstance(outcome, OrbitReport):
        return {
            "start": _point_json(outcome.start),
            "tail": [_point_json(q) for q in outcome.tail],
            "cycle": [_point_json(q) for q in outcome.cycle],
            "m": outcome.m,
            "n": outcome.n,
            "undecided": False,
            "divergent": False,
        }
    return {
        "start": _point_json(outcome.start),
        "tail": [],
        "cycle": [],
        "m": 0,
        "n": 0,
        "undecided": not outcome.divergent,
        "divergent": outcome.divergent,
        "steps": outcome.steps,
        "last_height": str(outcome.last_height),
    }


def _emit(args, result: dict, text_lines: list[str]) -> None:
    if args.json:
        report = {
            "tool": "arithdyn",
            "version": __version__,
            "command": args.command,
            "result": result,
        }
        print(json.dumps(report, indent=2))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# subcommand implementations


def _cmd_analyze(args) -> int:
    field = _parse_field(args.field)
    phi = parse_map(args.map, field)
    res = resultant(phi)
    bad = sorted(bad_places(phi), key=lambda p: p.sort_key())
    # the smallest S making the orbit bounds applicable to this map
    default_S = place_set(
        field, set(bad) | {infinite_place(field) if not field.is_rationals else archimedean_place()}
    )
    ctx = BoundContext(field.char, 1, default_S.size)
    bs = compute_bounds(ctx)
    result = {
        "map": phi.coefficient_arrays() | {"affine": phi.affine_str()},
        "field": str(field),
        "degree": phi.degree,
        "resultant": str(res),
        "bad_places": [p.serialize() for p in bad],
        "good_reduction_everywhere": not bad,
        "default_S": default_S.serialize(),
        "bounds": {
            "eta": str(bs.eta),
            "cycle_bound": str(bs.cycle_bound),
        },
    }
    _emit(
        args,
        result,
        [
            f"map: {phi.affine_str()} over {field}",
            f"degree: {phi.degree}",
            f"resultant: {res}",
            "bad places: " + (", ".join(str(p) for p in bad) if bad else "none"),
            f"default S: {default_S}",
            f"orbit-size bound eta: {bs.eta}; cycle-length bound: {bs.cycle_bound}",
        ],
    )
    return 0


def _cmd_orbit(args) -> int:
    field = _parse_field(args.field)
    phi = parse_map(args.map, field)
    start = parse_point(field, args.point)
    budget = _budget(args)
    outcome = orbit(phi, start, budget)
    result = _orbit_json(outcome) | {
        "map": phi.affine_str(),
        "field": str(field),
        "budget": {"max_steps": budget.max_steps, "height_cap": budget.height_cap},
    }
    if isinstance(outcome, OrbitReport):
        lines = [
            f"start: {outcome.start}",
            "tail: " + (", ".join(str(q) for q in outcome.tail) or "(empty)"),
            "cycle: " + ", ".join(str(q) for q in outcome.cycle),
            f"tail length m = {outcome.m}, cycle length n = {outcome.n}, "
            f"orbit size = {outcome.total}",
        ]
        _emit(args, result, lines)
        return 0
    if outcome.divergent:
        _emit(
            args,
            result,
            [f"start: {outcome.start}", "orbit diverges (escape criterion): not preperiodic"],
        )
        return 0
    _emit(
        args,
        result,
        [
            f"start: {outcome.start}",
            f"undecided: budget exhausted after {outcome.steps} steps "
            f"(height {outcome.last_height})",
        ],
    )
    return 2


def _cmd_search(args) -> int:
    field = _parse_field(args.field)
    phi = parse_map(args.map, field)
    budget = _budget(args)
    res = preperiodic_search(phi, args.height, budget)
    result = {
        "map": phi.affine_str(),
        "field": str(field),
        "height": args.height,
        "budget": {"max_steps": budget.max_steps, "height_cap": budget.height_cap},
        "preperiodic": [_orbit_json(r) for r in res.preperiodic],
        "preperiodic_count": len(res.preperiodic),
        "undecided": [_point_json(p) for p in res.undecided],
        "scanned": res.scanned,
        "divergent": res.divergent,
    }
    lines = [
        f"map: {phi.affine_str()} over {field}, height <= {args.height}",
        f"scanned {res.scanned} points: {len(res.preperiodic)} preperiodic, "
        f"{res.divergent} provably divergent, {len(res.undecided)} undecided",
    ]
    for r in res.preperiodic:
        lines.append(
            f"  {r.start}: tail {[str(q) for q in r.tail]}, "
            f"cycle {[str(q) for q in r.cycle]} (m={r.m}, n={r.n})"
        )
    if res.undecided:
        lines.append("undecided points: " + ", ".join(str(p) for p in res.undecided))
    _emit(args, result, lines)
    return 0


def _cmd_graph(args) -> int:
    field = _parse_field(args.field)
    phi = parse_map(args.map, field)
    place = parse_place(field, args.place)
    psi = reduce_map(phi, place)
    g = functional_graph(psi, node_budget=args.node_budget)
    from .projective import ReducedPoint

    labels = [str(ReducedPoint.from_code(g.rfield, c)) for c in range(g.node_count)]
    result = {
        "map": phi.affine_str(),
        "place": place.serialize(),
        "q": g.rfield.q,
        "nodes": g.node_count,
        "labels": labels,
        "successors": list(g.successors),
        "cycles": [list(c) for c in g.cycles],
        "tail_depth": list(g.tail_depth),
    }
    lines = [
        f"map: {phi.affine_str()} reduced at {place} (q = {g.rfield.q})",
        f"{g.node_count} nodes, {len(g.cycles)} cycles",
    ]
    for cyc in g.cycles:
        lines.append("  cycle: " + " -> ".join(labels[c] for c in cyc))
    tails = sum(1 for d in g.tail_depth if d)
    lines.append(f"  tail nodes: {tails}, max depth {max(g.tail_depth)}")
    _emit(args, result, lines)
    return 0


def _cmd_bounds(args) -> int:
    ctx = BoundContext(args.char, args.degree, args.s, args.map_degree)
    bs = compute_bounds(ctx)
    result = {
        "eta": str(bs.eta),
        "cycle_bound": str(bs.cycle_bound),
        "i_bound": str(bs.i_bound),
    }
    if bs.r_bound is not None:
        result["r_bound"] = str(bs.r_bound)
    if bs.evertse_bound is not None:
        result["evertse_bound"] = str(bs.evertse_bound)
    lines = [
        f"context: characteristic {ctx.p}, D = {ctx.D}, |S| = {ctx.s}",
        f"orbit-size bound eta: {bs.eta}",
        f"cycle-length bound: {bs.cycle_bound}",
        f"small-residue-field bound: {bs.i_bound}",
    ]
    if bs.r_bound is not None:
        lines.append(f"unit-equation solution bound: {bs.r_bound}")
    if bs.evertse_bound is not None:
        lines.append(f"two-unit solution bound (rank 2(|S|-1)): {bs.evertse_bound}")
    if args.map_degree:
        try:
            total = preper_total_bound(bs.eta, bs.cycle_bound, args.map_degree)
            result["preper_total_bound"] = str(total)
            lines.append(f"preperiodic-set bound for degree {args.map_degree}: {total}")
        except BudgetExceededError:
            result["preper_total_bound"] = None
            result["preper_total_note"] = (
                f"d^B(d^n+1) with B={bs.eta}, n=lcm(1..{bs.cycle_bound}) "
                "exceeds the digit budget"
            )
            lines.append(
                f"preperiodic-set bound: too large to print "
                f"(B={bs.eta}, n=lcm(1..{bs.cycle_bound}))"
            )
    _emit(args, result, lines)
    return 0


def _cmd_sunit_solve(args) -> int:
    field = _parse_field(args.field)
    S = parse_place_set(field, args.S)
    a = parse_element(field, args.a)
    b = parse_element(field, args.b)
    inst = UnitEquationInstance(a, b, S, args.cap)
    report = unit_equation_report(inst)
    result = {
        "a": str(a),
        "b": str(b),
        "S": S.serialize(),
        "cap": args.cap,
        "solutions": [[str(x), str(y)] for x, y in report.solutions],
        "count": len(report.solutions),
        "s_trivial": report.s_trivial,
        "bound": None if report.bound is None else str(report.bound),
        "within_bound": report.within_bound,
    }
    def _wrap(e) -> str:
        s = str(e)
        return f"({s})" if ("+" in s or "-" in s[1:]) else s

    lines = [
        f"{_wrap(a)}*x + {_wrap(b)}*y = 1 over {field}, "
        f"S = {S}, exponent cap {args.cap}",
        f"S-trivial: {report.s_trivial}",
        f"solutions found within cap: {len(report.solutions)}",
    ]
    for x, y in report.solutions:
        lines.append(f"  x = {x}, y = {y}")
    if report.bound is not None:
        lines.append(
            f"solution-count bound: {report.bound} "
            f"({'OK' if report.within_bound else 'VIOLATED'})"
        )
    _emit(args, result, lines)
    if report.within_bound is False:
        return 3
    return 0


def _cmd_verify_corollary3(args) -> int:
    field = QQ
    budget = _budget(args)
    maps = []
    if args.maps_file:
        with open(args.maps_file, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if line:
                    maps.append((line, parse_map(line, field)))
    else:
        lo, hi = args.c_range
        for c in range(lo, hi + 1):
            expr = f"z^2{'+' if c >= 0 else '-'}{abs(c)}" if c else "z^2"
            maps.append((expr, parse_map(expr, field)))
    S = place_set(field, [archimedean_place()])
    ctx = BoundContext(0, 1, 1)
    per_map = []
    max_cycle = (0, None, None)
    max_orbit = (0, None, None)
    violations = []
    for expr, phi in maps:
        if bad_places(phi):
            raise ArithDynError(
                f"{expr} does not have good reduction everywhere "
                f"(bad at {[str(p) for p in sorted(bad_places(phi), key=lambda q: q.sort_key())]})"
            )
        res = preperiodic_search(phi, args.height, budget)
        worst_n = max((r.n for r in res.preperiodic), default=0)
        worst_total = max((r.total for r in res.preperiodic), default=0)
        for r in res.preperiodic:
            if r.n > max_cycle[0]:
                max_cycle = (r.n, expr, str(r.start))
            if r.total > max_orbit[0]:
                max_orbit = (r.total, expr, str(r.start))
            for check in verify_report(r, phi, ctx, S):
                if not check.passed:
                    violations.append(
                        {
                            "map": expr,
                            "start": str(r.start),
                            "check": check.name,
                            "observed": check.observed,
                            "bound": check.bound,
                        }
                    )
        per_map.append(
            {
                "map": expr,
                "preperiodic": len(res.preperiodic),
                "max_cycle": worst_n,
                "max_orbit": worst_total,
                "undecided": len(res.undecided),
            }
        )
    result = {
        "height": args.height,
        "maps": len(maps),
        "per_map": per_map,
        "max_cycle": {"value": max_cycle[0], "map": max_cycle[1], "point": max_cycle[2]},
        "max_orbit": {"value": max_orbit[0], "map": max_orbit[1], "point": max_orbit[2]},
        "violations": violations,
        "all_pass": not violations,
    }
    lines = [
        f"swept {len(maps)} maps at height {args.height}",
        f"largest cycle: {max_cycle[0]} ({max_cycle[1]} at {max_cycle[2]})",
        f"largest orbit: {max_orbit[0]} ({max_orbit[1]} at {max_orbit[2]})",
        "all bounds hold" if not violations else f"{len(violations)} VIOLATIONS",
    ]
    _emit(args, result, lines)
    return 0 if not violations else 3


# ---------------------------------------------------------------------------
# argument wiring


def _build_parser() -> _Parser:
    parser = _Parser(prog="arithdyn", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_budgets=True):
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        if with_budgets:
            sp.add_argument("--max-steps", type=int, default=None)
            sp.add_argument("--height-cap", type=int, default=None)

    sp = sub.add_parser("analyze", help="degree, resultant, bad places")
    sp.add_argument("--field", required=True)
    sp.add_argument("map")
    add_common(sp, with_budgets=False)

    sp = sub.add_parser("orbit", help="tail/cycle decomposition of one point")
    sp.add_argument("--field", required=True)
    sp.add_argument("map")
    sp.add_argument("--point", required=True)
    add_common(sp)

    sp = sub.add_parser("search", help="preperiodic points up to a height")
    sp.add_argument("--field", required=True)
    sp.add_argument("map")
    sp.add_argument("--height", type=int, required=True)
    add_common(sp)

    sp = sub.add_parser("graph", help="functional graph of the reduced map")
    sp.add_argument("--field", required=True)
    sp.add_argument("map")
    sp.add_argument("--place", required=True)
    sp.add_argument("--node-budget", type=int, default=100_000)
    add_common(sp, with_budgets=False)

    sp = sub.add_parser("bounds", help="evaluate all bound formulas")
    sp.add_argument("--char", type=int, required=True)
    sp.add_argument("--degree", type=int, required=True, help="extension degree D")
    sp.add_argument("--s", type=int, required=True, help="|S|")
    sp.add_argument("--map-degree", type=int, default=None)
    add_common(sp, with_budgets=False)

    sp = sub.add_parser("sunit-solve", help="a*x + b*y = 1 in S-units, brute force")
    sp.add_argument("--field", required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--S", required=True, help="';'-separated place tokens")
    sp.add_argument("--cap", type=int, required=True)
    add_common(sp, with_budgets=False)

    sp = sub.add_parser(
        "verify-corollary3",
        help="sweep everywhere-good maps; cycles <= 3 and orbits <= 12 over Q",
    )
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--c-range", type=_parse_range, default=None)
    group.add_argument("--maps-file", default=None)
    sp.add_argument("--height", type=int, default=100)
    add_common(sp)

    return parser


def _parse_range(token: str) -> tuple[int, int]:
    try:
        lo, hi = token.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError as exc:
        raise UsageError(f"bad range {token!r}, expected LO:HI") from exc
    if lo > hi:
        raise UsageError(f"empty range {token!r}")
    return lo, hi


_HANDLERS = {
    "analyze": _cmd_analyze,
    "orbit": _cmd_orbit,
    "search": _cmd_search,
    "graph": _cmd_graph,
    "bounds": _cmd_bounds,
    "sunit-solve": _cmd_sunit_solve,
    "verify-corollary3": _cmd_verify_corollary3,
}


def _diagnostic(kind: str, message: str) -> None:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def run(argv: list[str]) -> int:
    """Entry point returning the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _diagnostic("usage", str(exc))
        return 1
    try:
        return _HANDLERS[args.command](args)
    except (UsageError, MapParseError) as exc:
        _diagnostic("usage", str(exc))
        return 1
    except ArithDynError as exc:
        _diagnostic(type(exc).__name__, str(exc))
        return 2
    except OSError as exc:
        _diagnostic("io", str(exc))
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
