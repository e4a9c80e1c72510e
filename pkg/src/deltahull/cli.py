"""Command-line entry point.

Subcommands: vertices, verify, generate, count, stats, diameter. Reports go
to stdout as canonical JSON (or to --json PATH); diagnostics go to stderr.
Exit codes: 0 ok, 2 infeasible, 3 not pointed, 4 parse/usage, 5 bound
violated, 6 unbounded, 7 budget exceeded.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import asdict
from fractions import Fraction

from . import counting, graphs, hull, model, serialize, stats, subdivision
from .errors import (
    BoundViolated,
    BudgetExceeded,
    Infeasible,
    NotPointed,
    ParseError,
    Unbounded,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_NOT_POINTED = 3
EXIT_PARSE = 4
EXIT_BOUND_VIOLATED = 5
EXIT_UNBOUNDED = 6
EXIT_BUDGET = 7


def default_budget() -> int:
    return int(os.environ.get("DELTAHULL_BUDGET", "100000"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltahull",
        description="Exact vertex enumeration and subdeterminant analysis "
        "for rational H-polyhedra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help="combinatorial scan budget (default: "
                        "DELTAHULL_BUDGET or 100000)")
    common.add_argument("--json", metavar="PATH", default=None,
                        help="write the report to PATH instead of stdout")
    common.add_argument("--seed", type=int, default=None,
                        help="echoed into the report for reproducibility "
                        "bookkeeping")

    instance = argparse.ArgumentParser(add_help=False, parents=[common])
    instance.add_argument("path", help="instance file (JSON or CSV)")
    instance.add_argument("--feasible-point", metavar="FILE", default=None,
                          help="JSON array of rationals to skip phase one")
    instance.add_argument("--strip-redundant", action="store_true",
                          help="remove redundant rows before analysis "
                          "(default: warn only)")

    p = sub.add_parser("vertices", parents=[instance],
                       help="enumerate vertices and the fan triangulation")
    p.set_defaults(func=cmd_vertices)

    p = sub.add_parser("verify", parents=[instance],
                       help="run every bound check end to end")
    p.add_argument("--count", action="store_true",
                   help="also count integer points when bounded")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", parents=[instance],
                       help="subdeterminant statistics and volume bounds")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("diameter", parents=[instance],
                       help="exact vertex-edge graph diameter")
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("count", parents=[instance],
                       help="count integer points by exact box scan")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("generate", parents=[common],
                       help="emit a subdivision-family fan and dual instance")
    p.add_argument("prefix", help="output path prefix")
    p.add_argument("--n", type=int, required=True, help="dimension (>= 2)")
    p.add_argument("--k", type=int, required=True, help="subdivision depth")
    p.add_argument("--normalize", type=int, metavar="DIGITS", default=None,
                   help="also emit rays normalized to unit length at "
                   "10^-DIGITS precision")
    p.set_defaults(func=cmd_generate)
    return parser


def _emit(report: dict, args) -> None:
    text = serialize.canonical_dumps(report)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _warn(message: str) -> None:
    print(f"deltahull: {message}", file=sys.stderr)


def _load_instance(args) -> tuple[model.HPolyhedron, list | None, list[int]]:
    doc = serialize.load_instance_path(args.path)
    p = doc.polyhedron
    feasible = doc.feasible_point
    if args.feasible_point:
        with open(args.feasible_point, "r", encoding="utf-8") as fh:
            feasible = [serialize.parse_rational(x) for x in json.load(fh)]
    redundant = model.redundancy_scan(p)
    if redundant and args.strip_redundant:
        _warn(f"stripped redundant rows {redundant}")
        p = model.drop_rows(p, redundant)
        redundant = []
    elif redundant:
        _warn(f"redundant rows present: {redundant}")
    return p, feasible, redundant


def _instance_block(p: model.HPolyhedron, redundant: list[int]) -> dict:
    return {
        "name": p.name,
        "m": p.m,
        "n": p.n,
        "A": [list(row) for row in p.a],
        "b": list(p.b),
        "redundant_rows": redundant,
    }


def _vertices_block(result: hull.EnumerationResult) -> list[dict]:
    return [
        {"point": list(v.point), "tight": list(v.tight), "simple": v.simple}
        for v in result.vertices
    ]


def _work_block(p: model.HPolyhedron, result: hull.EnumerationResult) -> dict:
    c = result.counters
    return {
        "bases_visited": c.bases_visited,
        "ratio_mults": c.ratio_mults,
        "max_basis_mults": c.max_basis_mults,
        "per_basis_mult_cap": 2 * p.n * p.n * p.m,
    }


def _stats_block(fan_stats: stats.FanStats) -> dict:
    return {
        "delta": fan_stats.delta,
        "delta_witness": list(fan_stats.witness),
        "delta_avg": fan_stats.delta_avg,
        "delta_min": fan_stats.delta_min,
        "cone_count": fan_stats.cone_count,
        "fan_volume": fan_stats.fan_volume,
        "fan_volume_float": float(fan_stats.fan_volume),
    }


def cmd_vertices(args) -> int:
    p, feasible, redundant = _load_instance(args)
    t0 = time.perf_counter()
    result = hull.run_enumeration(p, feasible)
    report = {
        "instance": _instance_block(p, redundant),
        "vertices": _vertices_block(result),
        "rays": [list(d) for _, d in result.rays],
        "triangulation": {
            "cones_by_vertex": [
                [list(c) for c in group]
                for group in result.triangulation.cones_by_vertex
            ]
        },
        "work": _work_block(p, result),
        "timings": {"enumeration_s": round(time.perf_counter() - t0, 6)},
    }
    if args.seed is not None:
        report["seed"] = args.seed
    _emit(report, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    p, feasible, redundant = _load_instance(args)
    budget = args.budget if args.budget is not None else default_budget()
    t0 = time.perf_counter()
    result = hull.run_enumeration(p, feasible)
    cones = result.triangulation.cones
    fan_stats = stats.triangulation_stats(p.rows(), cones, budget)
    bounds: dict[str, dict] = {}
    try:
        bounds["vertex-count"] = asdict(
            stats.check_vertex_bound(p, result, fan_stats)
        )
        volume_rep, count_rep = stats.check_fan_bound(p.rows(), fan_stats)
        bounds["fan-volume"] = asdict(volume_rep)
        bounds["cone-count"] = asdict(count_rep)

        transformed = stats.totally_unimodular_transform(
            p.rows(), fan_stats.witness
        )
        try:
            tu_ok = stats.verify_total_unimodularity(transformed, budget)
            bounds["total-unimodularity"] = {
                "passed": tu_ok,
                "minors_checked": stats.count_minors(p.m, p.n),
            }
            if not tu_ok:
                raise BoundViolated("transformed system has a minor above 1")
        except BudgetExceeded as exc:
            bounds["total-unimodularity"] = {"skipped": True, "reason": str(exc)}

        wideness = stats.wideness_and_diameter_bound(p, fan_stats, cones)
        bounds["delta-distance-floor"] = {
            "passed": True,
            "sin_sq_min": wideness.sin_sq_min,
            "floor": wideness.lemma_floor,
            "delta_distance_float": wideness.delta_distance,
        }

        graph = graphs.build_polytope_graph(p, result)
        diameter = graphs.graph_diameter(graph) if result.bounded else None
        if result.bounded:
            passed = diameter <= wideness.diameter_bound * (1 + stats.RELATIVE_SLACK)
            bounds["tau-diameter"] = {
                "passed": passed,
                "diameter": diameter,
                "bound": wideness.diameter_bound,
                "tau": wideness.tau,
            }
            if not passed:
                raise BoundViolated(
                    f"diameter {diameter} above bound {wideness.diameter_bound}"
                )
        else:
            bounds["tau-diameter"] = {
                "skipped": True,
                "reason": "unbounded instance",
            }
    except BoundViolated as exc:
        _warn(f"bound violated: {exc}")
        _warn("reproducer instance follows")
        print(serialize.dump_instance(p), file=sys.stderr)
        return EXIT_BOUND_VIOLATED

    report = {
        "instance": _instance_block(p, redundant),
        "vertices": _vertices_block(result),
        "rays": [list(d) for _, d in result.rays],
        "stats": _stats_block(fan_stats),
        "graph": {
            "adjacency": {str(u): vs for u, vs in graph.adjacency.items()},
            "diameter": diameter,
        },
        "bounds": bounds,
        "work": _work_block(p, result),
        "timings": {"total_s": round(time.perf_counter() - t0, 6)},
    }
    if args.count and result.bounded:
        count = counting.count_integer_points_bruteforce(p, result)
        report["counts"] = {
            "integer_points": count.count,
            "box": [list(b) for b in count.box],
            "cells_scanned": count.cells_scanned,
            "cost": asdict(counting.estimate_counting_cost(fan_stats)),
        }
    if args.seed is not None:
        report["seed"] = args.seed
    _emit(report, args)
    return EXIT_OK


def cmd_stats(args) -> int:
    p, feasible, redundant = _load_instance(args)
    budget = args.budget if args.budget is not None else default_budget()
    result = hull.run_enumeration(p, feasible)
    fan_stats = stats.triangulation_stats(
        p.rows(), result.triangulation.cones, budget
    )
    vertex_rep = stats.check_vertex_bound(p, result, fan_stats)
    volume_rep, count_rep = stats.check_fan_bound(p.rows(), fan_stats)
    report = {
        "instance": _instance_block(p, redundant),
        "stats": _stats_block(fan_stats),
        "bounds": {
            "vertex-count": asdict(vertex_rep),
            "fan-volume": asdict(volume_rep),
            "cone-count": asdict(count_rep),
        },
        "work": _work_block(p, result),
    }
    if args.seed is not None:
        report["seed"] = args.seed
    _emit(report, args)
    return EXIT_OK


def cmd_diameter(args) -> int:
    p, feasible, redundant = _load_instance(args)
    result = hull.run_enumeration(p, feasible)
    graph = graphs.build_polytope_graph(p, result)
    report = {
        "instance": _instance_block(p, redundant),
        "graph": {
            "adjacency": {str(u): vs for u, vs in graph.adjacency.items()},
            "diameter": graphs.graph_diameter(graph),
            "nodes": len(graph.nodes),
            "edges": graph.edge_count,
        },
    }
    if args.seed is not None:
        report["seed"] = args.seed
    _emit(report, args)
    return EXIT_OK


def cmd_count(args) -> int:
    p, feasible, redundant = _load_instance(args)
    budget = args.budget if args.budget is not None else counting.DEFAULT_CELL_BUDGET
    result = hull.run_enumeration(p, feasible)
    count = counting.count_integer_points_bruteforce(p, result, budget)
    report = {
        "instance": _instance_block(p, redundant),
        "counts": {
            "integer_points": count.count,
            "box": [list(b) for b in count.box],
            "cells_scanned": count.cells_scanned,
        },
    }
    try:
        fan_stats = stats.triangulation_stats(
            p.rows(), result.triangulation.cones, default_budget()
        )
        report["counts"]["cost"] = asdict(
            counting.estimate_counting_cost(fan_stats)
        )
    except BudgetExceeded:
        report["counts"]["cost"] = None
    if args.seed is not None:
        report["seed"] = args.seed
    _emit(report, args)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.n < 2 or args.k < 0:
        _warn("generate needs --n >= 2 and --k >= 0")
        return EXIT_PARSE
    fans = subdivision.build_subdivision_fans(args.n, args.k)
    lifted = subdivision.lift_polytope(fans)
    fan = fans[-1]
    fan_path = f"{args.prefix}.fan.json"
    instance_path = f"{args.prefix}.instance.json"
    with open(fan_path, "w", encoding="utf-8") as fh:
        fh.write(serialize.dump_fan(fan) + "\n")
    dual = lifted.dual_polyhedron()
    with open(instance_path, "w", encoding="utf-8") as fh:
        origin = [Fraction(0)] * args.n
        fh.write(serialize.dump_instance(dual, feasible_point=origin) + "\n")
    report = {
        "expected": subdivision.expected_counts(args.n, args.k),
        "rays": len(fan.rays),
        "cones": len(fan.cones),
        "files": {"fan": fan_path, "instance": instance_path},
    }
    if args.normalize is not None:
        normalized = subdivision.normalize_rays(fan.rays, args.normalize)
        norm_path = f"{args.prefix}.rays-normalized.json"
        with open(norm_path, "w", encoding="utf-8") as fh:
            fh.write(
                serialize.canonical_dumps(
                    {"digits": args.normalize,
                     "rays": [list(r) for r in normalized]}
                )
                + "\n"
            )
        report["files"]["rays_normalized"] = norm_path
    _emit(report, args)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _warn(f"parse error: {exc}")
        return EXIT_PARSE
    except NotPointed as exc:
        _warn(f"not pointed: {exc}")
        return EXIT_NOT_POINTED
    except Infeasible as exc:
        _warn(f"infeasible: {exc}")
        return EXIT_INFEASIBLE
    except Unbounded as exc:
        _warn(f"unbounded: {exc}")
        return EXIT_UNBOUNDED
    except BudgetExceeded as exc:
        _warn(f"budget exceeded: {exc}")
        return EXIT_BUDGET
    except BoundViolated as exc:
        _warn(f"bound violated: {exc}")
        return EXIT_BOUND_VIOLATED
    except OSError as exc:
        _warn(str(exc))
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
