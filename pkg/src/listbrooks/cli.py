"""``listbrooks`` command line.

Exit codes: 0 success, 1 negative verdict, 2 input error, 3 hypothesis
violation, 4 internal-invariant error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from listbrooks import avoidance
from listbrooks.coloring import DISTANCE3, DISTANCE4, first_conflict, validate_hypotheses
from listbrooks.errors import GraphError, HypothesisViolation, InternalInvariantError, ListError
from listbrooks.fileformat import (
    MODE_NAMES,
    ParseError,
    format_coloring,
    format_instance,
    instance_file_from,
    parse_coloring,
    parse_instance,
)
from listbrooks.instances import gen_fig2, gen_fig3, gen_join_distance2, gen_two_cliques, random_instance
from listbrooks.oracle import exact_avoid, exact_list_color
from listbrooks.search import PROBLEM1, PROBLEM2, search_counterexample
from listbrooks.solver import solve_distance3, solve_distance4

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_INTERNAL = 0, 1, 2, 3, 4
GENERATORS = ("fig2", "fig3", "two-cliques", "join-d2", "random")
EXACT = "exact"


def _load(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    inst = parse_instance(text)
    g = inst.graph()
    return inst, g, inst.list_assignment(g)


def cmd_solve(args: argparse.Namespace) -> int:
    inst, g, lists = _load(args.instance)
    P = frozenset(v for v in range(g.n) if len(lists[v]) < g.max_degree)
    mode = args.mode if args.mode != "auto" else None
    if mode is None:
        reports = [validate_hypotheses(g, P, lists, m) for m in (DISTANCE3, DISTANCE4)]
        ok = [r for r in reports if r.ok]
        if not ok:
            print("\n".join(str(r) for r in reports), file=sys.stderr)
            return EXIT_HYPOTHESIS
        mode = ok[0].mode
    solve = solve_distance3 if MODE_NAMES[mode] == DISTANCE3 else solve_distance4
    result = solve(g, P, lists, seed=args.seed)
    if args.trace:
        print(json.dumps(asdict(result.trace)), file=sys.stderr)
    sys.stdout.write(format_coloring(result.coloring))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    _, g, lists = _load(args.instance)
    found = exact_list_color(g, lists)
    if found is None:
        print("UNCOLORABLE")
        return EXIT_NEGATIVE
    sys.stdout.write(format_coloring(found))
    return EXIT_OK


def verify(g, lists, precolors, coloring) -> str | None:
    """First violation of totality, properness, lists or precolor avoidance; ``None`` if valid."""
    for v in coloring:
        if not 0 <= v < g.n:
            return f"vertex {v} out of range"
    missing = [v for v in range(g.n) if v not in coloring]
    if missing:
        return f"vertex {missing[0]} is uncolored"
    bad = first_conflict(g, coloring)
    if bad is not None:
        u, v = bad
        return f"edge {u} {v} is monochromatic (color {coloring[u]})"
    for v in range(g.n):
        if coloring[v] not in lists[v]:
            return f"vertex {v} has color {coloring[v]} outside its list {sorted(lists[v])}"
    for v, c in sorted(precolors.items()):
        if coloring[v] == c:
            return f"vertex {v} keeps its precolor {c}"
    return None


def cmd_verify(args: argparse.Namespace) -> int:
    inst, g, lists = _load(args.instance)
    coloring = parse_coloring(Path(args.coloring).read_text())
    problem = verify(g, lists, inst.precolors, coloring)
    if problem is not None:
        print(f"INVALID: {problem}")
        return EXIT_NEGATIVE
    print("OK")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.name == "fig3":
        b = gen_fig3()
    elif args.name == "random":
        if args.n is None:
            raise ValueError("gen random needs --n")
        b = random_instance(args.delta, args.n, MODE_NAMES[args.mode], args.seed)
    else:
        b = {"fig2": gen_fig2, "two-cliques": gen_two_cliques, "join-d2": gen_join_distance2}[args.name](args.delta)
    comments = [f"generated by listbrooks gen: {b.provenance}", f"expected verdict: {b.verdict}"]
    inst = instance_file_from(b.graph, b.lists, b.precoloring, b.mode, comments)
    sys.stdout.write(format_instance(inst))
    return EXIT_OK


def cmd_avoid(args: argparse.Namespace) -> int:
    inst, g, _ = _load(args.instance)
    phi = dict(inst.precolors)
    P = frozenset(phi)
    prop = args.prop
    if prop == EXACT:
        k = args.k if args.k is not None else g.max_degree
        found = exact_avoid(g, phi, k)
        print("# oracle-backed")
        if found is None:
            print("UNAVOIDABLE")
            return EXIT_NEGATIVE
        sys.stdout.write(format_coloring(found))
        return EXIT_OK
    if prop == avoidance.CONFLICT_GRAPH:
        f = avoidance.avoid_conflict_graph(g, P, phi, avoidance.AvoidanceParams(d0=args.d0, d1=args.d1))
    elif prop == avoidance.SPARSE:
        f = avoidance.avoid_sparse_precolored_subgraph(g, P, phi, args.d)
    elif prop == avoidance.INDEPENDENT_DENSE:
        f = avoidance.avoid_independent_dense(g, P, phi)
    elif prop == avoidance.SMALL_CLASSES:
        f = avoidance.avoid_small_color_classes(g, phi, args.k if args.k is not None else len(set(phi.values())))
    else:
        if args.base is None:
            raise ValueError("kplus1 needs --base with a proper k-coloring")
        base = parse_coloring(Path(args.base).read_text())
        k = args.k if args.k is not None else max(base.values(), default=0)
        f = avoidance.avoid_kplus1(g, phi, k, base)
    if prop in avoidance.ORACLE_BACKED:
        print("# oracle-backed")
    sys.stdout.write(format_coloring(f))
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    report = search_counterexample(args.delta, args.max_n, args.list_size, args.problem, args.budget, args.seed)
    text = report.jsonl()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="listbrooks", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="color an instance whose short lists sit on a scattered set")
    p.add_argument("instance")
    p.add_argument("--mode", choices=["auto", "d3", "d4"], default="auto")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trace", action="store_true", help="print the solver trace as JSON on stderr")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact list coloring by backtracking")
    p.add_argument("instance")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a coloring against an instance")
    p.add_argument("instance")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit a gadget or random instance")
    p.add_argument("name", choices=GENERATORS)
    p.add_argument("--delta", type=int, default=4)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mode", choices=["d3", "d4"], default="d4")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("avoid", help="find a coloring differing from the precolored vertices")
    p.add_argument("instance")
    p.add_argument("--prop", choices=(EXACT, *avoidance.PROPOSITIONS), default=EXACT)
    p.add_argument("--d0", type=int, default=1)
    p.add_argument("--d1", type=int, default=1)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--base", default=None, help="coloring file with the proper k-coloring (kplus1)")
    p.set_defaults(func=cmd_avoid)

    p = sub.add_parser("search", help="random counterexample search, JSON lines out")
    p.add_argument("--problem", choices=[PROBLEM1, PROBLEM2], required=True)
    p.add_argument("--delta", type=int, default=4)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--list-size", type=int, default=2)
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GraphError, ListError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisViolation as e:
        print(f"hypothesis violation:\n{e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except InternalInvariantError as e:
        print(f"internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
