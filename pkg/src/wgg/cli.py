"""Command line interface: solve, gen, verify, bench.

Exit codes are a stable scripting contract:

    0  success
    1  usage error (bad flags, invalid generator spec)
    2  parse error (malformed graph or report file)
    3  precondition failure (e.g. forest solver on a cyclic graph) or a
       report that fails verification
    4  internal error
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import statistics
import sys
import time
from typing import Optional, Sequence

from .dispatch import ALGORITHMS, solve_instance
from .exact import brute_force_opt
from .generators import GEN_KINDS, GenSpec, WeightSpec
from .graphio import (
    GraphParseError,
    load_graph,
    load_report,
    render_report,
    report_document,
    save_graph,
    serialize_graph,
    verify_report,
)
from .model import PreconditionError, as_weight, format_weight

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we own the exit codes
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="wgg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve one instance and emit a report")
    solve.add_argument("input", help="graph file")
    solve.add_argument("--alg", required=True, choices=ALGORITHMS)
    solve.add_argument(
        "--epsilon",
        default="1/2",
        help="slack for bounded-degree (rational or decimal, default 1/2)",
    )
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--output", help="report path (default: stdout)")
    solve.set_defaults(func=_cmd_solve)

    gen = sub.add_parser("gen", help="generate an instance")
    gen.add_argument("--kind", required=True, choices=GEN_KINDS)
    gen.add_argument("--n", type=int, help="vertex count (tree, regular)")
    gen.add_argument("--rows", type=int, help="grid rows")
    gen.add_argument("--cols", type=int, help="grid columns")
    gen.add_argument("--delta", type=int, help="degree bound (regular)")
    gen.add_argument("--min-abs", type=int, default=1, help="min weight magnitude")
    gen.add_argument("--max-abs", type=int, default=5, help="max weight magnitude")
    gen.add_argument(
        "--neg-prob", type=float, default=0.5, help="probability of a negative sign"
    )
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--input", help="graph file to reduce (reduce-is kinds)")
    gen.add_argument("--output", help="instance path (default: stdout)")
    gen.set_defaults(func=_cmd_gen)

    verify = sub.add_parser("verify", help="check a report against its instance")
    verify.add_argument("instance", help="graph file")
    verify.add_argument("report", help="report file")
    verify.set_defaults(func=_cmd_verify)

    bench = sub.add_parser("bench", help="run algorithms over a corpus directory")
    bench.add_argument("corpus", help="directory of graph files")
    bench.add_argument(
        "--algs", default="cover", help="comma-separated algorithm names"
    )
    bench.add_argument("--repeat", type=int, default=1, help="timing repeats")
    bench.add_argument("--epsilon", default="1/2")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--output", help="CSV path (default: stdout)")
    bench.set_defaults(func=_cmd_bench)

    return parser


def _cmd_solve(args) -> int:
    graph = load_graph(args.input)
    epsilon = as_weight(args.epsilon)
    report = solve_instance(
        graph, args.alg, epsilon=epsilon, seed=args.seed
    )
    text = render_report(report_document(graph, report))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(
            f"{args.alg}: value {format_weight(report.value)} "
            f"(w_plus {format_weight(report.w_plus)}) -> {args.output}"
        )
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _topology(path: str) -> tuple[int, list[tuple[int, int]]]:
    graph = load_graph(path)
    return graph.n, [(u, v) for u, v, _ in graph.edges]


def _cmd_gen(args) -> int:
    # An invalid generator spec is a usage problem, not a solver precondition.
    topology = None
    if args.kind in ("reduce-is", "reduce-is-pm1"):
        if args.input is None:
            raise _UsageError(f"--kind {args.kind} requires --input")
        n, edges = _topology(args.input)
        topology = (n, tuple(edges))
    try:
        spec = GenSpec(
            kind=args.kind,
            seed=args.seed,
            weights=WeightSpec(
                min_abs=args.min_abs,
                max_abs=args.max_abs,
                neg_probability=args.neg_prob,
            ),
            n=args.n,
            rows=args.rows,
            cols=args.cols,
            delta=args.delta,
            topology=topology,
        )
        graph = spec.build()
    except PreconditionError as exc:
        raise _UsageError(str(exc)) from exc
    if args.output:
        save_graph(graph, args.output)
        print(f"wrote {graph.n} vertices, {graph.m} edges -> {args.output}")
    else:
        sys.stdout.write(serialize_graph(graph))
    return EXIT_OK


def _cmd_verify(args) -> int:
    graph = load_graph(args.instance)
    doc = load_report(args.report)
    issues = verify_report(graph, doc)
    if issues:
        for issue in issues:
            print(f"verify: {issue}", file=sys.stderr)
        return EXIT_PRECONDITION
    print(f"ok: value {doc['value']} confirmed")
    return EXIT_OK


def _bench_rows(args) -> list[dict]:
    algs = [a.strip() for a in args.algs.split(",") if a.strip()]
    for alg in algs:
        if alg not in ALGORITHMS:
            raise _UsageError(f"unknown algorithm {alg!r} in --algs")
    epsilon = as_weight(args.epsilon)
    paths = sorted(
        os.path.join(args.corpus, name)
        for name in os.listdir(args.corpus)
        if not name.startswith(".")
    )
    rows = []
    for path in paths:
        name = os.path.basename(path)
        try:
            graph = load_graph(path)
        except GraphParseError as exc:
            print(f"bench: skipping {name}: {exc}", file=sys.stderr)
            continue
        opt = None
        if graph.n <= 16:
            opt = brute_force_opt(graph).value
        for alg in algs:
            try:
                timings = []
                report = None
                for _ in range(max(1, args.repeat)):
                    start = time.perf_counter()
                    report = solve_instance(
                        graph, alg, epsilon=epsilon, seed=args.seed
                    )
                    timings.append((time.perf_counter() - start) * 1000.0)
            except (PreconditionError, RuntimeError) as exc:
                print(f"bench: {name}/{alg} failed: {exc}", file=sys.stderr)
                continue
            ratio = ""
            if opt is not None and opt > 0:
                ratio = f"{float(report.value / opt):.6g}"
            rows.append(
                {
                    "instance": name,
                    "n": graph.n,
                    "m": graph.m,
                    "algorithm": alg,
                    "epsilon": format_weight(epsilon) if alg == "bounded-degree" else "",
                    "seed": args.seed if alg == "bounded-degree" else "",
                    "value": format_weight(report.value),
                    "w_plus": format_weight(report.w_plus),
                    "k": "" if report.feasible_set_count is None else report.feasible_set_count,
                    "ratio_opt": ratio,
                    "elapsed_ms": f"{statistics.median(timings):.3f}",
                }
            )
    rows.sort(key=lambda r: (r["instance"], r["algorithm"]))
    return rows


BENCH_COLUMNS = [
    "instance",
    "n",
    "m",
    "algorithm",
    "epsilon",
    "seed",
    "value",
    "w_plus",
    "k",
    "ratio_opt",
    "elapsed_ms",
]


def _cmd_bench(args) -> int:
    rows = _bench_rows(args)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS)
    writer.writeheader()
    writer.writerows(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
        print(f"wrote {len(rows)} rows -> {args.output}")
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"parse error: cannot read {exc.filename}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports anything
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
