"""Command line front end.

Exit codes: 0 success, 2 parameter error, 3 I/O error, 4 internal
validation failure.
"""
from __future__ import annotations

import argparse
import sys

from . import bench
from .errors import (
    DimacsParseError,
    InternalValidationError,
    ParameterError,
    ResourceLimitError,
)
from .graphs import erdos_renyi, parse_dimacs, write_dimacs
from .kernelization import linear_time, reduce_full, write_trace
from .pipeline import (
    METHOD_AIH,
    METHOD_KERNEL_AIH,
    METHOD_KERNEL_RD,
    METHOD_RD,
    SolveConfig,
    solve_mcs,
)

_METHOD_FLAGS = {
    "rd": METHOD_RD,
    "aih": METHOD_AIH,
    "kaih": METHOD_KERNEL_AIH,
    "krd": METHOD_KERNEL_RD,
}

EXIT_OK = 0
EXIT_PARAM = 2
EXIT_IO = 3
EXIT_INTERNAL = 4


def _read_graph(path):
    with open(path) as fh:
        return parse_dimacs(fh.read())


def _cmd_gen(args):
    g = erdos_renyi(args.n, args.p, args.seed)
    with open(args.out, "w") as fh:
        fh.write(write_dimacs(g))
    return EXIT_OK


def _cmd_solve(args):
    g1 = _read_graph(args.g1)
    g2 = _read_graph(args.g2)
    cfg = SolveConfig(
        method=_METHOD_FLAGS[args.method],
        seed=args.seed,
        tol=args.tol,
        max_iters=args.max_iters,
        delta=args.delta,
        noise_sigma=args.noise,
        bound_mode="safe" if args.bound == "safe" else "paper-formula",
    )
    result = solve_mcs(g1, g2, cfg)
    payload = result.to_json()
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return EXIT_OK


def _cmd_kernelize(args):
    g = _read_graph(args.infile)
    allow_inexact = args.inexact == "on"
    if args.rules == "lineartime":
        decided, kr = linear_time(g, allow_inexact)
    else:
        decided, kr = reduce_full(g, allow_inexact)
    with open(args.out_kernel, "w") as fh:
        fh.write(write_dimacs(kr.kernel))
    with open(args.out_trace, "w") as fh:
        fh.write(write_trace(kr.trace))
    print(
        f"kernel: {kr.kernel.n} vertices, {kr.kernel.edge_count} edges; "
        f"decided: {len(decided)}"
    )
    return EXIT_OK


def _cmd_bench(args):
    densities = tuple(float(p) for p in args.densities.split(",")) if args.densities else ()
    cfg = bench.ExperimentConfig(
        experiment=args.experiment,
        n=args.n,
        densities=densities,
        trials=args.trials,
        seed=args.seed,
        methods=tuple(_METHOD_FLAGS[m] for m in args.methods.split(",")),
        record_timings=args.timings,
    )
    if args.experiment == "table2":
        rows = bench.run_table2(cfg)
    else:
        rows = bench.run_kernel_experiment(cfg)
    bench.emit_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _cmd_plot(args):
    bench.emit_plot(args.infile, args.out, value=args.value)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mcs",
        description="Maximum common subgraph via replicator dynamics, "
        "annealed imitation and kernelization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an Erdos-Renyi instance (DIMACS)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("solve", help="solve MCS for two DIMACS graphs")
    p.add_argument("--g1", required=True)
    p.add_argument("--g2", required=True)
    p.add_argument("--method", choices=sorted(_METHOD_FLAGS), default="aih")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--max-iters", type=int, default=1_000_000)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--noise", type=float, default=0.01)
    p.add_argument("--bound", choices=["safe", "paper"], default="safe")
    p.add_argument("--json-out", default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("kernelize", help="reduce a DIMACS graph, dump kernel+trace")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--rules", choices=["all", "lineartime"], default="all")
    p.add_argument("--inexact", choices=["on", "off"], default="off")
    p.add_argument("--out-kernel", required=True)
    p.add_argument("--out-trace", required=True)
    p.set_defaults(func=_cmd_kernelize)

    p = sub.add_parser("bench", help="batch experiments, CSV output")
    p.add_argument("experiment", choices=["table2", "kernel"])
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--densities", default="")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--methods", default="rd,aih")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("plot", help="SVG chart from a bench CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--value", choices=["size", "accuracy"], default="size")
    p.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAM if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ParameterError, DimacsParseError, ResourceLimitError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InternalValidationError as exc:
        print(f"internal validation failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
