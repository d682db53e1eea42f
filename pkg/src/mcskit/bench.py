"""Batch experiments: the RD/AIH/pipeline comparison and the kernel
accuracy sweep on isomorphic pairs, with CSV and SVG plot emission.

All randomness flows from one master seed; per-trial generators are derived
with numpy SeedSequence spawning so results do not depend on execution
order.  Wall times are only recorded when explicitly requested, keeping
default CSV output byte-identical across repeat runs.
"""
from __future__ import annotations

import statistics
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .graphs import association_graph, complement, erdos_renyi, permuted_copy
from .kernelization import reduce_full
from .pipeline import METHOD_AIH, METHOD_RD, SolveConfig, solve_mcs

CSV_HEADER = "p,seed,method,size,accuracy,iterations,kernel_size,wall_ms"

TABLE2_DENSITIES = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
KERNEL_DENSITIES = (0.01, 0.03, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                    0.6, 0.7, 0.8, 0.9, 0.95, 0.97, 0.99)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str  # "table2" | "kernel"
    n: int = 0  # 0 -> per-experiment default (20 for table2, 40 for kernel)
    densities: tuple = ()
    trials: int = 0  # 0 -> default (30 for table2, 20 for kernel)
    seed: int = 0
    methods: tuple = (METHOD_RD, METHOD_AIH)
    record_timings: bool = False

    def __post_init__(self):
        if self.experiment not in ("table2", "kernel"):
            raise ParameterError(f"unknown experiment {self.experiment!r}")
        for p in self.densities:
            if not 0.0 <= p <= 1.0:
                raise ParameterError(f"density {p} outside [0,1]")
        if self.trials < 0:
            raise ParameterError("trials must be >= 1")

    def resolved(self):
        n = self.n or (20 if self.experiment == "table2" else 40)
        trials = self.trials or (30 if self.experiment == "table2" else 20)
        densities = self.densities or (
            TABLE2_DENSITIES if self.experiment == "table2" else KERNEL_DENSITIES
        )
        return n, trials, tuple(densities)


@dataclass
class ResultRow:
    p: float
    seed: int
    method: str
    size: int
    accuracy: float = None
    iterations: int = None
    kernel_size: int = None
    wall_ms: float = None
    result: object = field(default=None, repr=False)  # backing MCSResult, if any


def _trial_seed(master, p_index, trial):
    ss = np.random.SeedSequence([int(master), int(p_index), int(trial)])
    return int(ss.generate_state(1, dtype=np.uint64)[0] % (2**62))


def run_table2(cfg):
    """ER(n,p) pair solving across methods; one row per (p, trial, method)."""
    n, trials, densities = cfg.resolved()
    rows = []
    for p_index, p in enumerate(densities):
        for trial in range(trials):
            seed = _trial_seed(cfg.seed, p_index, trial)
            g1 = erdos_renyi(n, p, seed)
            g2 = erdos_renyi(n, p, seed + 1)
            for method in cfg.methods:
                res = solve_mcs(g1, g2, SolveConfig(method=method, seed=seed))
                rows.append(
                    ResultRow(
                        p=p,
                        seed=seed,
                        method=method,
                        size=res.size,
                        iterations=res.stats.get("iterations"),
                        kernel_size=res.stats.get("kernel_size"),
                        wall_ms=res.stats.get("wall_ms") if cfg.record_timings else None,
                        result=res,
                    )
                )
    return rows


def run_kernel_experiment(cfg):
    """Full five-rule reduction (inexact on) on isomorphic ER(n,p) pairs.

    The optimum common subgraph of an isomorphic pair is the whole graph,
    so accuracy is the lifted independent-set size over n."""
    import time

    n, trials, densities = cfg.resolved()
    rows = []
    for p_index, p in enumerate(densities):
        for trial in range(trials):
            seed = _trial_seed(cfg.seed, p_index, trial)
            g1 = erdos_renyi(n, p, seed)
            g2, _ = permuted_copy(g1, seed + 1)
            assoc = association_graph(g1, g2)
            gbar = complement(assoc.graph)
            t0 = time.perf_counter()
            mis, kr = reduce_full(gbar, allow_inexact=True)
            wall = (time.perf_counter() - t0) * 1000.0
            rows.append(
                ResultRow(
                    p=p,
                    seed=seed,
                    method="KERNEL_FULL",
                    size=len(mis),
                    accuracy=len(mis) / n,
                    kernel_size=kr.kernel.n,
                    wall_ms=wall if cfg.record_timings else None,
                )
            )
    return rows


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(round(value, 6))
    return str(value)


def rows_to_csv(rows):
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    r.p, r.seed, r.method, r.size, r.accuracy,
                    r.iterations, r.kernel_size, r.wall_ms,
                )
            )
        )
    return "\n".join(lines) + "\n"


def emit_csv(rows, path):
    with open(path, "w") as fh:
        fh.write(rows_to_csv(rows))


def parse_csv(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ParameterError("unrecognized CSV header")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 8:
            raise ParameterError(f"malformed CSV row {ln!r}")
        rows.append(
            ResultRow(
                p=float(parts[0]),
                seed=int(parts[1]),
                method=parts[2],
                size=int(parts[3]),
                accuracy=float(parts[4]) if parts[4] else None,
                iterations=int(parts[5]) if parts[5] else None,
                kernel_size=int(parts[6]) if parts[6] else None,
                wall_ms=float(parts[7]) if parts[7] else None,
            )
        )
    return rows


def aggregate(rows, value="size"):
    """mean/stddev of a column per (method, p), sorted for stable output."""
    groups = {}
    for r in rows:
        v = getattr(r, "accuracy" if value == "accuracy" else "size")
        if v is None:
            continue
        groups.setdefault((r.method, r.p), []).append(float(v))
    out = []
    for (method, p), vals in sorted(groups.items()):
        sd = statistics.pstdev(vals) if len(vals) > 1 else 0.0
        out.append((method, p, statistics.fmean(vals), sd, len(vals)))
    return out


def emit_plot(csv_path, out_path, value="size"):
    """Static SVG line chart: mean of `value` vs p per method, with
    one-standard-deviation error bars."""
    with open(csv_path) as fh:
        rows = parse_csv(fh.read())
    if not rows:
        raise ParameterError("no rows to plot")
    stats = aggregate(rows, value=value)
    if not stats:
        raise ParameterError(f"no {value} data to plot")
    import matplotlib

    matplotlib.use("svg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    methods = sorted({m for m, *_ in stats})
    for method in methods:
        pts = [(p, mean, sd) for m, p, mean, sd, _ in stats if m == method]
        pts.sort()
        ax.errorbar(
            [p for p, _, _ in pts],
            [mean for _, mean, _ in pts],
            yerr=[sd for _, _, sd in pts],
            marker="o",
            capsize=3,
            label=method,
        )
    ax.set_xlabel("edge probability p")
    ax.set_ylabel("mean " + ("accuracy" if value == "accuracy" else "common subgraph size"))
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, format="svg")
    plt.close(fig)
