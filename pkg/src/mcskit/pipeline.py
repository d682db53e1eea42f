"""End-to-end MCS solving: association graph, optional complement-side
kernelization, replicator or annealed dynamics, and lifting back to a
validated vertex mapping between the two input graphs.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .annealing import BOUND_SAFE, run_aih
from .dynamics import DEFAULT_MAX_ITERS, DEFAULT_TOL, NOISE_SIGMA, two_phase_rd
from .errors import InternalValidationError, ParameterError
from .exact import verify_common_subgraph
from .graphs import association_graph, complement
from .kernelization import KernelResult, linear_time, reconstruct_mis

METHOD_RD = "RD"
METHOD_AIH = "AIH"
METHOD_KERNEL_RD = "KERNEL_RD"
METHOD_KERNEL_AIH = "KERNEL_AIH"
METHODS = (METHOD_RD, METHOD_AIH, METHOD_KERNEL_RD, METHOD_KERNEL_AIH)


@dataclass(frozen=True)
class SolveConfig:
    method: str = METHOD_AIH
    seed: int = 0
    tol: float = DEFAULT_TOL
    max_iters: int = DEFAULT_MAX_ITERS
    delta: float = 0.01
    noise_sigma: float = NOISE_SIGMA
    bound_mode: str = BOUND_SAFE

    def __post_init__(self):
        if self.method not in METHODS:
            raise ParameterError(f"unknown method {self.method!r}")
        if self.tol < 0 or self.max_iters <= 0 or self.noise_sigma <= 0:
            raise ParameterError("tolerances and iteration caps must be positive")
        if not 0.0 < self.delta < 1.0:
            raise ParameterError("delta must lie in (0,1)")


@dataclass
class MCSResult:
    mapping: list  # [(i, h), ...] sorted
    size: int
    method: str
    stats: dict = field(default_factory=dict)
    seed: int = 0

    def to_json(self):
        return json.dumps(
            {
                "method": self.method,
                "size": self.size,
                "mapping": [list(p) for p in self.mapping],
                "stats": self.stats,
                "seed": self.seed,
            },
            sort_keys=True,
        )


@dataclass
class CliqueKernel:
    """Complement-side kernelization result packaged for clique solving."""

    kernel_result: KernelResult
    clique_graph: object  # re-complemented kernel (clique-side view)
    forced: set  # association-graph vertices already decided into the clique


def kernelize_for_clique(assoc):
    """Complement the association graph, run the exact (inexact-free)
    LinearTime reduction, and hand back the re-complemented kernel for the
    dynamics stage plus the trace needed to lift its solution."""
    forced, kr = linear_time(complement(assoc.graph), allow_inexact=False)
    return CliqueKernel(
        kernel_result=kr,
        clique_graph=complement(kr.kernel),
        forced=forced,
    )


def lift_clique(clique_kernel, kernel_clique):
    """Lift a clique of the re-complemented kernel to a clique of the
    association graph (an independent set of its complement)."""
    return reconstruct_mis(clique_kernel.kernel_result, kernel_clique)


def solve_mcs(g1, g2, cfg=None):
    cfg = cfg or SolveConfig()
    if g1.n < 1 or g2.n < 1:
        raise ParameterError("both input graphs must be non-empty")
    t0 = time.perf_counter()
    assoc = association_graph(g1, g2)
    cap = min(assoc.n1, assoc.n2)
    stats = {"iterations": 0, "stages": 0, "kernel_size": None}
    if cfg.method == METHOD_RD:
        clique = two_phase_rd(
            assoc.graph, cfg.seed, cfg.tol, cfg.max_iters, cfg.noise_sigma, stats
        )
    elif cfg.method == METHOD_AIH:
        clique = run_aih(
            assoc,
            cfg.seed,
            cfg.tol,
            cfg.max_iters,
            cfg.delta,
            cfg.noise_sigma,
            cfg.bound_mode,
            stats=stats,
        )
    else:
        ck = kernelize_for_clique(assoc)
        stats["kernel_size"] = ck.clique_graph.n
        if ck.clique_graph.n == 0:
            clique = lift_clique(ck, set())
        else:
            if cfg.method == METHOD_KERNEL_RD:
                kernel_clique = two_phase_rd(
                    ck.clique_graph, cfg.seed, cfg.tol, cfg.max_iters,
                    cfg.noise_sigma, stats,
                )
            else:
                kernel_clique = run_aih(
                    ck.clique_graph,
                    cfg.seed,
                    cfg.tol,
                    cfg.max_iters,
                    cfg.delta,
                    cfg.noise_sigma,
                    cfg.bound_mode,
                    size_cap=cap,
                    stats=stats,
                )
            clique = lift_clique(ck, kernel_clique)
    mapping = sorted(assoc.labels[v] for v in clique)
    if not verify_common_subgraph(g1, g2, mapping):
        raise InternalValidationError(
            "solver produced an invalid mapping: "
            + json.dumps({"mapping": mapping, "method": cfg.method, "seed": cfg.seed})
        )
    stats["wall_ms"] = (time.perf_counter() - t0) * 1000.0
    return MCSResult(
        mapping=mapping,
        size=len(mapping),
        method=cfg.method,
        stats=stats,
        seed=cfg.seed,
    )
