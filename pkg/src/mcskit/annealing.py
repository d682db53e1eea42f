"""Annealed imitation heuristics: the gamma-hat ladder, the clique-number
upper bound, payoff shifting A - alpha*I and the staged replicator driver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    DEFAULT_MAX_ITERS,
    DEFAULT_TOL,
    KIND_ALPHA,
    MAX_RESTARTS,
    NOISE_SIGMA,
    PayoffMatrix,
    barycenter,
    extract_clique_info,
    inject_noise,
    payoff_bomze,
    run_rd,
)
from .errors import ParameterError
from .graphs import Graph

DEFAULT_DELTA = 0.01

BOUND_SAFE = "safe"
BOUND_PAPER = "paper-formula"

# A stage is considered collapsed onto a simplex vertex when the largest
# component passes this; the driver then kicks it with gaussian noise so
# later stages still have a trajectory to anneal.
COLLAPSE_THRESHOLD = 1.0 - 1e-6

# Early annealing stages sit far from any stable characteristic vector and
# the shifted payoff is nearly flat there, so full convergence is both slow
# and pointless; each stage only needs to reshape the trajectory.  The final
# Bomze polish still runs with the caller's full iteration budget.
STAGE_MAX_ITERS = 2_000


@dataclass(frozen=True)
class AnnealingSchedule:
    q: float
    n: int
    delta: float
    c_sup: int
    steps: tuple  # ((m, alpha), ...) for m = c_sup down to 2

    def to_csv(self):
        lines = ["m,gamma_hat_m,alpha"]
        for m, alpha in self.steps:
            lines.append(f"{m},{gamma_hat(m, self.q, self.n, self.delta)!r},{alpha!r}")
        return "\n".join(lines) + "\n"


def density(g: Graph):
    return g.density()


def gamma_hat(m, q, n, delta):
    """Probabilistic threshold 1 - (1-q)m - sqrt(m q (1-q) delta^nu) with
    nu = (n - m)/2; below it, size-m subsets are unlikely to stay stable."""
    if not 1 <= m <= n:
        raise ParameterError(f"m={m} outside [1, {n}]")
    if not 0.0 <= q <= 1.0:
        raise ParameterError(f"density {q} outside [0,1]")
    if not 0.0 < delta < 1.0:
        raise ParameterError(f"delta {delta} outside (0,1)")
    nu = (n - m) / 2.0
    return 1.0 - (1.0 - q) * m - math.sqrt(m * q * (1.0 - q) * delta**nu)


def clique_upper_bound(graph_or_assoc, mode=BOUND_SAFE):
    """Upper bound on the clique number from the edge count, intersected
    with min(n1, n2) when the instance is an association graph.

    Safe mode uses the largest c with c(c-1)/2 <= |E|.  The alternative
    mode keeps the (much smaller) floor(sqrt(8|E|+1)/4 + 1/2) variant for
    side-by-side comparison; it is not a valid upper bound in general.
    """
    assoc = None
    g = graph_or_assoc
    if hasattr(g, "labels"):
        assoc = g
        g = g.graph
    m = g.edge_count
    if m == 0:
        return 1 if g.n >= 1 else 0
    if mode == BOUND_SAFE:
        c1 = math.floor((1.0 + math.sqrt(8.0 * m + 1.0)) / 2.0)
        while c1 * (c1 - 1) // 2 > m:  # guard against float rounding
            c1 -= 1
    elif mode == BOUND_PAPER:
        c1 = math.floor(math.sqrt(8.0 * m + 1.0) / 4.0 + 0.5)
    else:
        raise ParameterError(f"unknown bound mode {mode!r}")
    bound = c1
    if assoc is not None:
        bound = min(bound, assoc.n1, assoc.n2)
    return max(bound, 1)


def build_schedule(graph_or_assoc, delta=DEFAULT_DELTA, bound_mode=BOUND_SAFE,
                   size_cap=None):
    """Ladder (m, alpha_m) for m = c_sup .. 2 with alpha_m the negated
    midpoint of consecutive gamma-hat values.  size_cap further clamps c_sup
    (used when a kernel inherits the min(n1,n2) bound of its parent).

    Sign convention: with payoff A - alpha*I, the characteristic vector of a
    maximal clique C is asymptotically stable iff gamma(C) < -alpha < 1, so
    the ladder has to run -alpha through the gamma-hat midpoints.  Stage m
    then keeps cliques of size >= m stable while destabilizing smaller ones,
    and sweeping m downward anneals the trajectory into the largest basins
    first.  (Using the midpoints directly as alpha puts -alpha near
    -gamma_hat_m >> 1, where no characteristic vector is stable at all and
    every stage collapses onto a single simplex vertex.)
    """
    g = graph_or_assoc.graph if hasattr(graph_or_assoc, "labels") else graph_or_assoc
    if g.n < 2:
        raise ParameterError("schedule needs at least 2 vertices")
    q = g.density()
    n = g.n
    c_sup = clique_upper_bound(graph_or_assoc, bound_mode)
    if size_cap is not None:
        c_sup = min(c_sup, size_cap)
    c_sup = min(c_sup, n)
    steps = []
    for m in range(c_sup, 1, -1):
        alpha = -(gamma_hat(m - 1, q, n, delta) + gamma_hat(m, q, n, delta)) / 2.0
        steps.append((m, alpha))
    return AnnealingSchedule(q=q, n=n, delta=delta, c_sup=c_sup, steps=tuple(steps))


def shifted_payoff(g: Graph, alpha):
    """Payoff matrix for f_alpha = x^T (A - alpha I) x.

    For alpha <= 0 the entries A - alpha*I are already nonnegative.  For
    alpha > 0 the all-ones correction alpha*J is added, which shifts the
    objective by the constant alpha on the simplex without moving its
    maximizers or the replicator fixed points; the constant is recorded so
    reported objectives stay on the f_alpha scale.
    """
    a = g.adjacency_matrix()
    eye = np.eye(g.n)
    if alpha <= 0:
        return PayoffMatrix(a - alpha * eye, KIND_ALPHA, objective_offset=0.0)
    return PayoffMatrix(a - alpha * eye + alpha * np.ones((g.n, g.n)),
                        KIND_ALPHA, objective_offset=alpha)


def compute_gamma(g: Graph, members):
    """gamma(C) = max_{i not in C} deg_C(i) - |C| + 1, with the empty outside
    maximum taken as 0 (giving 1 - |C|)."""
    members = set(members)
    if not members:
        raise ParameterError("gamma undefined for the empty set")
    outside = [v for v in range(g.n) if v not in members]
    best = 0
    if outside:
        best = max(len(g.adjacency[v] & members) for v in outside)
    return best - len(members) + 1


def run_aih(graph_or_assoc, seed=0, tol=DEFAULT_TOL, max_iters=DEFAULT_MAX_ITERS,
            delta=DEFAULT_DELTA, noise_sigma=NOISE_SIGMA, bound_mode=BOUND_SAFE,
            size_cap=None, stats=None):
    """Annealed imitation heuristic.

    Starts at the barycenter and runs one replicator pass per schedule
    stage on A - alpha_m I, carrying the converged point between stages
    (with a noise kick whenever it has collapsed onto a simplex vertex),
    then polishes under the Bomze matrix.  Returns the best clique seen
    at any stage.
    """
    g = graph_or_assoc.graph if hasattr(graph_or_assoc, "labels") else graph_or_assoc
    if g.n == 0:
        raise ParameterError("empty instance")
    best = {0}
    if g.n == 1 or g.edge_count == 0:
        return best
    rng = np.random.default_rng(seed)
    schedule = build_schedule(graph_or_assoc, delta, bound_mode, size_cap)
    x = barycenter(g.n)
    total_iters = 0
    stages = 0
    if not schedule.steps:
        # degenerate ladder: fall back to a plain-A first phase as in the
        # two-phase RD baseline
        out = run_rd(shifted_payoff(g, 0.0), x, tol, max_iters)
        x = out.final
        total_iters += out.iterations
    w_hat = payoff_bomze(g)
    for _, alpha in schedule.steps:
        if float(np.max(x)) > COLLAPSE_THRESHOLD:
            x = inject_noise(x, noise_sigma, rng.integers(2**63))
        out = run_rd(shifted_payoff(g, alpha), x, tol,
                     min(max_iters, STAGE_MAX_ITERS))
        x = out.final
        total_iters += out.iterations
        stages += 1
        members = extract_clique_info(g, x)[0]
        if len(members) > len(best):
            best = members
        # additionally read the stage out through a Bomze polish on a
        # throwaway copy, so every stage also contributes a fully converged
        # maximal-clique candidate; the annealing trajectory itself
        # continues from x undisturbed
        probe = run_rd(w_hat, x, tol, min(max_iters, STAGE_MAX_ITERS))
        total_iters += probe.iterations
        members = extract_clique_info(g, probe.final)[0]
        if len(members) > len(best):
            best = members
    # final Bomze-phase polish, with noise restarts as in the RD baseline
    for _ in range(MAX_RESTARTS + 1):
        out = run_rd(w_hat, x, tol, max_iters)
        total_iters += out.iterations
        members, clean = extract_clique_info(g, out.final)
        if len(members) > len(best):
            best = members
        if clean:
            break
        x = inject_noise(out.final, noise_sigma, rng.integers(2**63))
    if stats is not None:
        stats["iterations"] = stats.get("iterations", 0) + total_iters
        stats["stages"] = stats.get("stages", 0) + stages
    return best
