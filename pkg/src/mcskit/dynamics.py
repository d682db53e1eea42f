"""Discrete-time replicator dynamics over the standard simplex and the
clique machinery built on top of it: payoff matrices, the two-phase solver
and characteristic-vector clique extraction.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateStateError, NumericError, ParameterError
from .graphs import Graph

DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITERS = 1_000_000
SUPPORT_THRESHOLD = 1e-4
NOISE_SIGMA = 0.01
MAX_RESTARTS = 10
# Components this small can never influence the trajectory again but, left
# alone, they decay into subnormal floats and slow the matvec by 50x on the
# heavily shifted annealing payoffs.  Flushed to exact zero each step.
TINY_COMPONENT = 1e-120

KIND_PLAIN = "A"
KIND_BOMZE = "A_hat"
KIND_ALPHA = "A_alpha_shifted"


@dataclass(frozen=True)
class PayoffMatrix:
    """Symmetric nonnegative payoff matrix for the replicator update.

    ``objective_offset`` is subtracted from the raw quadratic form so that
    the reported objective matches the unshifted function (relevant for the
    annealing matrices, where a rank-one correction keeps entries
    nonnegative at the cost of a constant on the simplex).
    """

    entries: np.ndarray
    kind: str = KIND_PLAIN
    objective_offset: float = 0.0

    def __post_init__(self):
        e = self.entries
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ParameterError("payoff matrix must be square")
        if not np.allclose(e, e.T, atol=1e-12):
            raise ParameterError("payoff matrix must be symmetric")
        if np.min(e) < 0:
            raise ParameterError("payoff entries must be nonnegative")

    @property
    def n(self):
        return self.entries.shape[0]


def payoff_plain(g: Graph) -> PayoffMatrix:
    return PayoffMatrix(g.adjacency_matrix(), KIND_PLAIN)


def payoff_bomze(g: Graph) -> PayoffMatrix:
    """A + I/2: local simplex maximizers are exactly maximal cliques."""
    return PayoffMatrix(g.adjacency_matrix() + 0.5 * np.eye(g.n), KIND_BOMZE)


@dataclass
class RDOutcome:
    final: np.ndarray
    iterations: int
    status: str  # "converged" | "max_iterations"
    objective: float
    trajectory: list = field(default_factory=list, repr=False)


def barycenter(n):
    if n < 1:
        raise ParameterError("simplex dimension must be >= 1")
    return np.full(n, 1.0 / n)


def characteristic_vector(members, n):
    members = sorted(members)
    if not members:
        raise ParameterError("characteristic vector of the empty set is undefined")
    if members[0] < 0 or members[-1] >= n:
        raise ParameterError("member out of range")
    x = np.zeros(n)
    x[members] = 1.0 / len(members)
    return x


def support(x, threshold=SUPPORT_THRESHOLD):
    if not 0.0 <= threshold < 1.0:
        raise ParameterError("support threshold must be in [0,1)")
    return set(np.nonzero(x > threshold)[0].tolist())


def objective(w: PayoffMatrix, x):
    if len(x) != w.n:
        raise ParameterError("dimension mismatch between payoff matrix and vector")
    return float(x @ w.entries @ x) - w.objective_offset


def rd_step(w: PayoffMatrix, x):
    """One discrete replicator update x_i' = x_i pi_i / sum_j pi_j x_j."""
    pi = w.entries @ x
    denom = float(x @ pi)
    if denom <= 0.0:
        raise DegenerateStateError("replicator denominator vanished")
    return x * pi / denom


def run_rd(w: PayoffMatrix, x0, tol=DEFAULT_TOL, max_iters=DEFAULT_MAX_ITERS,
           trace=False):
    """Iterate rd_step until the Euclidean step norm drops to tol or the
    iteration cap is hit.  With trace=True, (iter, objective, delta) rows
    are collected in the outcome."""
    x = np.asarray(x0, dtype=float)
    entries = w.entries
    rows = []
    iterations = 0
    status = "max_iterations"
    for it in range(1, int(max_iters) + 1):
        pi = entries @ x
        denom = float(x @ pi)
        if denom <= 0.0:
            raise DegenerateStateError("replicator denominator vanished")
        x_next = x * pi / denom
        x_next[x_next < TINY_COMPONENT] = 0.0
        delta = float(np.linalg.norm(x_next - x))
        x = x_next
        iterations = it
        if trace:
            rows.append((it, float(x @ (entries @ x)) - w.objective_offset, delta))
        if delta <= tol:
            status = "converged"
            break
    return RDOutcome(
        final=x,
        iterations=iterations,
        status=status,
        objective=objective(w, x),
        trajectory=rows,
    )


def inject_noise(x, sigma, seed):
    """Gaussian perturbation, clipped to the nonnegative orthant and
    renormalized back onto the simplex."""
    if sigma <= 0:
        raise ParameterError("noise sigma must be positive")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RESTARTS):
        y = np.clip(x + rng.normal(0.0, sigma, size=len(x)), 0.0, None)
        s = y.sum()
        if s > 0:
            return y / s
    raise DegenerateStateError("noise injection produced the zero vector repeatedly")


def extract_clique(g: Graph, x):
    """Read a clique out of a (near-)converged simplex vector.

    Estimates the clique size from the Bomze identity
    f_hat(x^C) = 1 - 1/(2|C|), takes that many largest components, and falls
    back to a greedy sweep if they do not form a clique.
    """
    members, _ = extract_clique_info(g, x)
    return members


def extract_clique_info(g: Graph, x):
    """extract_clique plus a flag telling whether the size-estimate route
    succeeded (i.e. the vector was in characteristic form)."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise NumericError("non-finite components in simplex vector")
    if g.n == 0:
        return set(), True
    w = payoff_bomze(g)
    f_hat = objective(w, x)
    if f_hat < 1.0:
        k_est = int(round(1.0 / (2.0 * (1.0 - f_hat))))
    else:
        k_est = g.n
    k_est = min(max(k_est, 1), g.n)
    order = sorted(range(g.n), key=lambda i: (-x[i], i))
    top = set(order[:k_est])
    from .exact import is_clique  # local import to avoid a cycle

    if is_clique(g, top):
        # extend to maximality (symmetric stalls can leave a strict subset)
        for v in order[k_est:]:
            if all(u in g.adjacency[v] for u in top):
                top.add(v)
        return top, True
    chosen = []
    for v in order:
        if all(u in g.adjacency[v] for u in chosen):
            chosen.append(v)
    return set(chosen), False


def two_phase_rd(g: Graph, seed=0, tol=DEFAULT_TOL, max_iters=DEFAULT_MAX_ITERS,
                 noise_sigma=NOISE_SIGMA, stats=None):
    """Two-phase replicator baseline on a clique instance.

    Phase 1 seeks a stationary point of the plain quadratic form from the
    barycenter; phase 2 polishes it under the Bomze matrix.  When the final
    point is not in characteristic-vector form, gaussian noise restarts
    phase 2, keeping the best clique found.
    """
    if g.n == 0:
        raise ParameterError("empty instance")
    rng = np.random.default_rng(seed)
    total_iters = 0
    best = {0}
    if g.edge_count == 0:
        if stats is not None:
            stats["iterations"] = stats.get("iterations", 0)
        return best
    w_plain = payoff_plain(g)
    w_hat = payoff_bomze(g)
    out1 = run_rd(w_plain, barycenter(g.n), tol, max_iters)
    total_iters += out1.iterations
    x = out1.final
    for _ in range(MAX_RESTARTS + 1):
        out2 = run_rd(w_hat, x, tol, max_iters)
        total_iters += out2.iterations
        members, clean = extract_clique_info(g, out2.final)
        if len(members) > len(best):
            best = members
        if clean:
            break
        x = inject_noise(out2.final, noise_sigma, rng.integers(2**63))
    if stats is not None:
        stats["iterations"] = stats.get("iterations", 0) + total_iters
    return best
