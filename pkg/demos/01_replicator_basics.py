"""Replicator dynamics on the clique objective, step by step.

The Motzkin-Straus program maximizes f(x) = x^T A x over the standard
simplex; its value on the characteristic vector of a clique C is
1 - 1/|C|, so large cliques live at high plateaus.  Discrete replicator
dynamics ascend f monotonically, and under the regularized payoff
A + I/2 the only asymptotically stable points are characteristic
vectors of maximal cliques -- so "run the dynamics, read off the
support" is already a clique heuristic.
"""
import numpy as np

from mcskit import erdos_renyi
from mcskit.dynamics import (
    barycenter,
    extract_clique,
    objective,
    payoff_bomze,
    rd_step,
    run_rd,
    support,
)
from mcskit.exact import is_clique, max_clique_exact

# ---------------------------------------------------------------------------
# A medium-density random graph and the regularized payoff matrix.

g = erdos_renyi(30, 0.5, seed=42)
w = payoff_bomze(g)
print(f"graph: n={g.n}, m={g.edge_count}")

# ---------------------------------------------------------------------------
# Watch the objective climb from the barycenter.  The printed values are
# 1 - 1/(2k) at convergence when the dynamics settle on a size-k clique.

x = barycenter(g.n)
print(f"{'iter':>6} {'f(x)':>12} {'|support|':>10}")
for it in range(1, 2001):
    x_next = rd_step(w, x)
    if it in (1, 5, 25, 100, 500) or np.linalg.norm(x_next - x) < 1e-9:
        print(f"{it:6d} {objective(w, x):12.8f} {len(support(x)):10d}")
    if np.linalg.norm(x_next - x) < 1e-9:
        break
    x = x_next

# ---------------------------------------------------------------------------
# run_rd wraps the same loop with tolerance/budget bookkeeping, and
# extract_clique turns the converged vector into an explicit clique.

out = run_rd(w, barycenter(g.n))
clique = extract_clique(g, out.final)
assert is_clique(g, clique)
k = len(clique)
print(f"\nconverged in {out.iterations} iterations ({out.status})")
print(f"extracted clique (size {k}): {sorted(clique)}")
print(f"objective {objective(w, out.final):.8f} vs 1 - 1/(2k) = {1 - 1 / (2 * k):.8f}")

opt = max_clique_exact(g)
print(f"exact maximum clique size: {len(opt)}")
