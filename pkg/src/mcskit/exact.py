"""Ground-truth solvers: exact maximum clique / independent set, brute-force
MCS, and small numeric diagnostics.  These exist to verify the heuristics at
desk scale, not to compete with them.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceededError, ParameterError
from .graphs import complement

POWER_ITER_MAX_STEPS = 10_000
POWER_ITER_REL_TOL = 1e-12


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 64
    max_millis: float = 60_000.0

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_millis <= 0:
            raise ParameterError("budget values must be positive")


def _bit_adjacency(g):
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _degeneracy_order(g):
    degs = [g.degree(v) for v in range(g.n)]
    alive = set(range(g.n))
    order = []
    while alive:
        v = min(alive, key=lambda u: (degs[u], u))
        order.append(v)
        alive.remove(v)
        for w in g.adjacency[v]:
            if w in alive:
                degs[w] -= 1
    return order


def max_clique_exact(g, budget=None):
    """Lexicographically smallest maximum clique via Bron-Kerbosch with
    greedy pivoting, vertices seeded in degeneracy order at the top level.
    """
    budget = budget or OracleBudget()
    if g.n > budget.max_vertices:
        raise BudgetExceededError(
            f"{g.n} vertices exceeds oracle budget {budget.max_vertices}"
        )
    if g.n == 0:
        return set()
    deadline = time.monotonic() + budget.max_millis / 1000.0
    adj = _bit_adjacency(g)
    best = {"mask": 0, "size": 0, "key": None}

    def consider(r_mask):
        size = r_mask.bit_count()
        key = sorted(_bits(r_mask))
        if size > best["size"] or (size == best["size"] and key < best["key"]):
            best["mask"] = r_mask
            best["size"] = size
            best["key"] = key

    def expand(r_mask, p_mask, x_mask):
        if time.monotonic() > deadline:
            raise BudgetExceededError("oracle wall-clock budget exceeded")
        if p_mask == 0 and x_mask == 0:
            consider(r_mask)
            return
        if r_mask.bit_count() + p_mask.bit_count() < best["size"]:
            return
        # greedy pivot: vertex of P|X covering the most of P
        pivot, cover = -1, -1
        for u in _bits(p_mask | x_mask):
            c = (adj[u] & p_mask).bit_count()
            if c > cover:
                pivot, cover = u, c
        for v in sorted(_bits(p_mask & ~adj[pivot])):
            vb = 1 << v
            expand(r_mask | vb, p_mask & adj[v], x_mask & adj[v])
            p_mask &= ~vb
            x_mask |= vb

    p_mask = (1 << g.n) - 1
    x_mask = 0
    for v in _degeneracy_order(g):
        vb = 1 << v
        expand(vb, p_mask & adj[v], x_mask & adj[v])
        p_mask &= ~vb
        x_mask |= vb
    return set(_bits(best["mask"]))


def mis_exact(g, budget=None):
    """Exact maximum independent set: maximum clique of the complement."""
    return max_clique_exact(complement(g), budget)


def is_clique(g, members):
    members = list(members)
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if v not in g.adjacency[u]:
                return False
    return True


def is_independent_set(g, members):
    members = list(members)
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if v in g.adjacency[u]:
                return False
    return True


def verify_common_subgraph(g1, g2, mapping):
    """True iff mapping is injective in both coordinates and preserves
    adjacency and non-adjacency between the two graphs."""
    pairs = list(mapping)
    lefts = [i for i, _ in pairs]
    rights = [h for _, h in pairs]
    if len(set(lefts)) != len(pairs) or len(set(rights)) != len(pairs):
        return False
    for i, h in pairs:
        if not (0 <= i < g1.n and 0 <= h < g2.n):
            return False
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            i, h = pairs[a]
            j, k = pairs[b]
            if (j in g1.adjacency[i]) != (k in g2.adjacency[h]):
                return False
    return True


def mcs_brute_force(g1, g2, budget=None):
    """Exhaustive search over injective partial maps g1 -> g2.

    Returns the lexicographically smallest maximum mapping as a list of
    (i, h) pairs.  Practical only for orders up to ~6.
    """
    budget = budget or OracleBudget()
    deadline = time.monotonic() + budget.max_millis / 1000.0
    n1, n2 = g1.n, g2.n
    best = {"pairs": [], "size": 0}

    def extend(i, pairs, used2):
        if time.monotonic() > deadline:
            raise BudgetExceededError("brute-force wall-clock budget exceeded")
        if len(pairs) + (n1 - i) <= best["size"]:
            return
        if i == n1:
            if len(pairs) > best["size"]:
                best["pairs"] = list(pairs)
                best["size"] = len(pairs)
            return
        for h in range(n2):
            if h in used2:
                continue
            ok = True
            for j, k in pairs:
                if (j in g1.adjacency[i]) != (k in g2.adjacency[h]):
                    ok = False
                    break
            if ok:
                pairs.append((i, h))
                used2.add(h)
                extend(i + 1, pairs, used2)
                pairs.pop()
                used2.remove(h)
        extend(i + 1, pairs, used2)  # leave vertex i unmapped

    extend(0, [], set())
    return best["pairs"]


def largest_eigenvalue(g, restriction):
    """Dominant eigenvalue of the adjacency submatrix indexed by restriction.

    Power iteration on the diagonally shifted matrix A + cI (all eigenvalues
    positive, so the deterministic all-ones start converges even for
    bipartite submatrices); the shift is subtracted back out.
    """
    members = sorted(restriction)
    if not members:
        raise ParameterError("restriction must be non-empty")
    k = len(members)
    a = g.adjacency_matrix()[np.ix_(members, members)]
    if k == 1:
        return 0.0
    shift = float(k)  # exceeds the spectral radius of any 0/1 submatrix
    m = a + shift * np.eye(k)
    x = np.ones(k) / np.sqrt(k)
    rho = float(x @ m @ x)
    for _ in range(POWER_ITER_MAX_STEPS):
        y = m @ x
        x = y / np.linalg.norm(y)
        rho_new = float(x @ m @ x)
        if abs(rho_new - rho) <= POWER_ITER_REL_TOL * max(1.0, abs(rho_new)):
            rho = rho_new
            break
        rho = rho_new
    return rho - shift
