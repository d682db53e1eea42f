"""Undirected simple graphs, association/complement construction, random
instances and DIMACS I/O.

Vertices are dense integer indices 0..n-1.  An association-graph vertex
(i, h) of two source graphs with orders n1, n2 is the index i * n2 + h.
"""
from __future__ import annotations

import numpy as np

from .errors import (
    DimacsParseError,
    GraphConstructionError,
    ParameterError,
    ResourceLimitError,
)

# Below this order we keep a packed boolean adjacency matrix around for fast
# matrix-vector products in the dynamics engine.
BITMATRIX_LIMIT = 4096

DEFAULT_VERTEX_BUDGET = 40_000


class Graph:
    """Immutable undirected simple graph."""

    __slots__ = ("n", "edges", "adjacency", "_matrix")

    def __init__(self, n, edges=()):
        if n < 0:
            raise GraphConstructionError(f"negative vertex count {n}")
        adjacency = [set() for _ in range(n)]
        dedup = set()
        for u, v in edges:
            if u == v:
                raise GraphConstructionError(f"self-loop ({u},{v})")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphConstructionError(f"edge ({u},{v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in dedup:
                continue
            dedup.add(e)
            adjacency[u].add(v)
            adjacency[v].add(u)
        self.n = n
        self.edges = frozenset(dedup)
        self.adjacency = tuple(frozenset(a) for a in adjacency)
        self._matrix = None

    @property
    def edge_count(self):
        return len(self.edges)

    def degree(self, v):
        return len(self.adjacency[v])

    def has_edge(self, u, v):
        return v in self.adjacency[u]

    def adjacency_matrix(self):
        """Dense symmetric 0/1 adjacency matrix (float64), cached."""
        if self._matrix is None:
            m = np.zeros((self.n, self.n))
            for u, v in self.edges:
                m[u, v] = 1.0
                m[v, u] = 1.0
            self._matrix = m
        return self._matrix

    def density(self):
        if self.n < 2:
            raise ParameterError("density undefined for graphs with fewer than 2 vertices")
        return self.edge_count / (self.n * (self.n - 1) / 2)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count})"


class AssociationGraph:
    """Product graph whose cliques correspond to common induced subgraphs.

    Vertex i * n2 + h stands for the pairing (i in the first graph,
    h in the second).  Two pairings are adjacent iff they are compatible:
    distinct in both coordinates and either both-adjacent or
    both-non-adjacent in their respective source graphs.
    """

    __slots__ = ("graph", "labels", "n1", "n2")

    def __init__(self, graph, labels, n1, n2):
        self.graph = graph
        self.labels = labels
        self.n1 = n1
        self.n2 = n2

    def index_of(self, i, h):
        return i * self.n2 + h

    def __repr__(self):
        return f"AssociationGraph(n1={self.n1}, n2={self.n2}, m={self.graph.edge_count})"


def new_graph(n, edges=()):
    return Graph(n, edges)


def complement(g):
    """Graph on the same vertices with every non-edge turned into an edge."""
    edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if v not in g.adjacency[u]
    ]
    return Graph(g.n, edges)


def association_graph(g1, g2, vertex_budget=DEFAULT_VERTEX_BUDGET):
    if g1.n < 1 or g2.n < 1:
        raise ParameterError("association graph needs non-empty source graphs")
    n1, n2 = g1.n, g2.n
    n = n1 * n2
    if n > vertex_budget:
        raise ResourceLimitError(
            f"association graph would have {n} vertices, budget is {vertex_budget}"
        )
    a1 = g1.adjacency_matrix().astype(bool)
    a2 = g2.adjacency_matrix().astype(bool)
    # Non-adjacency with the diagonal masked out so that i==j / h==k pairs
    # never produce an edge.
    c1 = ~a1 & ~np.eye(n1, dtype=bool)
    c2 = ~a2 & ~np.eye(n2, dtype=bool)
    adj = np.kron(a1, a2) | np.kron(c1, c2)
    iu, ju = np.nonzero(np.triu(adj, 1))
    edges = list(zip(iu.tolist(), ju.tolist()))
    labels = [(idx // n2, idx % n2) for idx in range(n)]
    return AssociationGraph(Graph(n, edges), labels, n1, n2)


def erdos_renyi(n, p, seed):
    """G(n, p) with every unordered pair drawn independently."""
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"edge probability {p} outside [0,1]")
    rng = np.random.default_rng(seed)
    edges = []
    if n >= 2:
        draws = rng.random(n * (n - 1) // 2)
        k = 0
        for u in range(n):
            for v in range(u + 1, n):
                if draws[k] < p:
                    edges.append((u, v))
                k += 1
    return Graph(n, edges)


def permuted_copy(g, seed):
    """Isomorphic relabeling of g.  Returns (graph, perm) with perm[old] = new."""
    rng = np.random.default_rng(seed)
    perm = rng.permutation(g.n)
    edges = [(int(perm[u]), int(perm[v])) for u, v in g.edges]
    return Graph(g.n, edges), perm


def parse_dimacs(text):
    """Parse DIMACS ascii edge format: `p edge n m` then `e u v` (1-based)."""
    n = None
    declared_m = None
    edges = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise DimacsParseError("duplicate problem line", line_no)
            if len(parts) != 4 or parts[1] != "edge":
                raise DimacsParseError(f"bad problem line {line!r}", line_no)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsParseError(f"non-integer counts in {line!r}", line_no)
        elif parts[0] == "e":
            if n is None:
                raise DimacsParseError("edge before problem line", line_no)
            if len(parts) != 3:
                raise DimacsParseError(f"bad edge line {line!r}", line_no)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise DimacsParseError(f"non-integer endpoints in {line!r}", line_no)
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsParseError(f"vertex index out of range in {line!r}", line_no)
            if u == v:
                raise DimacsParseError(f"self-loop in {line!r}", line_no)
            edges.append((u - 1, v - 1))
        else:
            raise DimacsParseError(f"unrecognized line {line!r}", line_no)
    if n is None:
        raise DimacsParseError("missing problem line", 1)
    g = Graph(n, edges)
    if declared_m != g.edge_count:
        raise DimacsParseError(
            f"declared {declared_m} edges, found {g.edge_count} distinct", 1
        )
    return g


def write_dimacs(g):
    lines = [f"p edge {g.n} {g.edge_count}"]
    for u, v in sorted(g.edges):
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"
