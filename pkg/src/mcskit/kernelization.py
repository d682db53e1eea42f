"""Independent-set kernelization with a full undo trace.

The reduction state keeps adjacency as python-int bitsets (fast set algebra
at the few-thousand-vertex scale this package targets) plus degree buckets
V0/V1/V2/V3+.  Every decision is appended to a trace that
``reconstruct_mis`` replays backwards to lift a kernel solution to the
original graph:

  ("inc", v)              v is in the lifted set unconditionally
  ("exc", v)              v was deleted and is never in the lifted set
  ("push", v, snapshot)   deferred: v joins iff no snapshot neighbor joined
  ("fold", x, v, u, w)    placeholder x: x chosen => {u, w}, else {v}
  ("twin", x, u, v, ns)   placeholder x: x chosen => ns, else {u, v}

Placeholder vertices get fresh indices past the original range.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalValidationError, ParameterError
from .graphs import Graph


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class ReductionState:
    """Single-owner mutable reduction workspace over a copy of a graph."""

    def __init__(self, g: Graph):
        self.original = g
        self.original_n = g.n
        self.adj = [0] * g.n
        for u, v in g.edges:
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u
        self.alive = [True] * g.n
        self.live_count = g.n
        self.trace = []
        self.stalled = set()
        # degree buckets: 0, 1, 2, >=3
        self.buckets = [set(), set(), set(), set()]
        for v in range(g.n):
            self.buckets[self._bucket_of(self.adj[v].bit_count())].add(v)

    # -- low-level bookkeeping -------------------------------------------

    @staticmethod
    def _bucket_of(deg):
        return deg if deg < 3 else 3

    def degree(self, v):
        return self.adj[v].bit_count()

    def neighbors(self, v):
        return list(_bits(self.adj[v]))

    def has_edge(self, u, v):
        return bool(self.adj[u] >> v & 1)

    def _rebucket(self, v, old_deg, new_deg):
        ob, nb = self._bucket_of(old_deg), self._bucket_of(new_deg)
        if ob != nb:
            self.buckets[ob].discard(v)
            self.buckets[nb].add(v)
        self.stalled.discard(v)

    def new_vertex(self):
        x = len(self.adj)
        self.adj.append(0)
        self.alive.append(True)
        self.live_count += 1
        self.buckets[0].add(x)
        return x

    def attach(self, x, nbr_mask):
        """Wire a fresh vertex x to the given neighbor set."""
        old = self.adj[x].bit_count()
        self.adj[x] |= nbr_mask
        for w in _bits(nbr_mask):
            d = self.adj[w].bit_count()
            self.adj[w] |= 1 << x
            self._rebucket(w, d, d + 1)
        self._rebucket(x, old, self.adj[x].bit_count())

    def add_edge(self, u, v):
        if self.adj[u] >> v & 1:
            return
        du, dv = self.degree(u), self.degree(v)
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u
        self._rebucket(u, du, du + 1)
        self._rebucket(v, dv, dv + 1)

    def remove_vertex(self, v, record):
        """Remove v; record is "exc", "inc", or None (pending decision)."""
        if not self.alive[v]:
            raise InternalValidationError(f"vertex {v} is not alive")
        if record is not None:
            self.trace.append((record, v))
        for w in _bits(self.adj[v]):
            d = self.adj[w].bit_count()
            self.adj[w] &= ~(1 << v)
            self._rebucket(w, d, d - 1)
        self.buckets[self._bucket_of(self.degree(v))].discard(v)
        self.adj[v] = 0
        self.alive[v] = False
        self.live_count -= 1
        self.stalled.discard(v)

    def alive_vertices(self):
        return [v for v in range(len(self.adj)) if self.alive[v]]

    def audit(self):
        """Debug invariant: buckets exactly partition live vertices by degree."""
        seen = set()
        for i, bucket in enumerate(self.buckets):
            for v in bucket:
                if not self.alive[v]:
                    raise InternalValidationError(f"dead vertex {v} in bucket {i}")
                if self._bucket_of(self.degree(v)) != i:
                    raise InternalValidationError(
                        f"vertex {v} deg {self.degree(v)} in bucket {i}"
                    )
                seen.add(v)
        if seen != set(self.alive_vertices()):
            raise InternalValidationError("buckets do not cover the live set")


# -- individual reduction rules -----------------------------------------


def delete_vertex(state, v):
    """DeleteVertex: drop v for good (it is excluded from the lifted set)."""
    state.remove_vertex(v, "exc")


def contract(state, v, w):
    """Merge v into w: w inherits v's other neighbors, v disappears."""
    if not (state.alive[v] and state.alive[w]):
        raise InternalValidationError("contract on dead vertex")
    gained = state.adj[v] & ~(1 << w) & ~state.adj[w]
    dw = state.degree(w)
    state.adj[w] |= gained
    for u in _bits(gained):
        d = state.adj[u].bit_count()
        state.adj[u] |= 1 << w
        state._rebucket(u, d, d + 1)
    state._rebucket(w, dw, state.degree(w))
    state.remove_vertex(v, None)


def include_isolated(state):
    """Move every degree-0 vertex into the solution.  Returns fire count."""
    fired = 0
    while state.buckets[0]:
        v = min(state.buckets[0])
        state.remove_vertex(v, "inc")
        fired += 1
    return fired


def degree_one_reduction(state, v):
    """A degree-1 vertex always belongs to some MIS: drop its neighbor."""
    if state.degree(v) != 1:
        raise InternalValidationError(f"vertex {v} is not degree 1")
    (u,) = state.neighbors(v)
    delete_vertex(state, u)
    # v is now isolated and gets included by the V0 sweep


def _maximal_deg2_path(state, u):
    """Maximal degree-two path through u.  Returns (path, v, w, is_cycle)
    where v, w are the outside attachments of the first/last path vertex."""
    first, second = state.neighbors(u)
    path = [u]
    prev, cur = u, first
    while state.degree(cur) == 2:
        if cur == u:
            return path, None, None, True
        path.append(cur)
        a, b = state.neighbors(cur)
        prev, cur = cur, (b if a == prev else a)
    w_end = cur
    prev, cur = u, second
    head = []
    while state.degree(cur) == 2:
        head.append(cur)
        a, b = state.neighbors(cur)
        prev, cur = cur, (b if a == prev else a)
    v_end = cur
    head.reverse()
    return head + path, v_end, w_end, False


def degree_two_reduction(state, u):
    """Chang et al.'s degree-two path rule.  Returns True when the graph
    changed; False when the path is in the irreducible odd/non-adjacent
    configuration and u was merely parked."""
    if state.degree(u) != 2:
        raise InternalValidationError(f"vertex {u} is not degree 2")
    path, v, w, is_cycle = _maximal_deg2_path(state, u)
    if is_cycle:
        delete_vertex(state, u)
        return True
    if v == w:
        delete_vertex(state, v)
        return True
    length = len(path)
    if length % 2 == 1:
        if state.has_edge(v, w):
            delete_vertex(state, v)
            delete_vertex(state, w)
            return True
        if length == 1:
            # irreducible: v - u - w with v, w non-adjacent; park u
            state.stalled.add(u)
            return False
        # keep v1, defer v_l..v2, reconnect v1 to w
        v1 = path[0]
        for p in reversed(path[1:]):
            state.trace.append(("push", p, state.adj[p]))
        for p in path[1:]:
            state.remove_vertex(p, None)
        state.add_edge(v1, w)
        state.stalled.add(v1)  # now exactly the irreducible configuration
        return True
    # even path: defer all of it, reconnect the attachments
    for p in reversed(path):
        state.trace.append(("push", p, state.adj[p]))
    for p in path:
        state.remove_vertex(p, None)
    state.add_edge(v, w)
    return True


def vertex_fold(state, v):
    """Fold a degree-2 vertex with non-adjacent neighbors into a placeholder.
    Returns False when the rule does not apply."""
    if not state.alive[v] or state.degree(v) != 2:
        return False
    u, w = state.neighbors(v)
    if state.has_edge(u, w):
        return False
    mask_uvw = (1 << u) | (1 << v) | (1 << w)
    nbr_mask = (state.adj[u] | state.adj[w]) & ~mask_uvw
    x = state.new_vertex()
    state.trace.append(("fold", x, v, u, w))
    state.attach(x, nbr_mask)
    state.remove_vertex(v, None)
    state.remove_vertex(u, None)
    state.remove_vertex(w, None)
    return True


def twin_reduce(state, u, v):
    """Degree-3 twins N(u) = N(v).  Returns False when not applicable."""
    if not (state.alive[u] and state.alive[v]) or u == v:
        return False
    if state.degree(u) != 3 or state.degree(v) != 3:
        return False
    if state.adj[u] != state.adj[v] or state.has_edge(u, v):
        return False
    ns = state.neighbors(u)
    has_inner_edge = any(
        state.has_edge(a, b) for i, a in enumerate(ns) for b in ns[i + 1 :]
    )
    if has_inner_edge:
        for a in ns:
            delete_vertex(state, a)
        # u and v are now isolated; the V0 sweep records them as included
        include_isolated(state)
        return True
    five = (1 << u) | (1 << v)
    nbr_mask = 0
    for a in ns:
        five |= 1 << a
        nbr_mask |= state.adj[a]
    nbr_mask &= ~five
    x = state.new_vertex()
    state.trace.append(("twin", x, u, v, tuple(ns)))
    state.attach(x, nbr_mask)
    for dead in (u, v, *ns):
        state.remove_vertex(dead, None)
    return True


def _confinement(state, v):
    """Xiao-style confinement search from S = {v}.

    Returns (unconfined, S_mask, closed_mask)."""
    s_mask = 1 << v
    closed = state.adj[v] | s_mask
    while True:
        extend_with = None
        for u in _bits(closed & ~s_mask):
            if (state.adj[u] & s_mask).bit_count() != 1:
                continue
            out = state.adj[u] & ~closed
            if out == 0:
                return True, s_mask, closed
            if out.bit_count() == 1 and extend_with is None:
                extend_with = out.bit_length() - 1
        if extend_with is None:
            return False, s_mask, closed
        s_mask |= 1 << extend_with
        closed |= state.adj[extend_with] | (1 << extend_with)


def unconfined_reduce(state, v):
    """Remove v if the confinement search proves it unconfined."""
    if not state.alive[v]:
        return False
    unconfined, _, _ = _confinement(state, v)
    if unconfined:
        delete_vertex(state, v)
        return True
    return False


def diamond_reduce(state, v):
    """Diamond extension of the unconfined rule: two non-adjacent children
    of the confining set sharing the same two *adjacent* outside neighbors
    (u1, u2, w1, w2 form a K4 minus the u1-u2 edge -- the diamond).

    The adjacency of the shared pair is essential: without it the rule is
    size-reducing (a 5-vertex gadget with the pair non-adjacent has its MIS
    shrink from 3 to 2 when v is deleted)."""
    if not state.alive[v]:
        return False
    unconfined, s_mask, closed = _confinement(state, v)
    if unconfined:
        return False
    groups = {}
    for u in _bits(closed & ~s_mask):
        if (state.adj[u] & s_mask).bit_count() != 1:
            continue
        out = state.adj[u] & ~closed
        if out.bit_count() == 2:
            w1 = out.bit_length() - 1
            w2 = (out & ~(1 << w1)).bit_length() - 1
            if state.has_edge(w1, w2):
                groups.setdefault(out, []).append(u)
    for members in groups.values():
        for i, u1 in enumerate(members):
            for u2 in members[i + 1 :]:
                if not state.has_edge(u1, u2):
                    delete_vertex(state, v)
                    return True
    return False


# -- LinearTime driver ----------------------------------------------------


def _run_linear_exact(state):
    """Degree-0/1/2 rules to fixpoint.  Returns True if the graph changed."""
    fired = False
    while True:
        if include_isolated(state):
            fired = True
            continue
        if state.buckets[1]:
            degree_one_reduction(state, min(state.buckets[1]))
            fired = True
            continue
        ready = state.buckets[2] - state.stalled
        if ready:
            if degree_two_reduction(state, min(ready)):
                fired = True
            continue
        return fired


def _inexact_reduction(state):
    """Delete the highest-degree vertex (ties broken by smallest index)."""
    v = max(state.alive_vertices(), key=lambda u: (state.degree(u), -u))
    delete_vertex(state, v)


@dataclass
class KernelResult:
    kernel: Graph
    trace: list
    name_map: list  # kernel index -> original/placeholder index
    forced_count: int
    original_n: int = 0
    stats: dict = field(default_factory=dict)


def _build_kernel(state):
    live = state.alive_vertices()
    name_map = list(live)
    pos = {v: i for i, v in enumerate(live)}
    edges = [
        (pos[v], pos[w]) for v in live for w in _bits(state.adj[v]) if v < w
    ]
    return Graph(len(live), edges), name_map


def _replay(trace, chosen_mask, with_pushes=True):
    for entry in reversed(trace):
        tag = entry[0]
        if tag == "inc":
            chosen_mask |= 1 << entry[1]
        elif tag == "exc":
            continue
        elif tag == "push":
            if with_pushes and entry[2] & chosen_mask == 0:
                chosen_mask |= 1 << entry[1]
        elif tag == "fold":
            _, x, v, u, w = entry
            if chosen_mask >> x & 1:
                chosen_mask = (chosen_mask & ~(1 << x)) | (1 << u) | (1 << w)
            else:
                chosen_mask |= 1 << v
        elif tag == "twin":
            _, x, u, v, ns = entry
            if chosen_mask >> x & 1:
                chosen_mask &= ~(1 << x)
                for a in ns:
                    chosen_mask |= 1 << a
            else:
                chosen_mask |= (1 << u) | (1 << v)
        else:
            raise InternalValidationError(f"unknown trace tag {tag!r}")
    return chosen_mask


def reconstruct_mis(kernel_result, kernel_mis):
    """Lift an independent set of the kernel back to the original graph."""
    kr = kernel_result
    members = sorted(kernel_mis)
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if b in kr.kernel.adjacency[a]:
                raise ParameterError("kernel_mis is not independent in the kernel")
    mask = 0
    for v in members:
        mask |= 1 << kr.name_map[v]
    mask = _replay(kr.trace, mask)
    result = set(_bits(mask))
    if kr.original_n and any(v >= kr.original_n for v in result):
        raise InternalValidationError("unresolved placeholder in lifted set")
    return result


def _decided_so_far(state):
    """Vertices whose membership is already forced, with placeholder chains
    resolved.  Pending pushes and undecided placeholders contribute nothing."""
    mask = 0
    for entry in reversed(state.trace):
        tag = entry[0]
        if tag == "inc":
            mask |= 1 << entry[1]
        elif tag == "fold":
            _, x, v, u, w = entry
            if mask >> x & 1:
                mask = (mask & ~(1 << x)) | (1 << u) | (1 << w)
        elif tag == "twin":
            _, x, u, v, ns = entry
            if mask >> x & 1:
                mask &= ~(1 << x)
                for a in ns:
                    mask |= 1 << a
    return {v for v in _bits(mask) if v < state.original_n}


def _extend_maximal(g, members):
    members = set(members)
    for v in range(g.n):
        if v in members:
            continue
        if not (g.adjacency[v] & members):
            members.add(v)
    return members


def linear_time(g, allow_inexact):
    """Algorithm-style degree-based reduction.

    With allow_inexact=True this runs to completion (peeling the highest
    degree vertex whenever no exact rule applies) and returns a maximal
    independent set of g together with an empty kernel.  With
    allow_inexact=False it stops at the first would-be inexact step and
    returns the decisions so far plus the residual kernel.
    """
    state = ReductionState(g)
    _run_linear_exact(state)
    if allow_inexact:
        while state.live_count:
            _inexact_reduction(state)
            _run_linear_exact(state)
        mis = set(_bits(_replay(state.trace, 0)))
        mis = _extend_maximal(g, mis)
        kr = KernelResult(Graph(0), state.trace, [], len(mis), g.n)
        return mis, kr
    kernel, name_map = _build_kernel(state)
    decided = _decided_so_far(state)
    kr = KernelResult(kernel, state.trace, name_map, len(decided), g.n)
    return decided, kr


def reduce_full(g, allow_inexact):
    """All five rules in order (LinearTime, fold, twin, unconfined,
    diamond), restarting from the top after every firing.

    The unconfined/diamond sweeps are the expensive rules; they are only
    re-run after the graph changed through one of the exact rules (or one
    of their own firings), not after plain highest-degree peels, which at
    medium density would otherwise dominate the runtime without ever
    enabling them.
    """
    state = ReductionState(g)
    exact_epoch = 0
    swept_epoch = -1
    while True:
        if _run_linear_exact(state):
            exact_epoch += 1
            continue
        if _fold_sweep(state):
            exact_epoch += 1
            continue
        if _twin_sweep(state):
            exact_epoch += 1
            continue
        if swept_epoch != exact_epoch:
            if _unconfined_sweep(state):
                exact_epoch += 1
                continue
            if _diamond_sweep(state):
                exact_epoch += 1
                continue
            swept_epoch = exact_epoch
        if allow_inexact and state.live_count:
            _inexact_reduction(state)
            continue
        break
    if allow_inexact:
        mis = set(_bits(_replay(state.trace, 0)))
        mis = {v for v in mis if v < g.n}
        mis = _extend_maximal(g, mis)
        kr = KernelResult(Graph(0), state.trace, [], len(mis), g.n)
        return mis, kr
    kernel, name_map = _build_kernel(state)
    decided = _decided_so_far(state)
    kr = KernelResult(kernel, state.trace, name_map, len(decided), g.n)
    return decided, kr


def _fold_sweep(state):
    for v in sorted(state.buckets[2]):
        if vertex_fold(state, v):
            return True
    return False


def _twin_sweep(state):
    groups = {}
    for v in sorted(state.buckets[3]):
        if state.degree(v) == 3:
            groups.setdefault(state.adj[v], []).append(v)
    for members in groups.values():
        for i, u in enumerate(members):
            for v in members[i + 1 :]:
                if twin_reduce(state, u, v):
                    return True
    return False


def _unconfined_sweep(state):
    for v in state.alive_vertices():
        if unconfined_reduce(state, v):
            return True
    return False


def _diamond_sweep(state):
    for v in state.alive_vertices():
        if diamond_reduce(state, v):
            return True
    return False


# -- sidecar trace serialization ------------------------------------------


def write_trace(trace):
    lines = []
    for entry in trace:
        tag = entry[0]
        if tag == "inc":
            lines.append(f"INC {entry[1]}")
        elif tag == "exc":
            lines.append(f"EXC {entry[1]}")
        elif tag == "push":
            nbrs = " ".join(str(b) for b in _bits(entry[2]))
            lines.append(f"PUSH {entry[1]} {nbrs}".rstrip())
        elif tag == "fold":
            lines.append("FOLD {} {} {} {}".format(*entry[1:]))
        elif tag == "twin":
            _, x, u, v, ns = entry
            lines.append(f"TWIN {x} {u} {v} " + " ".join(str(a) for a in ns))
        else:
            raise InternalValidationError(f"unknown trace tag {tag!r}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_trace(text):
    trace = []
    for raw in text.splitlines():
        parts = raw.split()
        if not parts:
            continue
        tag, args = parts[0], [int(a) for a in parts[1:]]
        if tag == "INC":
            trace.append(("inc", args[0]))
        elif tag == "EXC":
            trace.append(("exc", args[0]))
        elif tag == "PUSH":
            snap = 0
            for b in args[1:]:
                snap |= 1 << b
            trace.append(("push", args[0], snap))
        elif tag == "FOLD":
            trace.append(("fold", *args))
        elif tag == "TWIN":
            trace.append(("twin", args[0], args[1], args[2], tuple(args[3:])))
        else:
            raise ParameterError(f"unknown trace line {raw!r}")
    return trace
