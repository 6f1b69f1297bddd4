"""Unit-capacity flow machinery: internally disjoint paths, fans, connectivity.

The internal network splits every vertex v into an entry node 2v and an exit
node 2v+1 joined by a unit-capacity arc, so one unit of flow occupies one
vertex.  Undirected edges become a pair of uncapacitated arcs between exit
and entry nodes, and a virtual super-sink collects the terminals.  With this
shape a minimum cut consists of split arcs only, which is exactly a vertex
cut of the original graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import InvariantViolationError
from .graph import Edge, Graph, connected_component, edge_key, is_connected


@dataclass(frozen=True)
class PathFamily:
    """Paths out of one source, pairwise sharing only their endpoints."""

    source: int
    targets: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...]
    fan: bool

    def __len__(self) -> int:
        return len(self.paths)

    def validate(self, graph: Graph) -> None:
        """Raise unless every family invariant holds against the host graph."""
        ends = []
        for path in self.paths:
            if path[0] != self.source:
                raise InvariantViolationError(f"path {path} does not start at {self.source}")
            if len(set(path)) != len(path):
                raise InvariantViolationError(f"path {path} repeats a vertex")
            for a, b in zip(path, path[1:]):
                if not graph.has_edge(a, b):
                    raise InvariantViolationError(f"path step ({a},{b}) is not an edge")
            ends.append(path[-1])
            if path[-1] not in self.targets:
                raise InvariantViolationError(f"path ends at {path[-1]}, not a target")
        if self.fan:
            if len(set(ends)) != len(ends):
                raise InvariantViolationError("fan paths share a terminal")
        shared_ok = {self.source} | (set() if self.fan else set(self.targets))
        for i in range(len(self.paths)):
            for j in range(i + 1, len(self.paths)):
                common = set(self.paths[i]) & set(self.paths[j])
                if not common <= shared_ok:
                    raise InvariantViolationError(
                        f"paths {i} and {j} share internal vertices {sorted(common - shared_ok)}"
                    )


@dataclass(frozen=True)
class CutWitness:
    """Vertex separator plus the two sides it splits apart.

    When ``removed_edge`` is set the separation holds in the host graph
    minus that single edge (the direct edge between an adjacent pair always
    counts as one path and cannot be cut by vertices).  ``family`` carries
    the largest path family found alongside the cut.
    """

    separator: frozenset[int]
    side_a: frozenset[int]
    side_b: frozenset[int]
    removed_edge: Edge | None = None
    family: PathFamily | None = None


@dataclass(frozen=True)
class ConnectivityResult:
    """Exact vertex connectivity; witness is None only for complete graphs."""

    value: int
    witness: CutWitness | None


def _route(
    graph: Graph,
    source: int,
    terminals: tuple[int, ...],
    fan: bool,
    excluded_edge: Edge | None,
    cutoff: int,
) -> tuple[int, list[tuple[int, ...]], list[int] | None]:
    """Push up to ``cutoff`` units from source towards the terminals.

    Returns (flow, paths, separator) where separator is None when the cutoff
    was reached and otherwise lists the original vertices whose split arcs
    cross the final residual cut.
    """
    n = graph.order
    sink = 2 * n
    big = n + 2
    terminal_set = set(terminals)

    arc_head: list[int] = []
    arc_cap: list[int] = []
    adj: list[list[int]] = [[] for _ in range(2 * n + 1)]

    def add_arc(u: int, v: int, cap: int) -> None:
        adj[u].append(len(arc_head))
        arc_head.append(v)
        arc_cap.append(cap)
        adj[v].append(len(arc_head))
        arc_head.append(u)
        arc_cap.append(0)

    for v in range(n):
        if v == source or (not fan and v in terminal_set):
            cap = 0
        else:
            cap = 1
        add_arc(2 * v, 2 * v + 1, cap)
    for u in range(n):
        for v in graph.adjacency[u]:
            if excluded_edge is not None and edge_key(u, v) == excluded_edge:
                continue
            add_arc(2 * u + 1, 2 * v, big)
    for t in sorted(terminal_set):
        if fan:
            add_arc(2 * t + 1, sink, 1)
        else:
            add_arc(2 * t, sink, big)

    src = 2 * source + 1
    arc_flow = [0] * len(arc_head)
    flow = 0
    parent: list[int] = []
    while flow < cutoff:
        parent = [-1] * (2 * n + 1)
        parent[src] = -2
        queue = deque([src])
        reached = False
        while queue and not reached:
            u = queue.popleft()
            for a in adj[u]:
                if arc_cap[a] - arc_flow[a] > 0:
                    h = arc_head[a]
                    if parent[h] == -1:
                        parent[h] = a
                        if h == sink:
                            reached = True
                            break
                        queue.append(h)
        if not reached:
            break
        cur = sink
        while cur != src:
            a = parent[cur]
            arc_flow[a] += 1
            arc_flow[a ^ 1] -= 1
            cur = arc_head[a ^ 1]
        flow += 1

    paths: list[tuple[int, ...]] = []
    remaining = [f if f > 0 else 0 for f in arc_flow]
    for _ in range(flow):
        node = src
        verts = [source]
        while node != sink:
            step = next(a for a in adj[node] if arc_cap[a] > 0 and remaining[a] > 0)
            remaining[step] -= 1
            node = arc_head[step]
            if node != sink and node // 2 != verts[-1]:
                verts.append(node // 2)
        paths.append(tuple(verts))

    if flow >= cutoff:
        return flow, paths, None
    visited = [p != -1 for p in parent]
    separator = [v for v in range(n) if visited[2 * v] and not visited[2 * v + 1]]
    if len(separator) != flow:
        raise InvariantViolationError(
            f"residual cut size {len(separator)} does not match flow {flow}"
        )
    return flow, paths, separator


def _sides(graph: Graph, separator: list[int], a_root: int, b_roots: Iterable[int],
           removed_edge: Edge | None) -> tuple[frozenset[int], frozenset[int]]:
    blocked = frozenset(separator)
    if removed_edge is None:
        comp_a = connected_component(graph, a_root, blocked)
    else:
        u, v = removed_edge
        adj = list(graph.adjacency)
        adj[u] = tuple(w for w in adj[u] if w != v)
        adj[v] = tuple(w for w in adj[v] if w != u)
        trimmed = Graph(graph.order, tuple(adj), graph.labels)
        comp_a = connected_component(trimmed, a_root, blocked)
        graph = trimmed
    side_b: set[int] = set()
    for root in b_roots:
        if root in blocked:
            continue
        if root in comp_a:
            raise InvariantViolationError(f"separator fails to cut off vertex {root}")
        side_b |= connected_component(graph, root, blocked)
    return frozenset(comp_a), frozenset(side_b)


def disjoint_paths(graph: Graph, x: int, y: int, k: int) -> PathFamily | CutWitness:
    """k internally disjoint (x,y)-paths, or the best family plus a cut.

    When x and y are adjacent the direct edge always counts as one path and
    the remaining k-1 are routed in the graph without that edge; a returned
    cut then separates x from y once the direct edge is removed.
    """
    if k <= 0:
        raise ValueError(f"path count must be positive, got {k}")
    if x == y:
        raise ValueError("endpoints must be distinct")
    for v in (x, y):
        if not (0 <= v < graph.order):
            raise ValueError(f"vertex {v} is not in the graph")
    adjacent = graph.has_edge(x, y)
    removed = edge_key(x, y) if adjacent else None
    direct = [(x, y)] if adjacent else []
    need = k - len(direct)
    if need == 0:
        return PathFamily(x, (y,), tuple(direct), fan=False)
    flow, paths, separator = _route(graph, x, (y,), False, removed, need)
    family = PathFamily(x, (y,), tuple(direct + paths), fan=False)
    if separator is None:
        return family
    side_a, side_b = _sides(graph, separator, x, [y], removed)
    return CutWitness(frozenset(separator), side_a, side_b, removed, family)


def k_fan(graph: Graph, x: int, targets: Iterable[int], k: int) -> PathFamily | CutWitness:
    """k paths from x to k distinct target vertices, sharing only x."""
    target_tuple = tuple(sorted(set(targets)))
    if k <= 0:
        raise ValueError(f"fan size must be positive, got {k}")
    if x in target_tuple:
        raise ValueError("fan source must not belong to the target set")
    if len(target_tuple) < k:
        raise ValueError(f"target set has {len(target_tuple)} vertices, need at least {k}")
    for v in target_tuple + (x,):
        if not (0 <= v < graph.order):
            raise ValueError(f"vertex {v} is not in the graph")
    flow, paths, separator = _route(graph, x, target_tuple, True, None, k)
    family = PathFamily(x, target_tuple, tuple(paths), fan=True)
    if separator is None:
        return family
    side_a, side_b = _sides(graph, separator, x, target_tuple, None)
    return CutWitness(frozenset(separator), side_a, side_b, None, family)


def _candidate_pairs(graph: Graph) -> list[tuple[int, int]]:
    n = graph.order
    if n < 64:
        return [
            (a, b)
            for a in range(n)
            for b in range(a + 1, n)
            if not graph.has_edge(a, b)
        ]
    # One minimum-degree vertex against all its non-neighbours, plus the
    # non-adjacent pairs inside its neighbourhood, suffices for exactness.
    v0 = min(range(n), key=lambda v: (graph.degree(v), v))
    pairs = [(v0, u) for u in range(n) if u != v0 and not graph.has_edge(v0, u)]
    nbrs = graph.adjacency[v0]
    pairs += [
        (a, b)
        for i, a in enumerate(nbrs)
        for b in nbrs[i + 1:]
        if not graph.has_edge(a, b)
    ]
    return sorted(edge_key(a, b) for a, b in pairs)


def vertex_connectivity(graph: Graph) -> ConnectivityResult:
    """Exact vertex connectivity with a minimum-cut witness.

    Complete graphs return order-1 and a None witness.  Otherwise the value
    is the minimum over candidate non-adjacent pairs of the maximum number
    of internally disjoint paths, certified by the residual cut.
    """
    if graph.order < 2:
        raise ValueError("vertex connectivity needs at least two vertices")
    pairs = _candidate_pairs(graph)
    if not pairs:
        return ConnectivityResult(graph.order - 1, None)
    if not is_connected(graph):
        comp = connected_component(graph, 0)
        rest = frozenset(range(graph.order)) - comp
        return ConnectivityResult(0, CutWitness(frozenset(), frozenset(comp), rest))
    best = min(graph.degree(v) for v in range(graph.order)) + 1
    witness: CutWitness | None = None
    for a, b in pairs:
        flow, _, separator = _route(graph, a, (b,), False, None, best)
        if separator is not None and flow < best:
            best = flow
            side_a, side_b = _sides(graph, separator, a, [b], None)
            witness = CutWitness(frozenset(separator), side_a, side_b)
    if witness is None:
        raise InvariantViolationError("no candidate pair produced a cut below the degree bound")
    return ConnectivityResult(best, witness)
