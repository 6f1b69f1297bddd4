"""Immutable simple-graph core: construction, traversal and tree checks.

Vertices are dense integers in ``[0, order)``; display labels live in a
separate optional table.  All values are frozen after construction, so every
operation below is a pure function and safe to share across threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import GraphConstructionError, ValidationError

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Canonical unordered edge: smaller endpoint first."""
    return (u, v) if u < v else (v, u)


def canonical_edges(edges: Iterable[Edge]) -> tuple[Edge, ...]:
    """Deduplicated, canonicalized, sorted edge tuple."""
    return tuple(sorted({edge_key(u, v) for u, v in edges}))


def spanned_vertices(edges: Iterable[Edge]) -> set[int]:
    """All endpoints touched by an edge set."""
    out: set[int] = set()
    for u, v in edges:
        out.add(u)
        out.add(v)
    return out


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with sorted per-vertex adjacency."""

    order: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    @property
    def num_edges(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> Iterator[Edge]:
        for u in range(self.order):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    def label_of(self, v: int) -> str:
        if self.labels is None:
            return str(v)
        return self.labels[v]


class DegreeProfile(NamedTuple):
    min_degree: int
    max_degree: int
    regular: int | None


class SteinerCheck(NamedTuple):
    ok: bool
    reason: str | None


class RemovedGraph(NamedTuple):
    graph: Graph
    new_to_old: tuple[int, ...]


def make_graph(order: int, edges: Iterable[Edge], labels: Iterable[str] | None = None) -> Graph:
    """Build a graph from an edge list; duplicate pairs collapse silently."""
    if order < 0:
        raise GraphConstructionError(f"order must be non-negative, got {order}")
    adj: list[set[int]] = [set() for _ in range(order)]
    for u, v in edges:
        if u == v:
            raise GraphConstructionError(f"self-loop ({u},{v}) is not allowed")
        if not (0 <= u < order) or not (0 <= v < order):
            raise GraphConstructionError(f"edge ({u},{v}) has an endpoint outside [0,{order})")
        adj[u].add(v)
        adj[v].add(u)
    label_tuple = None
    if labels is not None:
        label_tuple = tuple(labels)
        if len(label_tuple) != order:
            raise GraphConstructionError(
                f"got {len(label_tuple)} labels for {order} vertices"
            )
    return Graph(order, tuple(tuple(sorted(s)) for s in adj), label_tuple)


def degree_profile(graph: Graph) -> DegreeProfile:
    """Minimum and maximum degree, plus the shared degree when regular."""
    if graph.order == 0:
        raise GraphConstructionError("degree profile of an empty graph is undefined")
    degs = [graph.degree(v) for v in range(graph.order)]
    lo, hi = min(degs), max(degs)
    return DegreeProfile(lo, hi, lo if lo == hi else None)


def remove_vertices(graph: Graph, removed: Iterable[int]) -> RemovedGraph:
    """Induced subgraph on the complement of ``removed``.

    Returns the new graph together with a table mapping each new index back
    to the original one.  Removing every vertex is rejected because all
    callers require a nonempty remainder.
    """
    removed_set = set(removed)
    for v in removed_set:
        if not (0 <= v < graph.order):
            raise ValidationError(f"vertex {v} is not in the graph")
    if len(removed_set) == graph.order:
        raise GraphConstructionError("removing every vertex would leave an empty graph")
    new_to_old = tuple(v for v in range(graph.order) if v not in removed_set)
    old_to_new = {old: new for new, old in enumerate(new_to_old)}
    adj = tuple(
        tuple(old_to_new[w] for w in graph.adjacency[old] if w not in removed_set)
        for old in new_to_old
    )
    labels = None
    if graph.labels is not None:
        labels = tuple(graph.labels[old] for old in new_to_old)
    return RemovedGraph(Graph(len(new_to_old), adj, labels), new_to_old)


def _check_edges_present(graph: Graph, edges: Iterable[Edge]) -> tuple[Edge, ...]:
    canon = canonical_edges(edges)
    for u, v in canon:
        if not (0 <= u < graph.order) or not (0 <= v < graph.order):
            raise ValidationError(f"edge ({u},{v}) references a vertex outside the graph")
        if not graph.has_edge(u, v):
            raise ValidationError(f"edge ({u},{v}) is absent from the host graph")
    return canon


def tree_adjacency(edges: Iterable[Edge]) -> dict[int, list[int]]:
    """Adjacency dict of an edge subset, neighbours sorted."""
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for nbrs in adj.values():
        nbrs.sort()
    return adj


def reachable_in_edges(edges: Iterable[Edge], start: int) -> set[int]:
    """Vertices reachable from ``start`` using only the given edges."""
    adj = tree_adjacency(edges)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj.get(u, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_steiner_tree(graph: Graph, edges: Iterable[Edge], terminals: Iterable[int]) -> SteinerCheck:
    """Is the edge set a tree containing every terminal?

    The edge set must consist of host-graph edges; an absent edge raises.
    An empty edge set spans no vertices and therefore fails for any
    nonempty terminal set.
    """
    canon = _check_edges_present(graph, edges)
    goal = set(terminals)
    spanned = spanned_vertices(canon)
    missing = sorted(goal - spanned)
    if missing:
        return SteinerCheck(False, f"terminal {missing[0]} is not spanned")
    if not canon:
        return SteinerCheck(True, None) if not goal else SteinerCheck(False, "empty tree")
    start = canon[0][0]
    reached = reachable_in_edges(canon, start)
    if len(reached) != len(spanned):
        stray = min(spanned - reached)
        return SteinerCheck(False, f"disconnected: vertex {stray} unreachable")
    if len(canon) != len(spanned) - 1:
        return SteinerCheck(False, "edge set contains a cycle")
    return SteinerCheck(True, None)


def shortest_path(graph: Graph, x: int, y: int) -> tuple[int, ...] | None:
    """Minimum-hop path from x to y, or None when disconnected.

    Ties break deterministically: the lowest-index neighbour is expanded
    first, so reruns yield identical paths.
    """
    for v in (x, y):
        if not (0 <= v < graph.order):
            raise ValidationError(f"vertex {v} is not in the graph")
    if x == y:
        return (x,)
    parent = {x: x}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for w in graph.adjacency[u]:
            if w not in parent:
                parent[w] = u
                if w == y:
                    path = [y]
                    while path[-1] != x:
                        path.append(parent[path[-1]])
                    return tuple(reversed(path))
                queue.append(w)
    return None


def connected_component(graph: Graph, start: int, blocked: frozenset[int] = frozenset()) -> set[int]:
    """Component of ``start`` in the graph minus ``blocked`` vertices."""
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in graph.adjacency[u]:
            if w not in seen and w not in blocked:
                seen.add(w)
                stack.append(w)
    return seen


def is_connected(graph: Graph) -> bool:
    if graph.order == 0:
        return True
    return len(connected_component(graph, 0)) == graph.order
