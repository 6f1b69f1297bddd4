"""Backtracking search for families of internally edge-disjoint terminal trees.

A family of r trees that pairwise share exactly the three terminals can
always be pruned to a family of minimal trees (every leaf a terminal), so the
search only enumerates minimal trees.  A minimal tree for three terminals is
a spider: three paths from one junction vertex to the terminals, pairwise
sharing only the junction.  Trees are ordered by (non-terminal vertex count,
edge tuple) and families are enumerated with strictly ascending tree keys,
which visits every family exactly once.  Iterative deepening on the total
number of non-terminal vertices used by the family keeps the first hit small
and makes exhaustion at budget n-3 a proof of impossibility.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Edge, Graph, edge_key

FOUND = "found"
IMPOSSIBLE = "impossible"
BUDGET = "budget"


@dataclass(frozen=True)
class PackOutcome:
    status: str
    trees: tuple[tuple[Edge, ...], ...] | None
    nodes: int


class _BudgetHit(Exception):
    pass


class _Searcher:
    def __init__(self, graph: Graph, terminals: tuple[int, int, int], count: int, max_nodes: int):
        self.graph = graph
        self.s = terminals
        self.s_mask = (1 << terminals[0]) | (1 << terminals[1]) | (1 << terminals[2])
        self.s_set = set(terminals)
        self.count = count
        self.max_nodes = max_nodes
        self.nodes = 0
        self.adj = graph.adjacency
        self.full_avail = ((1 << graph.order) - 1) & ~self.s_mask
        self.ss_all = frozenset(
            edge_key(a, b)
            for i, a in enumerate(terminals)
            for b in terminals[i + 1:]
            if graph.has_edge(a, b)
        )

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _BudgetHit

    def _spiders(self, avail: int, ss_avail: frozenset[Edge], max_internal: int):
        """All minimal terminal trees using at most max_internal non-terminal
        vertices from avail, bucketed by internal count and sorted."""
        buckets: dict[int, list[tuple[tuple[Edge, ...], int, frozenset[Edge]]]] = {}
        s = self.s
        s_set = self.s_set
        adj = self.adj
        emit = buckets.setdefault

        def walk(ti: int, cur: int, used: int, edges: list[Edge], internal: int, ss_used: frozenset[Edge]):
            self._tick()
            while ti < 3 and s[ti] == center:
                ti += 1
            if ti == 3:
                emit(internal, []).append((tuple(sorted(edges)), used, ss_used))
                return
            tgt = s[ti]
            for nb in adj[cur]:
                if nb == tgt:
                    e = edge_key(cur, nb)
                    if cur in s_set:
                        if e not in ss_avail or e in ss_used:
                            continue
                        walk(ti + 1, center, used, edges + [e], internal, ss_used | {e})
                    else:
                        walk(ti + 1, center, used, edges + [e], internal, ss_used)
                elif nb not in s_set and internal < max_internal:
                    bit = 1 << nb
                    if avail & bit and not used & bit:
                        walk(ti, nb, used | bit, edges + [edge_key(cur, nb)], internal + 1, ss_used)

        for center in range(self.graph.order):
            cbit = 1 << center
            if center in s_set:
                walk(0, center, 0, [], 0, frozenset())
            elif avail & cbit and max_internal >= 1:
                walk(0, center, cbit, [], 1, frozenset())
        for bucket in buckets.values():
            bucket.sort(key=lambda item: item[0])
        return buckets

    def _port_short(self, avail: int, ss_avail: frozenset[Edge], needed: int) -> bool:
        for t in self.s:
            ports = sum(1 for e in ss_avail if t in e)
            for nb in self.adj[t]:
                if avail & (1 << nb):
                    ports += 1
                    if ports >= needed:
                        break
            if ports < needed:
                return True
        return False

    def _terminals_connected(self, avail: int, ss_avail: frozenset[Edge]) -> bool:
        allowed = avail | self.s_mask
        seen = 1 << self.s[0]
        stack = [self.s[0]]
        target = self.s_mask
        while stack:
            u = stack.pop()
            u_in_s = u in self.s_set
            for w in self.adj[u]:
                bit = 1 << w
                if seen & bit or not allowed & bit:
                    continue
                if u_in_s and w in self.s_set and edge_key(u, w) not in ss_avail:
                    continue
                seen |= bit
                if seen & target == target:
                    return True
                stack.append(w)
        return seen & target == target

    def _extend(
        self,
        level: int,
        avail: int,
        ss_avail: frozenset[Edge],
        floor_b: int,
        floor_edges: tuple[Edge, ...],
        budget_left: int,
    ):
        if level == self.count:
            return []
        remaining = self.count - level
        if self._port_short(avail, ss_avail, remaining):
            return None
        if not self._terminals_connected(avail, ss_avail):
            return None
        cap = budget_left // remaining
        buckets = self._spiders(avail, ss_avail, cap)
        for b in range(floor_b, cap + 1):
            for edges, used, ss_used in buckets.get(b, ()):
                if b == floor_b and edges <= floor_edges:
                    continue
                self._tick()
                sub = self._extend(
                    level + 1,
                    avail & ~used,
                    ss_avail - ss_used,
                    b,
                    edges,
                    budget_left - b,
                )
                if sub is not None:
                    return [edges] + sub
        return None

    def run(self) -> PackOutcome:
        max_internal = max(self.graph.order - 3, 0)
        try:
            for total in range(0, max_internal + 1):
                result = self._extend(0, self.full_avail, self.ss_all, 0, (), total)
                if result is not None:
                    return PackOutcome(FOUND, tuple(result), self.nodes)
        except _BudgetHit:
            return PackOutcome(BUDGET, None, self.nodes)
        return PackOutcome(IMPOSSIBLE, None, self.nodes)


def find_packing(graph: Graph, terminals, count: int, *, max_nodes: int) -> PackOutcome:
    """Search for ``count`` pairwise internally edge-disjoint terminal trees.

    FOUND returns the lexicographically first family under the tree order;
    IMPOSSIBLE is a completed exhaustive proof that no family exists;
    BUDGET means the node budget ran out before either conclusion.
    """
    s = tuple(sorted(terminals))
    if len(s) != 3 or len(set(s)) != 3:
        raise ValueError(f"terminal set must contain three distinct vertices, got {terminals}")
    for v in s:
        if not (0 <= v < graph.order):
            raise ValueError(f"terminal {v} is not in the graph")
    if count < 1:
        raise ValueError(f"tree count must be positive, got {count}")
    return _Searcher(graph, s, count, max_nodes).run()
