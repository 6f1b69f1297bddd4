"""Generators for the supported networks and the two-level composition.

Base families: star graphs (permutation swap adjacency), hypercubes and
folded hypercubes (bit-string adjacency).  Two-level families: hierarchical
star (hs), hierarchical cubic network (hcn) and hierarchical folded
hypercube (hfq), all built by ``compose_hierarchical`` which glues
``t`` copies of a d-regular base graph on t vertices with a perfect
matching of cross edges and verifies every structural condition.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass

from .errors import CompositionError, GraphConstructionError, SizeBudgetError
from .graph import Edge, Graph, degree_profile, edge_key, make_graph

DEFAULT_MAX_VERTICES = 20_000
BUDGET_ENV_VAR = "HIERNET_MAX_VERTICES"


def _resolve_budget(max_vertices: int | None) -> int:
    if max_vertices is not None:
        return max_vertices
    env = os.environ.get(BUDGET_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_MAX_VERTICES


def _check_budget(required: int, max_vertices: int | None, what: str) -> None:
    budget = _resolve_budget(max_vertices)
    if required > budget:
        raise SizeBudgetError(
            f"{what} needs {required} vertices but the budget is {budget}"
            f" (override with max_vertices or ${BUDGET_ENV_VAR})",
            required=required,
            budget=budget,
        )


@dataclass(frozen=True)
class HierGraph:
    """A validated two-level network.

    Vertex ids are laid out as ``cluster_index * cluster_order + local_index``
    so cluster membership is O(1) arithmetic.  ``out_neighbour[v]`` is the
    single neighbour of v outside its own cluster; the cross edges form a
    fixed-point-free perfect matching.
    """

    graph: Graph
    cluster_count: int
    cluster_order: int
    base_degree: int
    out_neighbour: tuple[int, ...]
    family: str = "custom"

    def cluster_of(self, v: int) -> int:
        return v // self.cluster_order

    def local_of(self, v: int) -> int:
        return v % self.cluster_order

    def cluster_vertices(self, c: int) -> range:
        start = c * self.cluster_order
        return range(start, start + self.cluster_order)

    @property
    def theorem_ready(self) -> bool:
        """Do we have enough clusters for the constructive tree builder?"""
        return self.cluster_count >= self.base_degree + 3


@dataclass(frozen=True)
class HnReport:
    ok: bool
    violations: tuple[str, ...]


def star_graph(n: int, max_vertices: int | None = None) -> Graph:
    """Star graph on all permutations of 1..n; u ~ v iff v is u with the
    first symbol swapped against the symbol at some position i >= 2."""
    if n < 2:
        raise GraphConstructionError(f"star graph needs n >= 2, got {n}")
    if n > 9:
        raise GraphConstructionError("permutation labels use single digits; n must be <= 9")
    size = math.factorial(n)
    _check_budget(size, max_vertices, f"star graph of dimension {n}")
    perms = list(itertools.permutations(range(1, n + 1)))
    index = {p: i for i, p in enumerate(perms)}
    edges: set[Edge] = set()
    for i, p in enumerate(perms):
        lst = list(p)
        for pos in range(1, n):
            lst[0], lst[pos] = lst[pos], lst[0]
            j = index[tuple(lst)]
            edges.add(edge_key(i, j))
            lst[0], lst[pos] = lst[pos], lst[0]
    labels = ["".join(str(d) for d in p) for p in perms]
    return make_graph(size, edges, labels)


def hypercube(n: int, max_vertices: int | None = None) -> Graph:
    """n-dimensional hypercube on bit strings, adjacency = Hamming distance 1."""
    if n < 1:
        raise GraphConstructionError(f"hypercube needs n >= 1, got {n}")
    size = 1 << n
    _check_budget(size, max_vertices, f"hypercube of dimension {n}")
    edges = []
    for v in range(size):
        for b in range(n):
            u = v ^ (1 << b)
            if u > v:
                edges.append((v, u))
    labels = [format(v, f"0{n}b") for v in range(size)]
    return make_graph(size, edges, labels)


def folded_hypercube(n: int, max_vertices: int | None = None) -> Graph:
    """Hypercube plus an edge between every bit string and its complement."""
    if n < 2:
        raise GraphConstructionError(f"folded hypercube needs n >= 2, got {n}")
    size = 1 << n
    _check_budget(size, max_vertices, f"folded hypercube of dimension {n}")
    cube = hypercube(n, max_vertices=max_vertices)
    mask = size - 1
    extra = [(v, v ^ mask) for v in range(size) if v < (v ^ mask)]
    return make_graph(size, list(cube.edges()) + extra, cube.labels)


def compose_hierarchical(
    base: Graph,
    cross: list[Edge],
    *,
    labels: list[str] | None = None,
    family: str = "custom",
    max_vertices: int | None = None,
) -> HierGraph:
    """Glue ``t = base.order`` copies of a regular base graph with cross edges.

    Cross edges are given as global vertex pairs under the layout
    ``cluster * t + local``.  Every structural condition is re-verified here
    rather than trusted: each vertex must gain exactly one out-neighbour,
    every cluster pair must carry one or two cross edges, and the total must
    be t*t/2.  Violations raise with a diagnostic naming the offender.
    """
    profile = degree_profile(base)
    if profile.regular is None:
        raise CompositionError(
            f"base graph is not regular (degrees range {profile.min_degree}..{profile.max_degree})"
        )
    t = base.order
    total = t * t
    _check_budget(total, max_vertices, f"composition of {t} clusters")

    out = [-1] * total
    for a, b in cross:
        for v in (a, b):
            if not (0 <= v < total):
                raise CompositionError(f"cross edge ({a},{b}) references vertex {v} outside [0,{total})")
        if a // t == b // t:
            raise CompositionError(f"cross edge ({a},{b}) stays inside cluster {a // t}")
        for v, w in ((a, b), (b, a)):
            if out[v] != -1:
                raise CompositionError(f"vertex {v} has two out-neighbours ({out[v]} and {w})")
            out[v] = w
    for v in range(total):
        if out[v] == -1:
            raise CompositionError(f"vertex {v} has no out-neighbour in the cross list")

    edges: list[Edge] = []
    for c in range(t):
        offset = c * t
        for u, v in base.edges():
            edges.append((offset + u, offset + v))
    edges.extend(cross)
    graph = make_graph(total, edges, labels)
    hier = HierGraph(
        graph=graph,
        cluster_count=t,
        cluster_order=t,
        base_degree=profile.regular,
        out_neighbour=tuple(out),
        family=family,
    )
    report = validate_hierarchical(hier)
    if not report.ok:
        raise CompositionError("; ".join(report.violations[:4]))
    return hier


def validate_hierarchical(hier: HierGraph) -> HnReport:
    """Exhaustively check every structural invariant of a two-level network."""
    bad: list[str] = []
    g = hier.graph
    t = hier.cluster_count
    d = hier.base_degree
    if hier.cluster_order != t:
        bad.append(f"cluster order {hier.cluster_order} differs from cluster count {t}")
    if g.order != t * hier.cluster_order:
        bad.append(f"graph order {g.order} is not cluster_count*cluster_order = {t * hier.cluster_order}")
    if len(hier.out_neighbour) != g.order:
        bad.append("out-neighbour table length differs from graph order")
    if bad:
        return HnReport(False, tuple(bad))

    pair_counts: dict[tuple[int, int], int] = {}
    for v in range(g.order):
        o = hier.out_neighbour[v]
        if not (0 <= o < g.order) or o == v:
            bad.append(f"vertex {v} has invalid out-neighbour {o}")
            continue
        if hier.out_neighbour[o] != v:
            bad.append(f"out-neighbour map is not an involution at vertex {v}")
        if hier.cluster_of(o) == hier.cluster_of(v):
            bad.append(f"out-neighbour of vertex {v} lies in its own cluster")
        if not g.has_edge(v, o):
            bad.append(f"matching edge ({v},{o}) is absent from the graph")
        outside = [w for w in g.adjacency[v] if hier.cluster_of(w) != hier.cluster_of(v)]
        if outside != [o]:
            bad.append(
                f"vertex {v} has {len(outside)} neighbours outside its cluster, expected exactly its out-neighbour"
            )
        intra = len(g.adjacency[v]) - len(outside)
        if intra != d:
            bad.append(f"vertex {v} has intra-cluster degree {intra}, expected {d}")
        if v < o:
            key = (hier.cluster_of(v), hier.cluster_of(o))
            key = key if key[0] < key[1] else (key[1], key[0])
            pair_counts[key] = pair_counts.get(key, 0) + 1
    for (ci, cj), count in sorted(pair_counts.items()):
        if count not in (1, 2):
            bad.append(f"clusters {ci} and {cj} share {count} cross edges, expected 1 or 2")
    for ci in range(t):
        for cj in range(ci + 1, t):
            if (ci, cj) not in pair_counts:
                bad.append(f"clusters {ci} and {cj} share no cross edge")
    total_cross = sum(pair_counts.values())
    if total_cross != t * t // 2 or t % 2 != 0:
        bad.append(f"total cross edges {total_cross} differ from t*t/2 = {t * t // 2}")
    return HnReport(not bad, tuple(bad))


def cluster_subgraph(hier: HierGraph, c: int) -> Graph:
    """Induced subgraph of one cluster, re-indexed to local ids."""
    order = hier.cluster_order
    offset = c * order
    adj = tuple(
        tuple(w - offset for w in hier.graph.adjacency[offset + local] if w // order == c)
        for local in range(order)
    )
    labels = None
    if hier.graph.labels is not None:
        labels = tuple(hier.graph.labels[offset + local] for local in range(order))
    return Graph(order, adj, labels)


def _two_level(
    base: Graph,
    family: str,
    partner_of_diagonal,
    max_vertices: int | None,
) -> HierGraph:
    """Shared cross-edge rules of the hs/hcn/hfq families.

    The label universe of the base doubles as the cluster universe.  A
    diagonal vertex (cluster label equals position label) connects to the
    diagonal vertex of its partner cluster; every other vertex <c,p>
    connects to the swapped address <p,c>.
    """
    t = base.order
    _check_budget(t * t, max_vertices, f"{family} network")
    cross: list[Edge] = []
    for ci in range(t):
        for pi in range(t):
            v = ci * t + pi
            if ci == pi:
                w = partner_of_diagonal(ci) * t + partner_of_diagonal(ci)
            else:
                w = pi * t + ci
            if v < w:
                cross.append((v, w))
    assert base.labels is not None
    labels = [
        f"⟨{base.labels[ci]},{base.labels[pi]}⟩"
        for ci in range(t)
        for pi in range(t)
    ]
    return compose_hierarchical(base, cross, labels=labels, family=family, max_vertices=max_vertices)


def hierarchical_star(n: int, max_vertices: int | None = None) -> HierGraph:
    """Hierarchical star network: n! star-graph clusters, diagonal vertices
    pair with the cluster whose label swaps first and last symbols."""
    if n < 2:
        raise GraphConstructionError(f"hierarchical star needs n >= 2, got {n}")
    _check_budget(math.factorial(n) ** 2, max_vertices, "hierarchical star network")
    base = star_graph(n, max_vertices=max_vertices)
    perms = list(itertools.permutations(range(1, n + 1)))
    index = {p: i for i, p in enumerate(perms)}

    def partner(ci: int) -> int:
        p = list(perms[ci])
        p[0], p[-1] = p[-1], p[0]
        return index[tuple(p)]

    return _two_level(base, "hs", partner, max_vertices)


def hierarchical_cubic(n: int, max_vertices: int | None = None) -> HierGraph:
    """Hierarchical cubic network: 2^n hypercube clusters, diagonal vertices
    pair with the bitwise-complement cluster."""
    if n < 2:
        raise GraphConstructionError(f"hierarchical cubic needs n >= 2, got {n}")
    _check_budget((1 << n) ** 2, max_vertices, "hierarchical cubic network")
    base = hypercube(n, max_vertices=max_vertices)
    mask = (1 << n) - 1
    return _two_level(base, "hcn", lambda ci: ci ^ mask, max_vertices)


def hierarchical_folded(n: int, max_vertices: int | None = None) -> HierGraph:
    """Hierarchical folded hypercube: folded-hypercube clusters with the
    same cross rules as the hierarchical cubic network."""
    if n < 2:
        raise GraphConstructionError(f"hierarchical folded hypercube needs n >= 2, got {n}")
    _check_budget((1 << n) ** 2, max_vertices, "hierarchical folded hypercube")
    base = folded_hypercube(n, max_vertices=max_vertices)
    mask = (1 << n) - 1
    return _two_level(base, "hfq", lambda ci: ci ^ mask, max_vertices)


FAMILY_BUILDERS = {
    "hs": hierarchical_star,
    "hcn": hierarchical_cubic,
    "hfq": hierarchical_folded,
}
