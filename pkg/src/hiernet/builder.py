"""Constructive packing of disjoint terminal trees in two-level networks.

Given a validated hierarchical network whose cluster count is at least the
base degree plus three, ``build_disjoint_trees`` produces ``base_degree``
pairwise internally edge-disjoint trees through any three target vertices.
The three constructions follow the cluster distribution of the targets:

* all three in one cluster: pack base_degree-1 trees inside the cluster and
  route one extra tree through the out-neighbours across the rest;
* two plus one: disjoint paths between the pair inside their cluster, then a
  fan from the loner to the out-neighbours of the path starts;
* three clusters: one dedicated intermediate cluster per tree, entered
  through one cross edge from each host cluster.

Every returned packing is re-validated before it leaves this module.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import oracle, packsearch
from .errors import (
    InvariantViolationError,
    PreconditionError,
    SearchBudgetError,
    ValidationError,
)
from .flows import CutWitness, PathFamily, disjoint_paths, k_fan
from .graph import Edge, edge_key, remove_vertices, shortest_path, tree_adjacency
from .topology import HierGraph, cluster_subgraph, validate_hierarchical

CASE_SAME_CLUSTER = "same-cluster"
CASE_TWO_CLUSTERS = "two-clusters"
CASE_THREE_CLUSTERS = "three-clusters"

DEFAULT_PACK_BUDGET = 10_000_000


@dataclass(frozen=True)
class CaseTag:
    kind: str
    clusters: tuple[int, ...]


@dataclass(frozen=True)
class TreePacking:
    """Trees pairwise sharing no edges and no vertices beyond the targets."""

    terminals: tuple[int, int, int]
    trees: tuple[tuple[Edge, ...], ...]
    case: CaseTag


def classify_case(hier: HierGraph, terminals) -> CaseTag:
    s = tuple(sorted(terminals))
    clusters = tuple(sorted({hier.cluster_of(v) for v in s}))
    kind = {1: CASE_SAME_CLUSTER, 2: CASE_TWO_CLUSTERS, 3: CASE_THREE_CLUSTERS}[len(clusters)]
    return CaseTag(kind, clusters)


def steiner_tree_connect(graph: Graph, terminals) -> tuple[Edge, ...]:
    """A tree containing all terminals (at most three), not necessarily
    minimum: union of shortest paths from the first terminal, spanning-tree
    pruned, then stripped of non-terminal leaves."""
    terms = sorted(set(terminals))
    if not terms:
        raise ValueError("terminal set must be nonempty")
    root = terms[0]
    edges: set[Edge] = set()
    for t in terms[1:]:
        path = shortest_path(graph, root, t)
        if path is None:
            raise InvariantViolationError(f"terminal {t} is unreachable from {root}")
        edges.update(edge_key(a, b) for a, b in zip(path, path[1:]))
    if not edges:
        return ()
    # The union of two shortest paths may close a cycle; keep a BFS tree.
    adj = tree_adjacency(edges)
    parent: dict[int, int] = {root: root}
    order = [root]
    for u in order:
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    tree = {edge_key(v, parent[v]) for v in parent if v != parent[v]}
    term_set = set(terms)
    while True:
        degree: dict[int, int] = {}
        for u, v in tree:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        prunable = [
            e for e in sorted(tree)
            if (degree[e[0]] == 1 and e[0] not in term_set)
            or (degree[e[1]] == 1 and e[1] not in term_set)
        ]
        if not prunable:
            return tuple(sorted(tree))
        tree -= set(prunable)


def base_cluster_pack(graph: Graph, terminals, count: int, max_nodes: int = DEFAULT_PACK_BUDGET):
    """Search for ``count`` disjoint terminal trees inside one cluster.

    Returns the first family found (deterministic), None when the exhaustive
    search proves none exists, and raises when the node budget runs out.
    """
    outcome = packsearch.find_packing(graph, terminals, count, max_nodes=max_nodes)
    if outcome.status == packsearch.FOUND:
        return list(outcome.trees)
    if outcome.status == packsearch.IMPOSSIBLE:
        return None
    raise SearchBudgetError(
        f"cluster packing gave up after {outcome.nodes} search nodes", nodes=outcome.nodes
    )


def _global_edges(edges, offset: int) -> list[Edge]:
    return [edge_key(u + offset, v + offset) for u, v in edges]


def _require_family(result: PathFamily | CutWitness, what: str) -> PathFamily:
    if isinstance(result, CutWitness):
        raise InvariantViolationError(
            f"{what} smaller than guaranteed: cut {sorted(result.separator)} found"
        )
    return result


def case_same_cluster(hier: HierGraph, terminals, *, max_nodes: int = DEFAULT_PACK_BUDGET) -> TreePacking:
    """All targets in one cluster: pack inside, plus one tree outside."""
    s = tuple(sorted(terminals))
    tag = classify_case(hier, s)
    c = tag.clusters[0]
    d = hier.base_degree
    offset = c * hier.cluster_order
    cluster = cluster_subgraph(hier, c)
    local = [v - offset for v in s]

    inner = base_cluster_pack(cluster, local, d - 1, max_nodes=max_nodes)
    if inner is None:
        raise InvariantViolationError(
            f"cluster {c} admits no {d - 1} disjoint trees; base graph hypothesis broken"
        )
    trees = [tuple(_global_edges(t, offset)) for t in inner]

    hooks = [hier.out_neighbour[v] for v in s]
    rest, new_to_old = _remove_cluster(hier, c)
    old_to_new = {old: new for new, old in enumerate(new_to_old)}
    outer = steiner_tree_connect(rest, [old_to_new[h] for h in hooks])
    outer_global = [edge_key(new_to_old[u], new_to_old[v]) for u, v in outer]
    last = outer_global + [edge_key(v, hier.out_neighbour[v]) for v in s]
    trees.append(tuple(sorted(last)))
    return _checked(hier, s, trees, tag)


def case_two_clusters(hier: HierGraph, terminals, *, max_nodes: int = DEFAULT_PACK_BUDGET) -> TreePacking:
    """Two targets share a cluster: in-cluster disjoint paths between them,
    joined over the matching to a fan from the third target."""
    s = tuple(sorted(terminals))
    tag = classify_case(hier, s)
    d = hier.base_degree
    by_cluster: dict[int, list[int]] = {}
    for v in s:
        by_cluster.setdefault(hier.cluster_of(v), []).append(v)
    c = next(cl for cl, members in sorted(by_cluster.items()) if len(members) == 2)
    x, y = by_cluster[c]
    (z,) = [v for v in s if hier.cluster_of(v) != c]

    offset = c * hier.cluster_order
    cluster = cluster_subgraph(hier, c)
    family = _require_family(
        disjoint_paths(cluster, x - offset, y - offset, d), "in-cluster path family"
    )
    paths = [tuple(v + offset for v in p) for p in family.paths]
    starts = [p[1] for p in paths]
    hooked = [hier.out_neighbour[u] for u in starts]
    if len(set(hooked)) != d:
        raise InvariantViolationError("matching failed to keep path starts distinct")

    rest, new_to_old = _remove_cluster(hier, c)
    old_to_new = {old: new for new, old in enumerate(new_to_old)}
    z_new = old_to_new[z]
    fan_targets = [old_to_new[h] for h in hooked if h != z]
    fan_paths_by_target: dict[int, tuple[int, ...]] = {}
    if fan_targets:
        fan = _require_family(
            k_fan(rest, z_new, fan_targets, len(fan_targets)), "cross-cluster fan"
        )
        for p in fan.paths:
            fan_paths_by_target[new_to_old[p[-1]]] = tuple(new_to_old[v] for v in p)
    if z in hooked:
        fan_paths_by_target[z] = (z,)

    trees = []
    for path, u, hook in zip(paths, starts, hooked):
        edges = [edge_key(a, b) for a, b in zip(path, path[1:])]
        edges.append(edge_key(u, hook))
        branch = fan_paths_by_target[hook]
        edges.extend(edge_key(a, b) for a, b in zip(branch, branch[1:]))
        trees.append(tuple(sorted(edges)))
    return _checked(hier, s, trees, tag)


def case_three_clusters(hier: HierGraph, terminals, *, max_nodes: int = DEFAULT_PACK_BUDGET) -> TreePacking:
    """Targets in three clusters: route each tree through its own
    intermediate cluster, entered by one cross edge per host cluster."""
    s = tuple(sorted(terminals))
    tag = classify_case(hier, s)
    d = hier.base_degree
    hosts = tag.clusters
    mids = [c for c in range(hier.cluster_count) if c not in hosts][:d]
    if len(mids) < d:
        raise InvariantViolationError("not enough intermediate clusters")

    anchors: dict[tuple[int, int], tuple[int, int]] = {}
    for host in hosts:
        for mid in mids:
            anchors[(host, mid)] = _cross_edge_between(hier, host, mid)

    fans: dict[int, dict[int, tuple[int, ...]]] = {}
    for v in s:
        host = hier.cluster_of(v)
        offset = host * hier.cluster_order
        cluster = cluster_subgraph(hier, host)
        targets = [anchors[(host, mid)][0] for mid in mids]
        local_targets = [u - offset for u in targets if u != v]
        by_anchor: dict[int, tuple[int, ...]] = {}
        if local_targets:
            fan = _require_family(
                k_fan(cluster, v - offset, local_targets, len(local_targets)),
                "in-cluster fan",
            )
            for p in fan.paths:
                by_anchor[p[-1] + offset] = tuple(w + offset for w in p)
        if v in targets:
            by_anchor[v] = (v,)
        fans[v] = by_anchor

    trees = []
    for mid in mids:
        edges: list[Edge] = []
        entries = []
        for v in s:
            host = hier.cluster_of(v)
            anchor, entry = anchors[(host, mid)]
            entries.append(entry)
            branch = fans[v][anchor]
            edges.extend(edge_key(a, b) for a, b in zip(branch, branch[1:]))
            edges.append(edge_key(anchor, entry))
        offset = mid * hier.cluster_order
        mid_cluster = cluster_subgraph(hier, mid)
        link = steiner_tree_connect(mid_cluster, [e - offset for e in entries])
        edges.extend(_global_edges(link, offset))
        trees.append(tuple(sorted(edges)))
    return _checked(hier, s, trees, tag)


def build_disjoint_trees(hier: HierGraph, terminals, *, max_nodes: int = DEFAULT_PACK_BUDGET) -> TreePacking:
    """``base_degree`` pairwise internally edge-disjoint trees through any
    three targets of a validated, theorem-ready hierarchical network."""
    s = tuple(sorted(terminals))
    if len(s) != 3 or len(set(s)) != 3:
        raise ValueError(f"need three distinct target vertices, got {terminals}")
    for v in s:
        if not (0 <= v < hier.graph.order):
            raise ValueError(f"vertex {v} is not in the graph")
    report = validate_hierarchical(hier)
    if not report.ok:
        raise ValidationError(f"invalid hierarchical graph: {report.violations[0]}")
    if not hier.theorem_ready:
        raise PreconditionError(
            f"need at least base_degree+3 = {hier.base_degree + 3} clusters, have "
            f"{hier.cluster_count}; use the exact oracle for this graph"
        )
    tag = classify_case(hier, s)
    builder = {
        CASE_SAME_CLUSTER: case_same_cluster,
        CASE_TWO_CLUSTERS: case_two_clusters,
        CASE_THREE_CLUSTERS: case_three_clusters,
    }[tag.kind]
    return builder(hier, s, max_nodes=max_nodes)


def _checked(hier: HierGraph, s, trees, tag: CaseTag) -> TreePacking:
    report = oracle.validate_packing(hier.graph, s, trees)
    if not report.valid:
        first = report.violations[0]
        raise InvariantViolationError(
            f"constructed packing failed validation: {first.kind} at {first.witness}"
        )
    if len(trees) != hier.base_degree:
        raise InvariantViolationError(
            f"built {len(trees)} trees, expected {hier.base_degree}"
        )
    return TreePacking(tuple(s), tuple(trees), tag)


def _remove_cluster(hier: HierGraph, c: int):
    return remove_vertices(hier.graph, hier.cluster_vertices(c))


def _cross_edge_between(hier: HierGraph, c_low_priority: int, c_other: int) -> tuple[int, int]:
    """The cross edge joining two clusters, tie-broken by the smaller vertex
    id inside the lower-indexed cluster; returned as (vertex in first
    cluster, vertex in second cluster)."""
    lo, hi = min(c_low_priority, c_other), max(c_low_priority, c_other)
    for v in hier.cluster_vertices(lo):
        o = hier.out_neighbour[v]
        if hier.cluster_of(o) == hi:
            return (v, o) if c_low_priority == lo else (o, v)
    raise InvariantViolationError(f"clusters {lo} and {hi} share no cross edge")
