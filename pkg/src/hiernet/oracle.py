"""Ground truth: exact tree-packing numbers, packing validation and bounds.

``kappa_s_exact`` and ``kappa3_exact`` rely on the exhaustive packer in
``packsearch``; they abstain with explicit bounds instead of guessing when
the node budget runs out.  The two bound helpers are independent
cross-checks, never consulted inside the exact computations.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import packsearch
from .errors import InvariantViolationError, ValidationError
from .graph import (
    Edge,
    Graph,
    canonical_edges,
    degree_profile,
    is_connected,
    reachable_in_edges,
    spanned_vertices,
)

KIND_NOT_A_TREE = "not-a-tree"
KIND_MISSING_TERMINAL = "missing-S-vertex"
KIND_SHARED_VERTEX = "shared-vertex"
KIND_SHARED_EDGE = "shared-edge"

# Budget for one packing search invocation, in search-tree nodes.
DEFAULT_NODE_BUDGET = 10_000_000


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: int | Edge
    trees: tuple[int, ...]


@dataclass(frozen=True)
class PackingReport:
    valid: bool
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class KappaSResult:
    """Exact maximum tree count for one terminal set, or honest bounds.

    When lower and upper bound meet the result is exact; otherwise the truth
    lies somewhere in between and ``value`` is None.
    """

    lower_bound: int
    upper_bound: int
    packing: tuple[tuple[Edge, ...], ...] | None
    nodes: int

    @property
    def exact(self) -> bool:
        return self.lower_bound == self.upper_bound

    @property
    def value(self) -> int | None:
        return self.lower_bound if self.exact else None


@dataclass(frozen=True)
class Kappa3Certificate:
    """Minimum over examined 3-sets of the exact packing number."""

    value: int | None
    lower_bound: int
    upper_bound: int
    minimizing_s: tuple[int, int, int] | None
    packing: tuple[tuple[Edge, ...], ...] | None
    exhausted: bool
    exact: bool
    sets_examined: int
    nodes: int


def _find_cycle_edge(edges: Sequence[Edge]) -> Edge:
    """Some edge closing a cycle in the edge set (union-find leftovers)."""
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru == rv:
            return (u, v)
        parent[ru] = rv
    raise AssertionError("no cycle present")


def validate_packing(graph: Graph, terminals: Iterable[int], trees: Sequence[Iterable[Edge]]) -> PackingReport:
    """Check the full packing contract and report every violation found.

    Malformed input (unknown vertex ids, edges absent from the host graph,
    a terminal set that is not three distinct vertices) raises; semantic
    violations come back as data.
    """
    s = tuple(sorted(terminals))
    if len(s) != 3 or len(set(s)) != 3:
        raise ValidationError(f"terminal set must be three distinct vertices, got {s}")
    for v in s:
        if not (0 <= v < graph.order):
            raise ValidationError(f"terminal {v} is not in the graph")
    canon: list[tuple[Edge, ...]] = []
    for edges in trees:
        tree = canonical_edges(edges)
        for u, v in tree:
            if not (0 <= u < graph.order) or not (0 <= v < graph.order):
                raise ValidationError(f"edge ({u},{v}) references a vertex outside the graph")
            if not graph.has_edge(u, v):
                raise ValidationError(f"edge ({u},{v}) is absent from the host graph")
        canon.append(tree)

    violations: list[Violation] = []
    spans: list[set[int]] = []
    for i, tree in enumerate(canon):
        span = spanned_vertices(tree)
        spans.append(span)
        for v in s:
            if v not in span:
                violations.append(Violation(KIND_MISSING_TERMINAL, v, (i,)))
        if tree:
            reached = reachable_in_edges(tree, tree[0][0])
            if len(reached) != len(span):
                violations.append(Violation(KIND_NOT_A_TREE, min(span - reached), (i,)))
            elif len(tree) != len(span) - 1:
                violations.append(Violation(KIND_NOT_A_TREE, _find_cycle_edge(tree), (i,)))
        else:
            violations.append(Violation(KIND_NOT_A_TREE, s[0], (i,)))
    s_set = set(s)
    for i in range(len(canon)):
        for j in range(i + 1, len(canon)):
            for v in sorted((spans[i] & spans[j]) - s_set):
                violations.append(Violation(KIND_SHARED_VERTEX, v, (i, j)))
            for e in sorted(set(canon[i]) & set(canon[j])):
                violations.append(Violation(KIND_SHARED_EDGE, e, (i, j)))
    return PackingReport(not violations, tuple(violations))


def kappa_s_exact(
    graph: Graph,
    terminals: Iterable[int],
    upper: int | None = None,
    *,
    max_nodes: int = DEFAULT_NODE_BUDGET,
) -> KappaSResult:
    """Exact maximum number of internally edge-disjoint terminal trees.

    Tree counts descend from the cap; each level runs the packer to
    completion, so the first success is the exact value.  The minimum
    terminal degree is a sound cap because distinct trees consume distinct
    edges at every terminal.  ``max_nodes`` bounds each level's search.
    """
    s = tuple(sorted(terminals))
    if not is_connected(graph):
        raise ValidationError("the host graph must be connected")
    cap = min(graph.degree(v) for v in s)
    if upper is not None:
        cap = min(cap, upper)
    if cap < 1:
        raise ValueError(f"upper bound must be at least 1, got {cap}")
    nodes = 0
    proven_upper = cap
    for r in range(cap, 0, -1):
        outcome = packsearch.find_packing(graph, s, r, max_nodes=max_nodes)
        nodes += outcome.nodes
        if outcome.status == packsearch.FOUND:
            return KappaSResult(r, proven_upper, outcome.trees, nodes)
        if outcome.status == packsearch.IMPOSSIBLE:
            proven_upper = r - 1
    if proven_upper == 0:
        raise InvariantViolationError("no terminal tree found in a connected graph")
    return KappaSResult(1, proven_upper, None, nodes)


def _phase1_worker(args) -> tuple[str, packsearch.PackOutcome]:
    graph, s, cap, budget = args
    outcome = packsearch.find_packing(graph, s, cap, max_nodes=budget)
    return outcome.status, outcome


def _scan_sets(
    graph: Graph,
    sets: Sequence[tuple[int, int, int]],
    max_nodes: int,
    jobs: int,
    exhausted: bool,
) -> Kappa3Certificate:
    """Two-phase minimum scan shared by the exhaustive and sample modes.

    Phase 1 tries every set at its own degree cap; a success there is exact
    because the cap is sound.  Phase 2 walks the leftovers in order,
    descending through completed impossibility proofs, and maintains the
    running minimum.  The result is identical for any job count because
    per-set searches are deterministic and the merge order is fixed.
    """
    caps = {s: min(graph.degree(v) for v in s) for s in sets}

    results: dict[tuple[int, int, int], tuple[str, packsearch.PackOutcome]] = {}
    if jobs > 1 and len(sets) > 1:
        payload = [(graph, s, caps[s], max_nodes) for s in sets]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for s, res in zip(sets, pool.map(_phase1_worker, payload, chunksize=8)):
                results[s] = res
    else:
        for s in sets:
            results[s] = _phase1_worker((graph, s, caps[s], max_nodes))
    nodes = sum(out.nodes for _, out in results.values())

    best: int | None = None
    exact_values: dict[tuple[int, int, int], tuple[tuple[Edge, ...], ...]] = {}
    exact_value_of: dict[tuple[int, int, int], int] = {}
    for s in sets:
        status, out = results[s]
        if status == packsearch.FOUND:
            exact_values[s] = out.trees
            exact_value_of[s] = caps[s]
            best = caps[s] if best is None else min(best, caps[s])

    undecided: list[tuple[int, int, int]] = []
    for s in sets:
        status, _ = results[s]
        if status == packsearch.FOUND:
            continue
        upper_s = caps[s] - 1 if status == packsearch.IMPOSSIBLE else caps[s]
        r = upper_s if best is None else min(best, upper_s)
        hit_budget = False
        while r >= 1:
            outcome = packsearch.find_packing(graph, s, r, max_nodes=max_nodes)
            nodes += outcome.nodes
            if outcome.status == packsearch.FOUND:
                if r == upper_s:
                    exact_values[s] = outcome.trees
                    exact_value_of[s] = r
                best = r if best is None else min(best, r)
                break
            if outcome.status == packsearch.IMPOSSIBLE:
                upper_s = r - 1
                r -= 1
            else:
                hit_budget = True
                break
        else:
            raise InvariantViolationError("no terminal tree found in a connected graph")
        if hit_budget:
            undecided.append(s)

    exact = best is not None and (not undecided or best == 1)
    if best is None:
        upper = min(caps.values(), default=0)
        return Kappa3Certificate(None, 1, upper, None, None, exhausted, False, len(sets), nodes)
    minimizing = min((s for s, v in exact_value_of.items() if v == best), default=None)
    packing = exact_values.get(minimizing) if minimizing is not None else None
    return Kappa3Certificate(
        best if exact else None,
        best if exact else 1,
        best,
        minimizing,
        packing,
        exhausted,
        exact,
        len(sets),
        nodes,
    )


def kappa3_exact(
    graph: Graph,
    *,
    sample: tuple[int, int] | None = None,
    max_nodes: int = DEFAULT_NODE_BUDGET,
    jobs: int = 1,
) -> Kappa3Certificate:
    """Minimum packing number over 3-sets: exhaustive or seeded sample.

    Exhaustive mode enumerates all C(n,3) sets; sample mode draws
    ``sample=(count, seed)`` distinct sets and serves as upper-bound
    evidence only (the certificate is marked not exhausted).
    """
    if graph.order < 3:
        raise ValueError("need at least three vertices")
    if not is_connected(graph):
        raise ValidationError("the host graph must be connected")
    if sample is None:
        sets = list(itertools.combinations(range(graph.order), 3))
        exhausted = True
    else:
        count, seed = sample
        rng = random.Random(seed)
        total = math.comb(graph.order, 3)
        chosen: set[tuple[int, int, int]] = set()
        while len(chosen) < min(count, total):
            chosen.add(tuple(sorted(rng.sample(range(graph.order), 3))))
        sets = sorted(chosen)
        exhausted = False
    return _scan_sets(graph, sets, max_nodes, jobs, exhausted)


def bound_upper_adjacent_min_degree(graph: Graph) -> int | None:
    """Degree-based cap: an edge joining two minimum-degree vertices caps
    the 3-set packing minimum at min-degree minus one; absent otherwise."""
    profile = degree_profile(graph)
    delta = profile.min_degree
    for u in range(graph.order):
        if graph.degree(u) != delta:
            continue
        for v in graph.adjacency[u]:
            if graph.degree(v) == delta:
                return delta - 1
    return None


def bound_lower_from_kappa(kappa: int) -> int:
    """Floor implied by vertex connectivity: writing it as 4k+r, any 3-set
    admits at least 3k + ceil(r/2) disjoint trees."""
    if kappa < 1:
        raise ValueError(f"connectivity must be positive, got {kappa}")
    k, r = divmod(kappa, 4)
    return 3 * k + (r + 1) // 2
