"""Stable file formats: canonical JSON documents, DOT and flat edge lists.

Canonical JSON keeps keys sorted, edges sorted, and contains no floats, so
emit -> parse -> emit is byte-identical and result digests are stable across
platforms.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .errors import ValidationError
from .graph import Graph, make_graph
from .topology import HierGraph, validate_hierarchical

FORMAT_GRAPH = "hiernet/1"
FORMAT_PACKING = "hiernet-packing/1"
FORMAT_CERTIFICATE = "hiernet-cert/1"

_PALETTE = (
    "#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c",
    "#fdbf6f", "#ff7f00", "#cab2d6", "#6a3d9a", "#ffff99", "#b15928",
)


def dumps_canonical(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def result_digest(doc: dict[str, Any]) -> str:
    trimmed = {k: v for k, v in doc.items() if k != "manifest"}
    return hashlib.sha256(dumps_canonical(trimmed).encode("utf-8")).hexdigest()


def graph_to_doc(obj: Graph | HierGraph) -> dict[str, Any]:
    hierarchy = None
    graph = obj
    if isinstance(obj, HierGraph):
        graph = obj.graph
        hierarchy = {
            "base_degree": obj.base_degree,
            "cluster_count": obj.cluster_count,
            "cluster_order": obj.cluster_order,
            "family": obj.family,
            "out_neighbour": list(obj.out_neighbour),
        }
    return {
        "format": FORMAT_GRAPH,
        "order": graph.order,
        "edges": [list(e) for e in sorted(graph.edges())],
        "labels": list(graph.labels) if graph.labels is not None else None,
        "hierarchy": hierarchy,
    }


def doc_to_graph(doc: dict[str, Any]) -> Graph | HierGraph:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_GRAPH:
        raise ValidationError(f"not a {FORMAT_GRAPH} document")
    try:
        order = int(doc["order"])
        edges = [(int(u), int(v)) for u, v in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed graph document: {exc}") from exc
    labels = doc.get("labels")
    graph = make_graph(order, edges, labels)
    hierarchy = doc.get("hierarchy")
    if hierarchy is None:
        return graph
    try:
        hier = HierGraph(
            graph=graph,
            cluster_count=int(hierarchy["cluster_count"]),
            cluster_order=int(hierarchy["cluster_order"]),
            base_degree=int(hierarchy["base_degree"]),
            out_neighbour=tuple(int(v) for v in hierarchy["out_neighbour"]),
            family=str(hierarchy.get("family", "custom")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed hierarchy block: {exc}") from exc
    report = validate_hierarchical(hier)
    if not report.ok:
        raise ValidationError(f"hierarchy block is inconsistent: {report.violations[0]}")
    return hier


def to_dot(obj: Graph | HierGraph) -> str:
    """DOT text; clusters get distinct fill colours and cross edges dash."""
    hier = obj if isinstance(obj, HierGraph) else None
    graph = obj.graph if hier is not None else obj
    lines = ["graph hiernet {", "  node [style=filled];"]
    for v in range(graph.order):
        attrs = [f'label="{graph.label_of(v)}"']
        if hier is not None:
            attrs.append(f'fillcolor="{_PALETTE[hier.cluster_of(v) % len(_PALETTE)]}"')
        else:
            attrs.append('fillcolor="#dddddd"')
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u, v in sorted(graph.edges()):
        style = ""
        if hier is not None and hier.cluster_of(u) != hier.cluster_of(v):
            style = " [style=dashed]"
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_edge_list(obj: Graph | HierGraph) -> str:
    graph = obj.graph if isinstance(obj, HierGraph) else obj
    lines = [f"# order {graph.order}"]
    lines.extend(f"{u} {v}" for u, v in sorted(graph.edges()))
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    order = None
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "order":
                order = int(parts[1])
            continue
        u, v = line.split()
        edges.append((int(u), int(v)))
    if order is None:
        raise ValidationError('edge list is missing its "# order N" header')
    return make_graph(order, edges)


def parse_graph_text(text: str) -> Graph | HierGraph:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from exc
        return doc_to_graph(doc)
    return parse_edge_list(text)


def emit_graph(obj: Graph | HierGraph, fmt: str) -> str:
    if fmt == "json":
        return dumps_canonical(graph_to_doc(obj))
    if fmt == "dot":
        return to_dot(obj)
    if fmt == "edges":
        return to_edge_list(obj)
    raise ValidationError(f"unknown format {fmt!r}")


def resolve_vertex(obj: Graph | HierGraph, token: str) -> int:
    """Accept a dense id or a display label, with or without angle brackets."""
    graph = obj.graph if isinstance(obj, HierGraph) else obj
    token = token.strip()
    try:
        v = int(token)
    except ValueError:
        pass
    else:
        if 0 <= v < graph.order:
            return v
        raise ValidationError(f"vertex id {v} is outside [0,{graph.order})")
    if graph.labels is not None:
        candidates = {token}
        bare = token.strip("<>").strip("⟨⟩")
        candidates.add(f"⟨{bare}⟩")
        candidates.add(bare)
        for cand in candidates:
            if cand in graph.labels:
                return graph.labels.index(cand)
    raise ValidationError(f"cannot resolve vertex {token!r}")


def packing_to_doc(terminals, trees, case_kind: str | None, report) -> dict[str, Any]:
    return {
        "format": FORMAT_PACKING,
        "s": list(terminals),
        "case": case_kind,
        "trees": [[list(e) for e in tree] for tree in trees],
        "report": {
            "valid": report.valid,
            "violations": [
                {"kind": v.kind, "witness": list(v.witness) if isinstance(v.witness, tuple) else v.witness,
                 "trees": list(v.trees)}
                for v in report.violations
            ],
        },
    }


def doc_to_packing(doc: dict[str, Any]) -> tuple[tuple[int, int, int], list[list[tuple[int, int]]]]:
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_PACKING:
        raise ValidationError(f"not a {FORMAT_PACKING} document")
    try:
        terminals = tuple(int(v) for v in doc["s"])
        trees = [[(int(u), int(v)) for u, v in tree] for tree in doc["trees"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed packing document: {exc}") from exc
    if len(terminals) != 3:
        raise ValidationError(f"terminal list must have three entries, got {len(terminals)}")
    return terminals, trees
