"""Command-line interface: generate, build trees, run oracles, verify.

Exit codes: 0 success (including an explicit "unknown" oracle abstention),
1 semantic failure (invalid packing, --expect mismatch), 2 malformed input,
3 precondition or size-budget refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any

from . import __version__, builder, io, oracle, topology
from .errors import (
    CompositionError,
    GraphConstructionError,
    HiernetError,
    PreconditionError,
    SizeBudgetError,
    ValidationError,
)
from .flows import vertex_connectivity
from .graph import Graph
from .topology import HierGraph

EXIT_OK = 0
EXIT_SEMANTIC = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_graph(path: str) -> Graph | HierGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    return io.parse_graph_text(text)


def _manifest(args: argparse.Namespace, doc: dict[str, Any], seed: int | None, started: float) -> dict[str, Any]:
    params = {k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None}
    return {
        "command": args.command,
        "parameters": {k: str(v) for k, v in params.items()},
        "seed": seed,
        "tool_version": __version__,
        "wall_time_ms": int((time.monotonic() - started) * 1000),
        "result_digest": io.result_digest(doc),
    }


def cmd_gen(args: argparse.Namespace) -> int:
    budget = args.budget
    if args.family == "compose":
        if args.spec is None:
            raise ValidationError("compose needs --spec FILE")
        spec = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        try:
            base = io.doc_to_graph(spec["base"]) if spec["base"].get("format") else None
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValidationError(f"malformed compose spec: {exc}") from exc
        if isinstance(base, HierGraph):
            raise ValidationError("compose base must be a plain graph")
        cross = [(int(u), int(v)) for u, v in spec.get("cross", [])]
        obj: Graph | HierGraph = topology.compose_hierarchical(
            base, cross, family=str(spec.get("family", "custom")), max_vertices=budget
        )
    elif args.family in topology.FAMILY_BUILDERS:
        if args.n is None:
            raise ValidationError(f"family {args.family} needs a dimension argument")
        obj = topology.FAMILY_BUILDERS[args.family](args.n, max_vertices=budget)
    elif args.family == "star":
        obj = topology.star_graph(args.n, max_vertices=budget)
    elif args.family == "cube":
        obj = topology.hypercube(args.n, max_vertices=budget)
    elif args.family == "folded":
        obj = topology.folded_hypercube(args.n, max_vertices=budget)
    else:
        raise ValidationError(f"unknown family {args.family!r}")
    _write_out(io.emit_graph(obj, args.format), args.out)
    return EXIT_OK


def cmd_strees(args: argparse.Namespace) -> int:
    started = time.monotonic()
    obj = _load_graph(args.graph)
    if not isinstance(obj, HierGraph):
        raise ValidationError("not a hierarchical graph: no hierarchy block present")
    terminals = sorted(io.resolve_vertex(obj, tok) for tok in args.s)
    if len(set(terminals)) != 3:
        raise ValidationError(f"need three distinct targets, got {terminals}")
    packing = builder.build_disjoint_trees(obj, terminals)
    report = oracle.validate_packing(obj.graph, packing.terminals, packing.trees)
    doc = io.packing_to_doc(packing.terminals, packing.trees, packing.case.kind, report)
    doc["manifest"] = _manifest(args, doc, None, started)
    _write_out(io.dumps_canonical(doc), args.out)
    return EXIT_OK if report.valid else EXIT_SEMANTIC


def _expect_check(expected: int | None, actual: int | None) -> int:
    if expected is None:
        return EXIT_OK
    if actual is None or actual != expected:
        print(f"expectation failed: wanted {expected}, got {actual}", file=sys.stderr)
        return EXIT_SEMANTIC
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    started = time.monotonic()
    obj = _load_graph(args.graph)
    graph = obj.graph if isinstance(obj, HierGraph) else obj
    budget = args.budget if args.budget is not None else oracle.DEFAULT_NODE_BUDGET
    seed: int | None = None
    result: dict[str, Any]
    expected_value: int | None = None

    if args.mode == "kappa":
        conn = vertex_connectivity(graph)
        witness: dict[str, Any]
        if conn.witness is None:
            witness = {"complete_graph": True}
        else:
            witness = {
                "separator": sorted(conn.witness.separator),
                "side_a_size": len(conn.witness.side_a),
                "side_b_size": len(conn.witness.side_b),
            }
        result = {"kappa": conn.value, "witness": witness}
        expected_value = conn.value
    elif args.mode == "kappaS":
        terminals = sorted(io.resolve_vertex(obj, tok) for tok in args.s)
        if len(set(terminals)) != 3:
            raise ValidationError(f"need three distinct targets, got {terminals}")
        res = oracle.kappa_s_exact(graph, terminals, max_nodes=budget)
        result = {
            "s": terminals,
            "value": res.value,
            "lower_bound": res.lower_bound,
            "upper_bound": res.upper_bound,
            "status": "exact" if res.exact else f"unknown >= {res.lower_bound}",
            "packing": [[list(e) for e in t] for t in res.packing] if res.packing else None,
            "nodes": res.nodes,
        }
        expected_value = res.value
    elif args.mode in ("kappa3-exhaustive", "kappa3-sample"):
        sample = None
        if args.mode == "kappa3-sample":
            if args.count is None or args.seed is None:
                raise ValidationError("kappa3-sample needs --count and --seed")
            sample = (args.count, args.seed)
            seed = args.seed
        cert = oracle.kappa3_exact(graph, sample=sample, max_nodes=budget, jobs=args.jobs)
        result = {
            "value": cert.value,
            "lower_bound": cert.lower_bound,
            "upper_bound": cert.upper_bound,
            "status": "exact" if cert.exact else f"unknown >= {cert.lower_bound}",
            "minimizing_s": list(cert.minimizing_s) if cert.minimizing_s else None,
            "packing": [[list(e) for e in t] for t in cert.packing] if cert.packing else None,
            "exhausted": cert.exhausted,
            "sets_examined": cert.sets_examined,
            "nodes": cert.nodes,
        }
        expected_value = cert.value if cert.exact else cert.upper_bound
    else:
        raise ValidationError(f"unknown oracle mode {args.mode!r}")

    doc = {"format": io.FORMAT_CERTIFICATE, "mode": args.mode, "result": result}
    doc["manifest"] = _manifest(args, doc, seed, started)
    _write_out(io.dumps_canonical(doc), args.out)
    return _expect_check(args.expect, expected_value)


def cmd_verify(args: argparse.Namespace) -> int:
    obj = _load_graph(args.graph)
    graph = obj.graph if isinstance(obj, HierGraph) else obj
    try:
        doc = json.loads(Path(args.packing).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read packing: {exc}") from exc
    terminals, trees = io.doc_to_packing(doc)
    report = oracle.validate_packing(graph, terminals, trees)
    if report.valid:
        print(f"valid: {len(trees)} trees through {list(terminals)}")
        return EXIT_OK
    for v in report.violations:
        print(f"violation: {v.kind} witness={v.witness} trees={list(v.trees)}")
    return EXIT_SEMANTIC


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hiernet",
        description="Hierarchical network generators, disjoint-tree builder and exact oracles",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a topology")
    p_gen.add_argument("family", choices=["hs", "hcn", "hfq", "star", "cube", "folded", "compose"])
    p_gen.add_argument("n", type=int, nargs="?", help="dimension (not used with compose)")
    p_gen.add_argument("--spec", help="compose spec JSON file")
    p_gen.add_argument("--out", default="-")
    p_gen.add_argument("--format", choices=["json", "dot", "edges"], default="json")
    p_gen.add_argument("--budget", type=int, help="max vertices override")
    p_gen.set_defaults(func=cmd_gen)

    p_str = sub.add_parser("strees", help="build disjoint trees through three targets")
    p_str.add_argument("graph")
    p_str.add_argument("--s", nargs=3, required=True, metavar="V", help="three vertex ids or labels")
    p_str.add_argument("--out", default="-")
    p_str.set_defaults(func=cmd_strees)

    p_ora = sub.add_parser("oracle", help="exact connectivity computations")
    p_ora.add_argument("graph")
    p_ora.add_argument("--mode", required=True,
                       choices=["kappa", "kappa3-exhaustive", "kappa3-sample", "kappaS"])
    p_ora.add_argument("--s", nargs=3, metavar="V", help="targets for kappaS")
    p_ora.add_argument("--count", type=int, help="sample size for kappa3-sample")
    p_ora.add_argument("--seed", type=int, help="sample seed for kappa3-sample")
    p_ora.add_argument("--budget", type=int, help="search node budget per packing search")
    p_ora.add_argument("--jobs", type=int, default=1)
    p_ora.add_argument("--expect", type=int, help="exit 1 unless the result equals this value")
    p_ora.add_argument("--out", default="-")
    p_ora.set_defaults(func=cmd_oracle)

    p_ver = sub.add_parser("verify", help="validate a packing document against a graph")
    p_ver.add_argument("graph")
    p_ver.add_argument("packing")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, GraphConstructionError, CompositionError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, SizeBudgetError) as exc:
        print(f"precondition refused: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except HiernetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


def main_entry() -> None:
    sys.exit(main())
