"""Text formats: graph files, solve reports, and their verification.

Graph file format::

    # comment lines start with '#', blank lines are ignored
    n m
    u v w

with one ``u v w`` line per edge; ``w`` is an integer, a decimal, or an
exact rational ``p/q``.  Vertices are 0-indexed.  Serialization is
canonical (edges sorted by endpoint pair, weights as ``p/q`` or a plain
integer), so ``parse -> normalize -> serialize -> parse`` is a fixed point
and generated files diff cleanly.

Reports are single JSON documents with exact rational values rendered as
strings; ``verify_report`` recomputes the value from the coalitions so a
report never has to be trusted.
"""

from __future__ import annotations

import json
from typing import Optional

from .model import (
    SolveReport,
    WeightedGraph,
    as_weight,
    format_weight,
    normalize_graph,
    validate_structure,
)


class GraphParseError(ValueError):
    """Malformed graph or report text; carries the offending line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def parse_graph_text(text: str) -> WeightedGraph:
    """Parse and normalize a graph file."""
    header: Optional[tuple[int, int]] = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphParseError(
                    f"expected header 'n m', got {line!r}", lineno
                )
            try:
                header = (int(parts[0]), int(parts[1]))
            except ValueError:
                raise GraphParseError(
                    f"header fields must be integers, got {line!r}", lineno
                ) from None
            if header[0] < 0 or header[1] < 0:
                raise GraphParseError("header counts must be nonnegative", lineno)
            continue
        if len(parts) != 3:
            raise GraphParseError(f"expected edge 'u v w', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(
                f"vertex ids must be integers, got {line!r}", lineno
            ) from None
        try:
            w = as_weight(parts[2])
        except ValueError as exc:
            raise GraphParseError(str(exc), lineno) from None
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno)
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(
                f"vertex id out of range [0, {n}): ({u}, {v})", lineno
            )
        edges.append((u, v, w))
    if header is None:
        raise GraphParseError("empty input: missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphParseError(
            f"header declares {header[1]} edges but file has {len(edges)}"
        )
    return normalize_graph(edges, header[0])


def serialize_graph(graph: WeightedGraph) -> str:
    """Canonical text form of a normalized graph."""
    lines = [f"{graph.n} {graph.m}"]
    for u, v, w in graph.edges:
        lines.append(f"{u} {v} {format_weight(w)}")
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def save_graph(graph: WeightedGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_graph(graph))


def report_document(
    graph: WeightedGraph, report: SolveReport, include_elapsed: bool = True
) -> dict:
    """Machine-readable report; everything except elapsed_ms is deterministic."""
    doc = {
        "algorithm": report.algorithm,
        "instance": {
            "n": graph.n,
            "m": graph.m,
            "positive_edges": len(graph.positive_edges()),
            "negative_edges": len(graph.negative_edges()),
            "w_plus": format_weight(report.w_plus),
        },
        "params": {
            "epsilon": None if report.epsilon is None else format_weight(report.epsilon),
            "seed": report.seed,
        },
        "value": format_weight(report.value),
        "coalitions": report.structure.blocks(),
        "feasible_set_count": report.feasible_set_count,
    }
    if include_elapsed:
        doc["elapsed_ms"] = report.elapsed_ms
    return doc


def render_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def parse_report_text(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"report is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise GraphParseError("report must be a JSON object")
    for key in ("algorithm", "value", "coalitions"):
        if key not in doc:
            raise GraphParseError(f"report is missing the {key!r} field")
    return doc


def load_report(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_report_text(fh.read())


def verify_report(graph: WeightedGraph, doc: dict) -> list[str]:
    """Re-derive the report's value from its coalitions; list all mismatches."""
    issues: list[str] = []
    instance = doc.get("instance", {})
    if isinstance(instance, dict):
        if instance.get("n") not in (None, graph.n) or instance.get("m") not in (
            None,
            graph.m,
        ):
            issues.append(
                f"report instance digest (n={instance.get('n')}, m={instance.get('m')}) "
                f"does not match the graph (n={graph.n}, m={graph.m})"
            )
    coalitions = doc["coalitions"]
    if (
        not isinstance(coalitions, list)
        or not all(isinstance(block, list) for block in coalitions)
        or not all(
            isinstance(v, int) and not isinstance(v, bool)
            for block in coalitions
            for v in block
        )
    ):
        return issues + ["coalitions must be lists of integer vertex ids"]
    diagnostics = validate_structure(graph, coalitions)
    if not diagnostics.valid:
        return issues + [f"not a partition: {problem}" for problem in diagnostics.issues]
    try:
        claimed = as_weight(str(doc["value"]))
    except ValueError:
        return issues + [f"unparseable value field: {doc['value']!r}"]
    if claimed != diagnostics.value:
        issues.append(
            f"value mismatch: report claims {format_weight(claimed)}, "
            f"recomputed {format_weight(diagnostics.value)}"
        )
    return issues
