"""Instance and drawing documents: exact JSON round-trips.

Coordinates travel as JSON integers or as strings ("0.25", "1/3"); bare
JSON floats are rejected so no value is ever silently rounded. Serialized
documents use a fixed key order, making byte-level comparisons meaningful.
"""

from __future__ import annotations

import json
from typing import Any

from .model import (
    Drawing,
    FlatClusteredGraph,
    InterEdge,
    LayoutConfig,
    SIDE_ORDER,
    Square,
    validate_instance,
)
from .rational import format_fraction, to_fraction

FORMAT_VERSION = "1"


class InstanceParseError(ValueError):
    """Schema violation; the message is path-addressed."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _fail(path: str, message: str) -> None:
    raise InstanceParseError(path, message)


def _number(value: Any, path: str):
    if isinstance(value, float):
        _fail(path, "floating-point numbers lose precision; use a string")
    if not isinstance(value, (int, str)):
        _fail(path, f"expected a number, got {type(value).__name__}")
    try:
        return to_fraction(value)
    except ValueError as exc:
        _fail(path, str(exc))


def _expect(value: Any, kind: type, path: str):
    if not isinstance(value, kind):
        _fail(path, f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def parse_instance_document(
    doc: Any,
) -> tuple[FlatClusteredGraph, LayoutConfig]:
    """Decode a parsed JSON document; raises InstanceParseError on any
    schema or model-level violation."""
    _expect(doc, dict, "$")
    if doc.get("version") != FORMAT_VERSION:
        _fail("$.version", f'expected "{FORMAT_VERSION}"')

    clusters: dict[str, list[str]] = {}
    squares: dict[str, Square] = {}
    orders: dict[str, list[str]] = {}
    for i, entry in enumerate(_expect(doc.get("clusters"), list, "$.clusters")):
        path = f"$.clusters[{i}]"
        _expect(entry, dict, path)
        cid = _expect(entry.get("id"), str, f"{path}.id")
        if cid in clusters:
            _fail(f"{path}.id", f"duplicate cluster id {cid!r}")
        vertices = [
            _expect(v, str, f"{path}.vertices[{k}]")
            for k, v in enumerate(_expect(entry.get("vertices"), list, f"{path}.vertices"))
        ]
        sq = _expect(entry.get("square"), dict, f"{path}.square")
        size = _number(sq.get("size"), f"{path}.square.size")
        if size <= 0:
            _fail(f"{path}.square.size", "size must be positive")
        square = Square(
            _number(sq.get("x"), f"{path}.square.x"),
            _number(sq.get("y"), f"{path}.square.y"),
            size,
        )
        order = [
            _expect(v, str, f"{path}.order[{k}]")
            for k, v in enumerate(_expect(entry.get("order"), list, f"{path}.order"))
        ]
        clusters[cid] = vertices
        squares[cid] = square
        orders[cid] = order

    intra: list[tuple[str, str]] = []
    for i, pair in enumerate(doc.get("intraEdges", [])):
        path = f"$.intraEdges[{i}]"
        _expect(pair, list, path)
        if len(pair) != 2:
            _fail(path, "expected a pair of vertex ids")
        intra.append((_expect(pair[0], str, path), _expect(pair[1], str, path)))

    inter: list[InterEdge] = []
    for i, entry in enumerate(_expect(doc.get("interEdges"), list, "$.interEdges")):
        path = f"$.interEdges[{i}]"
        _expect(entry, dict, path)
        inter.append(
            InterEdge(
                _expect(entry.get("id"), str, f"{path}.id"),
                _expect(entry.get("u"), str, f"{path}.u"),
                _expect(entry.get("v"), str, f"{path}.v"),
            )
        )

    sides = None
    if "sides" in doc and doc["sides"] is not None:
        sides = {}
        for eid, pair in _expect(doc["sides"], dict, "$.sides").items():
            path = f"$.sides[{eid!r}]"
            _expect(pair, dict, path)
            su = _expect(pair.get("u"), str, f"{path}.u")
            sv = _expect(pair.get("v"), str, f"{path}.v")
            if su not in SIDE_ORDER or sv not in SIDE_ORDER:
                _fail(path, "sides must be T, B, L or R")
            sides[eid] = (su, sv)

    g = FlatClusteredGraph(clusters=clusters, intra_edges=intra, inter_edges=inter)
    cfg = LayoutConfig(squares=squares, orders=orders, sides=sides)
    issues = validate_instance(g, cfg)
    if issues:
        _fail("$", "; ".join(issues))
    return g, cfg


def parse_instance(text: str) -> tuple[FlatClusteredGraph, LayoutConfig]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceParseError("$", f"not valid JSON: {exc}") from exc
    return parse_instance_document(doc)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _coord(value) -> int | str:
    q = to_fraction(value)
    return q.numerator if q.denominator == 1 else format_fraction(q)


def instance_document(g: FlatClusteredGraph, cfg: LayoutConfig) -> dict:
    doc: dict[str, Any] = {
        "version": FORMAT_VERSION,
        "clusters": [
            {
                "id": cid,
                "vertices": list(g.clusters[cid]),
                "square": {
                    "x": _coord(cfg.squares[cid].min_x),
                    "y": _coord(cfg.squares[cid].min_y),
                    "size": _coord(cfg.squares[cid].size),
                },
                "order": list(cfg.orders[cid]),
            }
            for cid in sorted(g.clusters)
        ],
        "intraEdges": [list(p) for p in sorted(g.intra_edges)],
        "interEdges": [
            {"id": e.id, "u": e.u, "v": e.v}
            for e in sorted(g.inter_edges, key=lambda e: e.id)
        ],
    }
    if cfg.sides is not None:
        doc["sides"] = {
            eid: {"u": cfg.sides[eid][0], "v": cfg.sides[eid][1]}
            for eid in sorted(cfg.sides)
        }
    return doc


def serialize_instance(g: FlatClusteredGraph, cfg: LayoutConfig) -> str:
    return json.dumps(instance_document(g, cfg), indent=2) + "\n"


def drawing_document(d: Drawing | None) -> dict:
    """Result document; ``None`` stands for an infeasible exact solve."""
    if d is None:
        return {"version": FORMAT_VERSION, "feasible": False}
    return {
        "version": FORMAT_VERSION,
        "feasible": True,
        "edgeSides": {
            eid: {"u": su, "v": sv} for eid, (su, sv) in sorted(d.edge_sides.items())
        },
        "segments": {
            eid: {
                "u": [format_fraction(p[0]), format_fraction(p[1])],
                "v": [format_fraction(q[0]), format_fraction(q[1])],
            }
            for eid, (p, q) in sorted(d.edge_segments.items())
        },
        "chi": d.chi,
        "chiPerCluster": {cid: d.chi_per_cluster[cid] for cid in sorted(d.chi_per_cluster)},
        "locallyPlanar": d.locally_planar,
        "diagnostics": {
            "unsatisfiedClauses": d.unsatisfied_clauses,
            "matrixViolations": sorted(d.matrix_violations),
        },
    }


def serialize_drawing(d: Drawing | None) -> str:
    return json.dumps(drawing_document(d), indent=2) + "\n"


def parse_drawing(text: str) -> Drawing | None:
    """Inverse of serialize_drawing (used for round-trip checks)."""
    doc = json.loads(text)
    if not doc.get("feasible", True):
        return None
    sides = {eid: (p["u"], p["v"]) for eid, p in doc.get("edgeSides", {}).items()}
    segments = {
        eid: (
            (to_fraction(seg["u"][0]), to_fraction(seg["u"][1])),
            (to_fraction(seg["v"][0]), to_fraction(seg["v"][1])),
        )
        for eid, seg in doc.get("segments", {}).items()
    }
    diag = doc.get("diagnostics", {})
    return Drawing(
        edge_sides=sides,
        edge_segments=segments,
        chi_per_cluster=dict(doc.get("chiPerCluster", {})),
        chi=doc["chi"],
        locally_planar=doc["locallyPlanar"],
        unsatisfied_clauses=diag.get("unsatisfiedClauses", 0),
        matrix_violations=list(diag.get("matrixViolations", [])),
    )
