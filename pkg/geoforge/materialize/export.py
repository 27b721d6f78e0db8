"""JSON and Graphviz DOT renderings of geometries."""

from __future__ import annotations

import json
from collections.abc import Hashable
from typing import Any, Literal

from geoforge.common.errors import ParseError
from geoforge.materialize.geometry import Geometry

ExportFormat = Literal["json", "dot"]

_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)


def format_type(t: Hashable) -> str:
    """Type labels as strings: orbits (tuples) become "{0,2}"."""
    if isinstance(t, tuple):
        return "{" + ",".join(format_type(x) for x in t) + "}"
    return str(t)


def to_document(geo: Geometry) -> dict[str, Any]:
    return {
        "types": [format_type(t) for t in geo.types],
        "elements": [{"id": k, "type": format_type(e.type)} for k, e in enumerate(geo.elements)],
        "incidences": [[a, b] for a, b in geo.incidence_pairs()],
    }


def export(geo: Geometry, fmt: ExportFormat = "json") -> str:
    """Deterministic text rendering; element ids are positions."""
    if fmt == "json":
        return json.dumps(to_document(geo)) + "\n"
    if fmt == "dot":
        return _export_dot(geo)
    raise ValueError(f"Unknown export format {fmt!r}")


def _export_dot(geo: Geometry) -> str:
    title = geo.name or "geometry"
    lines = [f"graph {json.dumps(title)} {{"]
    if len(geo):
        colour = {t: _PALETTE[k % len(_PALETTE)] for k, t in enumerate(geo.types)}
        lines.append("  node [style=filled];")
        for k, e in enumerate(geo.elements):
            label = json.dumps(f"{k}:{format_type(e.type)}")
            lines.append(f'  n{k} [label={label}, fillcolor="{colour[e.type]}"];')
        lines.extend(f"  n{a} -- n{b};" for a, b in geo.incidence_pairs())
    lines.append("}")
    return "\n".join(lines) + "\n"


def import_json(text: str, name: str = "") -> Geometry:
    """Rebuild a geometry from ``export(geo, "json")``; types become strings.

    Raises:
        ParseError: For invalid JSON or a document missing required keys.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    try:
        types = [str(t) for t in doc["types"]]
        elements = sorted(doc["elements"], key=lambda e: int(e["id"]))
        if [int(e["id"]) for e in elements] != list(range(len(elements))):
            raise ParseError("Element ids must be 0..n-1", 1, 1)
        element_types = [str(e["type"]) for e in elements]
        pairs = [(int(a), int(b)) for a, b in doc["incidences"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"Malformed geometry document: {exc}", 1, 1) from exc
    try:
        return Geometry.from_incidences(types, element_types, pairs, name=name)
    except (ValueError, IndexError) as exc:
        raise ParseError(f"Inconsistent geometry document: {exc}", 1, 1) from exc
