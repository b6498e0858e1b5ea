"""Graph and family file formats (versioned JSON) and DOT export."""

from __future__ import annotations

import hashlib
import json
import warnings
from dataclasses import dataclass
from typing import Any, Optional, Union

from .errors import GraphSyntaxError, SchemaError, VersionUnsupported
from .families import Family, Kind
from .kgraph import EdgeSpec, KGraph, KGraphSpec, face, face_colors
from .lattice import FamilyLattice, hasse

FORMAT_VERSION = 1
GRAPH_FIELDS = ("version", "rank", "vertices", "edges", "squares")
EDGE_FIELDS = ("id", "color", "range", "source")
FAMILY_FIELDS = ("version", "graph", "kind", "entries")
FAMILY_KINDS = ("t", "o", "invariant", "raw")


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphSyntaxError(exc.msg, exc.lineno, exc.colno) from None


def _check_keys(obj: dict, allowed: tuple[str, ...], where: str, strict: bool) -> None:
    for key in obj:
        if key not in allowed:
            field = f"{where}.{key}" if where else key
            if strict:
                raise SchemaError("unknown field", field)
            warnings.warn(f"ignoring unknown field {field!r}", stacklevel=3)
    for key in allowed:
        if key not in obj and key != "graph":
            raise SchemaError("missing field", f"{where}.{key}" if where else key)


def _check_version(doc: dict) -> None:
    version = doc["version"]
    if not isinstance(version, int) or isinstance(version, bool):
        raise SchemaError("must be an integer", "version")
    if version != FORMAT_VERSION:
        raise VersionUnsupported(f"format version {version} is not supported")


def _ident(value: Any, field: str) -> str:
    if not isinstance(value, str) or not value:
        raise SchemaError("ids must be non-empty strings", field)
    return value


def _int(value: Any, field: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError("must be an integer", field)
    return value


def _list(value: Any, field: str) -> list:
    if not isinstance(value, list):
        raise SchemaError("must be a list", field)
    return value


def parse_graph(text: str, strict: bool = True) -> KGraphSpec:
    """Parse a graph document into an unvalidated :class:`KGraphSpec`."""
    doc = _load(text)
    if not isinstance(doc, dict):
        raise SchemaError("document must be an object", "<root>")
    _check_keys(doc, GRAPH_FIELDS, "", strict)
    _check_version(doc)
    rank = _int(doc["rank"], "rank")
    if rank < 1:
        raise SchemaError("must be at least 1", "rank")
    vertices = tuple(_ident(v, "vertices") for v in _list(doc["vertices"], "vertices"))
    edges = []
    for item in _list(doc["edges"], "edges"):
        if not isinstance(item, dict):
            raise SchemaError("edges must be objects", "edges")
        _check_keys(item, EDGE_FIELDS, "edges", strict)
        color = _int(item["color"], "color")
        if not 1 <= color <= rank:
            raise SchemaError(f"{color} outside 1..{rank}", "color")
        edges.append(
            EdgeSpec(
                _ident(item["id"], "id"),
                color,
                _ident(item["range"], "range"),
                _ident(item["source"], "source"),
            )
        )
    squares = []
    for item in _list(doc["squares"], "squares"):
        try:
            (e, f), (f2, e2) = item
        except (TypeError, ValueError):
            raise SchemaError("squares look like [[e, f], [f2, e2]]", "squares") from None
        squares.append(
            ((_ident(e, "squares"), _ident(f, "squares")), (_ident(f2, "squares"), _ident(e2, "squares")))
        )
    return KGraphSpec(rank, vertices, tuple(edges), tuple(squares))


def serialize_graph(g: Union[KGraph, KGraphSpec]) -> str:
    """Canonical text of a graph: sorted ids, fixed field order."""
    spec = (g.spec if isinstance(g, KGraph) else g).canonical()
    dump = json.dumps
    lines = [
        "{",
        f'  "version": {FORMAT_VERSION},',
        f'  "rank": {spec.rank},',
        f'  "vertices": {dump(list(spec.vertices))},',
    ]
    edges = [
        "    " + dump(dict(zip(EDGE_FIELDS, (e.id, e.color, e.range, e.source))))
        for e in spec.edges
    ]
    squares = ["    " + dump([list(a), list(b)]) for a, b in spec.squares]
    lines.append(_block("edges", edges) + ",")
    lines.append(_block("squares", squares))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _block(name: str, rows: list[str]) -> str:
    if not rows:
        return f'  "{name}": []'
    return f'  "{name}": [\n' + ",\n".join(rows) + "\n  ]"


def graph_checksum(g: Union[KGraph, KGraphSpec]) -> str:
    return "sha256:" + hashlib.sha256(serialize_graph(g).encode()).hexdigest()


@dataclass(frozen=True)
class FamilyDocument:
    family: Family
    kind: str
    checksum: Optional[str] = None


def parse_family(text: str, g: KGraph, strict: bool = True) -> FamilyDocument:
    doc = _load(text)
    if not isinstance(doc, dict):
        raise SchemaError("document must be an object", "<root>")
    _check_keys(doc, FAMILY_FIELDS, "", strict)
    _check_version(doc)
    kind = doc["kind"]
    if kind not in FAMILY_KINDS:
        raise SchemaError(f"must be one of {', '.join(FAMILY_KINDS)}", "kind")
    checksum = None
    if "graph" in doc:
        ref = doc["graph"]
        if not isinstance(ref, dict):
            raise SchemaError("must be an object", "graph")
        _check_keys(ref, ("checksum",), "graph", strict)
        checksum = ref["checksum"]
        if checksum != graph_checksum(g):
            raise SchemaError("does not match the graph", "graph.checksum")
    entries: dict[int, int] = {}
    for item in _list(doc["entries"], "entries"):
        if not isinstance(item, dict):
            raise SchemaError("entries must be objects", "entries")
        _check_keys(item, ("face", "vertices"), "entries", strict)
        colors = _list(item["face"], "face")
        for c in colors:
            if not 1 <= _int(c, "face") <= g.rank:
                raise SchemaError(f"color {c} outside 1..{g.rank}", "face")
        if len(set(colors)) != len(colors):
            raise SchemaError("repeated color", "face")
        F = face(colors)
        if F in entries:
            raise SchemaError(f"face {sorted(colors)} listed twice", "entries")
        ids = _list(item["vertices"], "vertices")
        try:
            entries[F] = g.mask(_ident(v, "vertices") for v in ids)
        except KeyError as exc:
            raise SchemaError(str(exc.args[0]), "vertices") from None
    missing = [face_colors(F) for F in g.faces() if F not in entries]
    if missing:
        raise SchemaError(f"missing faces {missing}", "entries")
    tag = None if kind == "raw" else Kind(kind)
    return FamilyDocument(Family(tuple(entries[F] for F in g.faces()), tag), kind, checksum)


def family_entries(g: KGraph, family: Family) -> list[dict]:
    return [
        {"face": face_colors(F), "vertices": sorted(g.ids(V))}
        for F, V in enumerate(family.entries)
    ]


def serialize_family(
    g: KGraph, family: Family, kind: Optional[str] = None, with_checksum: bool = True
) -> str:
    if kind is None:
        kind = family.kind.value if family.kind is not None else "raw"
    lines = ["{", f'  "version": {FORMAT_VERSION},']
    if with_checksum:
        lines.append(f'  "graph": {json.dumps({"checksum": graph_checksum(g)})},')
    lines.append(f'  "kind": {json.dumps(str(kind))},')
    rows = ["    " + json.dumps(e) for e in family_entries(g, family)]
    lines.append(_block("entries", rows))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def family_fingerprint(g: KGraph, family: Family) -> str:
    return family.describe(g)


def export_dot(obj: Union[KGraph, FamilyLattice], g: Optional[KGraph] = None) -> str:
    """DOT text for a k-graph or for the Hasse diagram of a family lattice.

    Lattices need the underlying graph ``g`` to print vertex ids.
    """
    if isinstance(obj, KGraph):
        lines = ["digraph kgraph {"]
        for k, v in enumerate(obj.vertices):
            lines.append(f"  n{k} [label={_quote(v)}];")
        for e, spec in enumerate(obj.edges):
            lines.append(
                f"  n{obj.source_of[e]} -> n{obj.range_of[e]} "
                f"[label={_quote(str(spec.color))}, tooltip={_quote(spec.id)}];"
            )
        lines.append("}")
        return "\n".join(lines) + "\n"
    if g is None:
        raise ValueError("exporting a lattice needs the graph")
    lines = [f"digraph lattice_{obj.kind.value} {{", "  rankdir=BT;"]
    for k, f in enumerate(obj.elements):
        lines.append(f"  f{k} [label={_quote(family_fingerprint(g, f))}];")
    for a, b in hasse(obj):
        lines.append(f"  f{obj.index(a)} -> f{obj.index(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
