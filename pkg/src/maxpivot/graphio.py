"""Text, JSON and DOT serialization.

Graph files are line based::

    # comment
    vertices p q r s
    edge p q
    loop q

``vertices`` must come first.  Set-system files use ``ground a b c``
followed by one ``set ...`` line per member (a bare ``set`` is the empty
set), or the JSON object written by ``family_to_json``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InputError
from .f2linalg import Graph, Subspace, VertexSet
from .orbit import CONTRACTION, DUAL, OrbitGraph
from .setsystem import SetSystem


@dataclass(frozen=True)
class GraphDocument:
    source: str
    graph: Graph
    name: str | None = None


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def parse_graph(text: str, name: str | None = None) -> GraphDocument:
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != "vertices":
        raise InputError("graph file must start with a 'vertices' line")
    labels = lines[0][1][1:]
    if len(set(labels)) != len(labels):
        raise InputError("duplicate labels on the 'vertices' line")
    known = set(labels)
    edges, loops = [], []
    for number, words in lines[1:]:
        keyword, args = words[0], words[1:]
        if keyword == "edge" and len(args) == 2:
            edges.append(tuple(args))
        elif keyword == "loop" and len(args) == 1:
            loops.append(args[0])
        else:
            raise InputError(f"line {number}: cannot read {' '.join(words)!r}")
        for label in args:
            if label not in known:
                raise InputError(f"line {number}: unknown vertex {label!r}")
        if keyword == "edge" and args[0] == args[1]:
            raise InputError(f"line {number}: write a loop as 'loop {args[0]}'")
    return GraphDocument(text, Graph.from_edges(labels, edges, loops), name)


def serialize_graph(g: Graph) -> str:
    """Canonical text: vertices as declared, edges by label position, then loops."""
    out = ["vertices" + "".join(" " + label for label in g.labels)]
    out += [f"edge {a} {b}" for a, b in g.edges()]
    out += [f"loop {a}" for a in g.loops()]
    return "\n".join(out) + "\n"


def graph_to_json(g: Graph) -> dict:
    return {
        "vertices": list(g.labels),
        "edges": [list(e) for e in g.edges()],
        "loops": g.loops(),
    }


def format_set(s) -> str:
    labels = s.labels() if isinstance(s, VertexSet) else list(s)
    return ",".join(labels) if labels else "{}"


def format_family(m: SetSystem) -> str:
    return " | ".join(format_set(s) for s in m.family)


def family_to_json(m: SetSystem) -> dict:
    return {"ground": list(m.ground), "sets": [s.labels() for s in m.family]}


def subspace_to_json(sub: Subspace) -> dict:
    return {
        "ground": list(sub.ground),
        "dimension": sub.dimension,
        "sets": [s.labels() for s in sub.basis],
    }


def parse_set(text: str) -> list[str]:
    text = text.strip()
    if text in ("", "{}"):
        return []
    return [t.strip() for t in text.split(",") if t.strip()]


def parse_setsystem(text: str) -> SetSystem:
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
            return SetSystem(data["ground"], data["sets"])
        except (ValueError, KeyError, TypeError) as err:
            raise InputError(f"malformed set-system JSON: {err}") from None
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != "ground":
        raise InputError("set-system file must start with a 'ground' line")
    ground = lines[0][1][1:]
    family = []
    for number, words in lines[1:]:
        if words[0] != "set":
            raise InputError(f"line {number}: expected 'set'")
        unknown = [w for w in words[1:] if w not in ground]
        if unknown:
            raise InputError(f"line {number}: unknown element {unknown[0]!r}")
        family.append(words[1:])
    return SetSystem(ground, family)


def orbit_to_json(orbit: OrbitGraph) -> dict:
    return {
        "root": orbit.root,
        "nodes": [graph_to_json(g) for g in orbit.nodes],
        "edges": [
            {"from": e.src, "to": e.dst, "set": e.move.labels(), "kind": e.kind}
            for e in orbit.edges
        ],
    }


def move_label(kind: str, move) -> str:
    body = "{" + ",".join(move.labels()) + "}"
    if kind == DUAL:
        return "dual*" + body
    if kind == CONTRACTION:
        return "*\\" + body
    return "*" + body


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def emit_dot(orbit: OrbitGraph, name: str = "orbit") -> str:
    """DOT digraph; involutive moves are drawn once with arrows at both ends."""
    lines = [f"digraph {_dot_quote(name)} {{", '  node [shape=box, fontname="monospace"];']
    for i, g in enumerate(orbit.nodes):
        lines.append(f"  n{i} [label={_dot_quote(serialize_graph(g).rstrip())}];")
    directed = any(e.kind == CONTRACTION for e in orbit.edges)
    edges = orbit.edges if directed else orbit.undirected_moves()
    for e in edges:
        attrs = [f"label={_dot_quote(move_label(e.kind, e.move))}"]
        if not directed and e.src != e.dst:
            attrs.append("dir=both")
        lines.append(f"  n{e.src} -> n{e.dst} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
