"""JSON encodings of graphs, homomorphisms, relations, color sets and patterns."""

from __future__ import annotations

import json
from pathlib import Path

from .cofree import ColorSet, Coloring
from .covariety import Pattern
from .errors import MalformedValue
from .functors import fset, spec_from_json, value_from_json, value_to_json
from .graph import EquivPair, FGraph, Hom, Partition, SubgraphHandle
from .relations import GraphRelation, RelationPair, sorted_pairs


def load_json(path_or_text):
    """Read JSON from a file path, or parse it directly when it looks like a literal."""
    s = str(path_or_text)
    if s.lstrip().startswith(("{", "[")):
        return json.loads(s)
    return json.loads(Path(s).read_text())


def _ids(xs, what):
    if not isinstance(xs, list):
        raise MalformedValue(f"{what} must be a list")
    out = [str(x) for x in xs]
    if len(set(out)) != len(out):
        raise MalformedValue(f"duplicate ids in {what}")
    return out


def graph_from_json(obj) -> FGraph:
    try:
        spec = spec_from_json(obj["functor"])
        vertices = _ids(obj.get("vertices", []), "vertices")
        g = {}
        for item in obj.get("edges", []):
            eid = str(item["id"])
            if eid in g:
                raise MalformedValue(f"duplicate edge id {eid!r}")
            g[eid] = value_from_json(spec, item["value"])
    except (KeyError, TypeError) as exc:
        raise MalformedValue(f"bad graph JSON: {exc}") from None
    return FGraph(spec, vertices, g)


def graph_to_json(G: FGraph) -> dict:
    return {"functor": G.spec.to_json(), "vertices": list(G.vertices),
            "edges": [{"id": e, "value": value_to_json(G.g[e])} for e in G.edges]}


def _str_map(m, what):
    if not isinstance(m, dict):
        raise MalformedValue(f"{what} must be an object")
    return {str(k): str(v) for k, v in m.items()}


def hom_from_json(obj, source: FGraph | None = None, target: FGraph | None = None) -> Hom:
    if source is None:
        source = graph_from_json(obj["source"])
    if target is None:
        target = graph_from_json(obj["target"])
    return Hom(source, target, _str_map(obj.get("edge_map", {}), "edge_map"),
               _str_map(obj.get("vertex_map", {}), "vertex_map"))


def hom_to_json(phi: Hom, with_graphs: bool = False) -> dict:
    out = {"edge_map": {e: phi.edge_map[e] for e in phi.source.edges},
           "vertex_map": {v: phi.vertex_map[v] for v in phi.source.vertices}}
    if with_graphs:
        out["source"] = graph_to_json(phi.source)
        out["target"] = graph_to_json(phi.target)
    return out


def handle_to_json(h: SubgraphHandle) -> dict:
    return {"edges": list(h.edges), "vertices": list(h.vertices)}


def handle_from_json(obj, parent: FGraph) -> SubgraphHandle:
    return SubgraphHandle(parent, _ids(obj.get("edges", []), "edges"),
                          _ids(obj.get("vertices", []), "vertices"))


def equiv_from_json(obj, G: FGraph) -> EquivPair:
    """Classes not listed default to singletons."""

    def part(classes, elements):
        seen = set()
        cl = []
        for c in classes:
            c = [str(x) for x in c]
            if not set(c) <= set(elements) or seen & set(c):
                raise MalformedValue("equivalence classes overlap or use unknown elements")
            seen |= set(c)
            cl.append(c)
        cl += [[x] for x in elements if x not in seen]
        return Partition(cl)

    return EquivPair(part(obj.get("edge_classes", []), G.edges),
                     part(obj.get("vertex_classes", []), G.vertices))


def equiv_to_json(theta: EquivPair) -> dict:
    return {"edge_classes": [list(c) for c in theta.edges.classes],
            "vertex_classes": [list(c) for c in theta.vertices.classes]}


def relation_from_json(obj) -> RelationPair:
    try:
        return RelationPair([(str(a), str(b)) for a, b in obj.get("edge_pairs", [])],
                            [(str(a), str(b)) for a, b in obj.get("vertex_pairs", [])])
    except (TypeError, ValueError) as exc:
        raise MalformedValue(f"bad relation JSON: {exc}") from None


def relation_to_json(R: RelationPair) -> dict:
    return {"edge_pairs": [list(p) for p in sorted_pairs(R.edge_pairs)],
            "vertex_pairs": [list(p) for p in sorted_pairs(R.vertex_pairs)]}


def graph_relation_to_json(r: GraphRelation) -> dict:
    out = relation_to_json(r.relation)
    out["witness"] = {f"{a}|{b}": value_to_json(r.witness[(a, b)])
                      for a, b in sorted_pairs(r.relation.edge_pairs)}
    return out


def colors_from_json(obj) -> ColorSet:
    try:
        return ColorSet(_ids(obj["edge_colors"], "edge_colors"),
                        _ids(obj["vertex_colors"], "vertex_colors"))
    except (KeyError, TypeError) as exc:
        raise MalformedValue(f"bad color set JSON: {exc}") from None


def colors_to_json(X: ColorSet) -> dict:
    return {"edge_colors": list(X.edge_colors), "vertex_colors": list(X.vertex_colors)}


def coloring_from_json(obj) -> Coloring:
    return Coloring(_str_map(obj.get("edge_map", {}), "edge_map"),
                    _str_map(obj.get("vertex_map", {}), "vertex_map"))


def coloring_to_json(c: Coloring) -> dict:
    return {"edge_map": dict(sorted(c.gamma_E.items())), "vertex_map": dict(sorted(c.gamma_V.items()))}


def pattern_from_json(obj) -> Pattern:
    try:
        return Pattern(colors_from_json(obj["colors"]), [str(x) for x in obj.get("edge_subset", [])],
                       [str(x) for x in obj.get("vertex_subset", [])])
    except (KeyError, TypeError) as exc:
        raise MalformedValue(f"bad pattern JSON: {exc}") from None


def pattern_to_json(P: Pattern) -> dict:
    return {"colors": colors_to_json(P.colors), "edge_subset": list(fset(P.edge_subset)),
            "vertex_subset": list(fset(P.vertex_subset))}


def dumps(obj, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
