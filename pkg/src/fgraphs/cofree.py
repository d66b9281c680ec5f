"""Cofree graphs over color sets and the adjunction around them.

``C(X)`` has the vertex colors as vertices and one edge for every pair of an
edge color and a value of ``F(X_V)``.  Colorings of a graph ``G`` by ``X`` are
in bijection with homomorphisms ``G -> C(X)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainMismatch, EmptyColorSet
from .functors import DEFAULT_CAP, enumerate_values, fmap_fast, fset, natkey, value_str
from .graph import FGraph, Hom, SubgraphHandle, Verdict, compose, is_iso, validate_hom
from .limits import product, tuple_id
from .search import find_hom


@dataclass(frozen=True)
class ColorSet:
    edge_colors: tuple
    vertex_colors: tuple

    def __init__(self, edge_colors, vertex_colors):
        object.__setattr__(self, "edge_colors", fset(edge_colors))
        object.__setattr__(self, "vertex_colors", fset(vertex_colors))


@dataclass
class Coloring:
    gamma_E: dict
    gamma_V: dict


def cofree_edge_id(c: str, w) -> str:
    return f"({c}|{value_str(w)})"


class CofreeGraph:
    """``C(X)`` together with its counit and the lookup ``(color, value) -> edge``."""

    def __init__(self, spec, X: ColorSet, cap: int = DEFAULT_CAP):
        self.spec, self.X = spec, X
        values = enumerate_values(spec, X.vertex_colors, cap=cap)
        self.edge_of, self.color_of, g = {}, {}, {}
        for c in X.edge_colors:
            for w in values:
                eid = cofree_edge_id(c, w)
                self.edge_of[(c, w)] = eid
                self.color_of[eid] = c
                g[eid] = w
        self.graph = FGraph(spec, X.vertex_colors, g)

    def edge_id(self, c, w) -> str:
        return self.edge_of[(c, w)]

    @property
    def counit(self):
        """The color maps ``(edge -> its color, identity on vertices)``."""
        return dict(self.color_of), {x: x for x in self.X.vertex_colors}

    def coloring_of(self, phi: Hom) -> Coloring:
        """Compose a homomorphism into ``C(X)`` with the counit."""
        return Coloring({e: self.color_of[x] for e, x in phi.edge_map.items()}, dict(phi.vertex_map))


def cofree_graph(spec, X: ColorSet, cap: int = DEFAULT_CAP) -> CofreeGraph:
    return CofreeGraph(spec, X, cap)


def _check_coloring(G, gamma, X):
    if set(gamma.gamma_E) != set(G.edges) or set(gamma.gamma_V) != set(G.vertices):
        raise DomainMismatch("coloring is not total")
    if not set(gamma.gamma_E.values()) <= set(X.edge_colors) or \
            not set(gamma.gamma_V.values()) <= set(X.vertex_colors):
        raise DomainMismatch("coloring uses colors outside the color set")


def induced_hom(G: FGraph, gamma: Coloring, C: CofreeGraph) -> Hom:
    """``e -> (gamma_E(e), F(gamma_V)(g(e)))``, ``v -> gamma_V(v)``."""
    _check_coloring(G, gamma, C.X)
    vm = gamma.gamma_V
    em = {e: C.edge_id(gamma.gamma_E[e], fmap_fast(G.spec, vm, G.g[e])) for e in G.edges}
    return Hom(G, C.graph, em, vm)


def cofree_on_morphisms(C1: CofreeGraph, C2: CofreeGraph, color_E: dict, color_V: dict) -> Hom:
    """The image of a pair of color maps under the cofree functor."""
    spec = C1.spec
    em = {}
    for (c, w), eid in C1.edge_of.items():
        em[eid] = C2.edge_id(color_E[c], fmap_fast(spec, color_V, w))
    vm = {x: color_V[x] for x in C1.X.vertex_colors}
    return Hom(C1.graph, C2.graph, em, vm)


def carrier_colors(G: FGraph) -> ColorSet:
    return ColorSet(G.edges, G.vertices)


def unit_embedding(G: FGraph, cap: int = DEFAULT_CAP):
    """``e -> (e, g(e))``: the graph inside the cofree graph over its own carrier."""
    C = CofreeGraph(G.spec, carrier_colors(G), cap)
    eta = Hom(G, C.graph, {e: C.edge_id(e, G.g[e]) for e in G.edges}, {v: v for v in G.vertices})
    return eta, C


def _min_color(colors, what):
    if not colors:
        raise EmptyColorSet(f"no {what} color available for the extension")
    return min(colors, key=natkey)


def extend_to_cofree(handle: SubgraphHandle, phi: Hom, C: CofreeGraph) -> Hom:
    """Extend a hom from a subgraph to the whole graph, coloring new elements minimally."""
    if phi.source != handle.graph or phi.target != C.graph:
        raise DomainMismatch("phi must go from the subgraph to the cofree graph")
    G = handle.parent
    gamma = C.coloring_of(phi)
    for e in G.edges:
        if e not in gamma.gamma_E:
            gamma.gamma_E[e] = _min_color(C.X.edge_colors, "edge")
    for v in G.vertices:
        if v not in gamma.gamma_V:
            gamma.gamma_V[v] = _min_color(C.X.vertex_colors, "vertex")
    return induced_hom(G, gamma, C)


def is_regular_injective(G: FGraph, cap: int = DEFAULT_CAP) -> Verdict:
    """Search a retraction ``r: C(UG) -> G`` of the unit; the witness is ``r``."""
    eta, C = unit_embedding(G, cap)
    vdom = {v: [v] for v in G.vertices}
    edom = {eta.edge_map[e]: [e] for e in G.edges}
    r = find_hom(C.graph, G, vertex_domains=vdom, edge_domains=edom)
    if r is None:
        return Verdict(False, None, "the unit embedding has no retraction")
    return Verdict(True, r)


@dataclass
class DecompositionWitness:
    edge_part: CofreeGraph
    vertex_part: CofreeGraph
    product: FGraph
    iso: Hom


STAR = "*"


def cofree_decomposition_check(spec, X: ColorSet, cap: int = DEFAULT_CAP) -> DecompositionWitness:
    """Explicit iso ``C(X_E, {*}) x C({*}, X_V) -> C(X_E, X_V)``."""
    CE = CofreeGraph(spec, ColorSet(X.edge_colors, [STAR]), cap)
    CV = CofreeGraph(spec, ColorSet([STAR], X.vertex_colors), cap)
    C = CofreeGraph(spec, X, cap)
    P, (pE, _) = product([CE.graph, CV.graph], cap)
    vm = {tuple_id([STAR, x]): x for x in X.vertex_colors}
    em = {e: C.edge_id(CE.color_of[pE.edge_map[e]], fmap_fast(spec, vm, P.g[e])) for e in P.edges}
    iso = Hom(P, C.graph, em, vm)
    if not (validate_hom(iso).ok and is_iso(iso).ok):
        raise AssertionError("decomposition map is not an isomorphism")
    return DecompositionWitness(CE, CV, P, iso)


def triangle_identities(G: FGraph, C: CofreeGraph) -> tuple:
    """Check both triangle identities of the adjunction at ``G`` and at ``C``."""
    eta, CG = unit_embedding(G)
    counit_E, _ = CG.counit
    first = all(counit_E[eta.edge_map[e]] == e for e in G.edges) and \
        all(eta.vertex_map[v] == v for v in G.vertices)
    etaC, CC = unit_embedding(C.graph)
    back = cofree_on_morphisms(CC, C, C.color_of, {x: x for x in C.X.vertex_colors})
    comp = compose(back, etaC)
    second = all(comp.edge_map[e] == e for e in C.graph.edges) and \
        all(comp.vertex_map[v] == v for v in C.graph.vertices)
    return first, second

