"""Finite limits and colimits of F-graphs.

Colimits are computed on the underlying sets and the structure map is pushed
along the projections.  Products follow the pullback description: an edge of
``G1 x ... x Gn`` is a tuple of edges together with a value over the product
vertex set that projects onto each component's structure value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (DomainMismatch, EnumerationCapExceeded, ParentMismatch,
                     PreconditionViolated, SpecMismatch)
from .functors import DEFAULT_CAP, enumerate_values, fmap_fast, fset, value_str
from .graph import (EquivPair, FGraph, Hom, SubgraphHandle, compose, quotient,
                    validate_hom)


@dataclass
class Cone:
    apex: FGraph
    legs: list

    def validate(self) -> bool:
        return all(leg.source == self.apex and validate_hom(leg).ok for leg in self.legs)


@dataclass
class Cocone:
    apex: FGraph
    legs: list

    def validate(self) -> bool:
        return all(leg.target == self.apex and validate_hom(leg).ok for leg in self.legs)


def _same_spec(Gs):
    specs = {G.spec for G in Gs}
    if len(specs) > 1:
        raise SpecMismatch("graphs use different functors")


def tag(i: int, x: str) -> str:
    return f"{i}:{x}"


def tuple_id(xs) -> str:
    return "(" + ",".join(xs) + ")"


def product_edge_id(es, w) -> str:
    return "(" + ",".join(es) + "|" + value_str(w) + ")"


# ---------------------------------------------------------------------------
# colimits


def coproduct(Gs):
    """Tagged disjoint union; returns the sum and its injections."""
    Gs = list(Gs)
    if not Gs:
        raise PreconditionViolated("coproduct needs at least one graph (the empty sum has no spec)")
    _same_spec(Gs)
    spec = Gs[0].spec
    V, g = [], {}
    for i, G in enumerate(Gs):
        V += [tag(i, v) for v in G.vertices]
        ren = {v: tag(i, v) for v in G.vertices}
        for e in G.edges:
            g[tag(i, e)] = fmap_fast(spec, ren, G.g[e])
    S = FGraph(spec, V, g)
    inj = [Hom(G, S, {e: tag(i, e) for e in G.edges}, {v: tag(i, v) for v in G.vertices})
           for i, G in enumerate(Gs)]
    return S, inj


def coproduct_mediator(S: FGraph, legs) -> Hom:
    em, vm = {}, {}
    for i, leg in enumerate(legs):
        em.update({tag(i, e): y for e, y in leg.edge_map.items()})
        vm.update({tag(i, v): y for v, y in leg.vertex_map.items()})
    return Hom(S, legs[0].target, em, vm)


def coequalize(phi: Hom, psi: Hom):
    """Quotient of the common target by the equivalence the two maps generate."""
    if phi.source != psi.source or phi.target != psi.target:
        raise DomainMismatch("coequalize needs parallel homomorphisms")
    G1, G2 = phi.source, phi.target
    theta = EquivPair.generated(G2, [(phi.edge_map[e], psi.edge_map[e]) for e in G1.edges],
                                [(phi.vertex_map[v], psi.vertex_map[v]) for v in G1.vertices])
    return quotient(G2, theta)


def quotient_mediator(pi: Hom, leg: Hom) -> Hom:
    """The map out of a quotient induced by a leg constant on the classes."""
    em = {pi.edge_map[e]: leg.edge_map[e] for e in pi.source.edges}
    vm = {pi.vertex_map[v]: leg.vertex_map[v] for v in pi.source.vertices}
    return Hom(pi.target, leg.target, em, vm)


def pushout(phi: Hom, psi: Hom):
    """Gluing of the two targets along the shared source; returns (P, [leg1, leg2])."""
    if phi.source != psi.source:
        raise DomainMismatch("pushout needs a shared source")
    _same_spec([phi.target, psi.target])
    S, (i1, i2) = coproduct([phi.target, psi.target])
    P, pi = coequalize(compose(i1, phi), compose(i2, psi))
    return P, [compose(pi, i1), compose(pi, i2)]


def pushout_mediator(phi: Hom, psi: Hom, legs, pushout_legs=None) -> Hom:
    """The unique map out of the pushout matching a commuting cocone ``legs``.

    Passing the legs returned by :func:`pushout` skips rebuilding it: every
    element of the pushout is hit by one of them, so the map is read off.
    """
    if pushout_legs is None:
        S, (i1, i2) = coproduct([phi.target, psi.target])
        _, pi = coequalize(compose(i1, phi), compose(i2, psi))
        return quotient_mediator(pi, coproduct_mediator(S, legs))
    em, vm = {}, {}
    for pl, leg in zip(pushout_legs, legs):
        em.update({pl.edge_map[e]: leg.edge_map[e] for e in pl.source.edges})
        vm.update({pl.vertex_map[v]: leg.vertex_map[v] for v in pl.source.vertices})
    return Hom(pushout_legs[0].target, legs[0].target, em, vm)


# ---------------------------------------------------------------------------
# subgraph operations


def _shared_parent(handles):
    handles = list(handles)
    if not handles:
        raise PreconditionViolated("need at least one subgraph")
    p = handles[0].parent
    for h in handles[1:]:
        if h.parent != p:
            raise ParentMismatch("subgraphs belong to different graphs")
    return p, handles


def union_of_subgraphs(handles) -> SubgraphHandle:
    p, handles = _shared_parent(handles)
    E = set().union(*(h.edges for h in handles))
    V = set().union(*(h.vertices for h in handles))
    return SubgraphHandle(p, E, V)


def intersection(handles) -> SubgraphHandle:
    p, handles = _shared_parent(handles)
    E = set(handles[0].edges).intersection(*(h.edges for h in handles[1:]))
    V = set(handles[0].vertices).intersection(*(h.vertices for h in handles[1:]))
    return SubgraphHandle(p, E, V)


def _check_bounds(G, E_sub, V_sub):
    if not set(E_sub) <= set(G.edges) or not set(V_sub) <= set(G.vertices):
        raise DomainMismatch("bounds are not subsets of the graph's carriers")


def cogenerated_subgraph(G: FGraph, E_sub, V_sub) -> SubgraphHandle:
    """Largest subgraph inside the bounds: keep every vertex, drop edges that escape."""
    _check_bounds(G, E_sub, V_sub)
    Vs = frozenset(V_sub)
    return SubgraphHandle(G, [e for e in set(E_sub) if G.supp(e) <= Vs], Vs)


def generated_subgraph(G: FGraph, E_sub, V_sub=()) -> SubgraphHandle:
    """Smallest subgraph containing the seed: add the supports of the seed edges."""
    _check_bounds(G, E_sub, V_sub)
    V = set(V_sub)
    for e in E_sub:
        V |= G.supp(e)
    return SubgraphHandle(G, E_sub, V)


def edge_induced(G: FGraph, e: str) -> SubgraphHandle:
    return generated_subgraph(G, [e], ())


def preimage_setwise(phi: Hom, handle: SubgraphHandle) -> SubgraphHandle:
    E, V = set(handle.edges), set(handle.vertices)
    return SubgraphHandle(phi.source, [e for e, x in phi.edge_map.items() if x in E],
                          [v for v, x in phi.vertex_map.items() if x in V])


def preimage(phi: Hom, handle: SubgraphHandle, cap: int = DEFAULT_CAP) -> SubgraphHandle:
    """Pullback of the inclusion along ``phi``, read back as a subgraph of the source."""
    if handle.parent != phi.target:
        raise ParentMismatch("handle is not a subgraph of phi's target")
    P, (p1, _) = pullback(phi, handle.inclusion, cap)
    return SubgraphHandle(phi.source, set(p1.edge_map.values()), set(p1.vertex_map.values()))


# ---------------------------------------------------------------------------
# limits


def product(Gs, cap: int = DEFAULT_CAP):
    """Product with its projections.

    A value projecting onto every ``g_i(e_i)`` has its support inside the
    product of those supports, so the search for edge witnesses only ranges
    over ``F`` of that (usually tiny) product.
    """
    Gs = list(Gs)
    if not Gs:
        raise PreconditionViolated("product needs at least one graph")
    _same_spec(Gs)
    spec = Gs[0].spec
    vtuples = list(itertools.product(*(G.vertices for G in Gs)))
    V = [tuple_id(t) for t in vtuples]
    memo = {}
    g, emaps = {}, [dict() for _ in Gs]
    for et in itertools.product(*(G.edges for G in Gs)):
        vals = tuple(G.g[e] for G, e in zip(Gs, et))
        if vals not in memo:
            memo[vals] = _product_witnesses(spec, Gs, et, vals, cap)
        for w in memo[vals]:
            eid = product_edge_id(et, w)
            g[eid] = w
            for i, e in enumerate(et):
                emaps[i][eid] = e
    P = FGraph(spec, V, g)
    legs = [Hom(P, G, emaps[i], {tuple_id(t): t[i] for t in vtuples}) for i, G in enumerate(Gs)]
    return P, legs


def _product_witnesses(spec, Gs, et, vals, cap):
    supports = [fset(G.supp(e)) for G, e in zip(Gs, et)]
    tuples = list(itertools.product(*supports))
    ids = {tuple_id(t): t for t in tuples}
    try:
        cands = enumerate_values(spec, ids, cap=cap)
    except EnumerationCapExceeded as exc:
        raise EnumerationCapExceeded(f"edge witnesses over {len(ids)} product vertices",
                                     exc.count, cap) from None
    projs = [{k: t[i] for k, t in ids.items()} for i in range(len(Gs))]
    return [w for w in cands
            if all(fmap_fast(spec, projs[i], w) == vals[i] for i in range(len(Gs)))]


def product_mediator(P: FGraph, legs) -> Hom:
    """The unique ``K -> P`` whose composites with the projections are ``legs``."""
    K = legs[0].source
    spec = K.spec
    vm = {v: tuple_id([leg.vertex_map[v] for leg in legs]) for v in K.vertices}
    em = {}
    for e in K.edges:
        w = fmap_fast(spec, vm, K.g[e])
        em[e] = product_edge_id([leg.edge_map[e] for leg in legs], w)
    return Hom(K, P, em, vm)


def equalize(phis):
    """Largest subgraph of the common source on which all the maps agree."""
    phis = list(phis)
    if not phis:
        raise PreconditionViolated("need at least one homomorphism")
    G1 = phis[0].source
    for p in phis[1:]:
        if p.source != G1 or p.target != phis[0].target:
            raise DomainMismatch("equalize needs parallel homomorphisms")
    E = [e for e in G1.edges if len({p.edge_map[e] for p in phis}) == 1]
    V = [v for v in G1.vertices if len({p.vertex_map[v] for p in phis}) == 1]
    h = cogenerated_subgraph(G1, E, V)
    return h, h.inclusion


def pullback(phi: Hom, psi: Hom, cap: int = DEFAULT_CAP):
    """Equalizer of the two composites out of the product; returns (P, [p1, p2])."""
    if phi.target != psi.target:
        raise DomainMismatch("pullback needs a shared target")
    Pr, (q1, q2) = product([phi.source, psi.source], cap)
    h, inc = equalize([compose(phi, q1), compose(psi, q2)])
    return h.graph, [compose(q1, inc), compose(q2, inc)]


# ---------------------------------------------------------------------------
# lattice of subgraphs and the terminal graph


class SubgraphLattice:
    """All subgraphs of a finite graph, ordered by inclusion."""

    def __init__(self, G: FGraph, cap: int = DEFAULT_CAP):
        self.G = G
        vs = list(G.vertices)
        total = 0
        for r in range(len(vs) + 1):
            for U in itertools.combinations(vs, r):
                U = frozenset(U)
                total += 2 ** sum(1 for e in G.edges if G.supp(e) <= U)
                if total > cap:
                    raise EnumerationCapExceeded("subgraphs", total, cap)
        elems = []
        for r in range(len(vs) + 1):
            for U in itertools.combinations(vs, r):
                Us = frozenset(U)
                inside = [e for e in G.edges if G.supp(e) <= Us]
                for k in range(len(inside) + 1):
                    for Es in itertools.combinations(inside, k):
                        elems.append(SubgraphHandle(G, Es, U))
        self.elements = elems

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def bottom(self):
        return SubgraphHandle(self.G, (), ())

    @property
    def top(self):
        return SubgraphHandle(self.G, self.G.edges, self.G.vertices)

    def join(self, a, b):
        return union_of_subgraphs([a, b])

    def meet(self, a, b):
        return intersection([a, b])

    @staticmethod
    def leq(a, b):
        return a <= b


def subgraph_lattice(G: FGraph, cap: int = DEFAULT_CAP) -> SubgraphLattice:
    return SubgraphLattice(G, cap)


TERMINAL_VERTEX = "*"


def terminal_graph(spec, cap: int = DEFAULT_CAP) -> FGraph:
    """One vertex and one edge per element of ``F({*})``."""
    vals = enumerate_values(spec, [TERMINAL_VERTEX], cap=cap)
    return FGraph(spec, [TERMINAL_VERTEX], {f"(*|{value_str(w)})": w for w in vals})


def to_terminal(G: FGraph, T: FGraph | None = None) -> Hom:
    T = T or terminal_graph(G.spec)
    const = {v: TERMINAL_VERTEX for v in G.vertices}
    return Hom(G, T, {e: f"(*|{value_str(fmap_fast(G.spec, const, G.g[e]))})" for e in G.edges}, const)
