"""Backtracking search for homomorphisms between small F-graphs.

Vertices are assigned first; once every vertex in an edge's support has an
image, the edge's target value is known and its candidate edges are looked up
by value, so dead branches are cut as early as possible.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .errors import BudgetExceeded
from .functors import fmap_fast
from .graph import FGraph, Hom

DEFAULT_HOM_BUDGET = 1_000_000


def _source_order(G: FGraph):
    """Vertex order (edges with small supports first) and, per position, the
    edges whose support is complete there.  Cached on the graph."""
    cached = G._cache.get("search_order")
    if cached is not None:
        return cached
    order, seen = [], set()
    for e in sorted(G.edges, key=lambda e: len(G.supp(e))):
        for v in sorted(G.supp(e), key=G.vertices.index):
            if v not in seen:
                seen.add(v)
                order.append(v)
    order += [v for v in G.vertices if v not in seen]
    pos = {v: i for i, v in enumerate(order)}
    ready = [[] for _ in order]
    at_start = []
    for e in G.edges:
        s = G.supp(e)
        if s:
            ready[max(pos[v] for v in s)].append(e)
        else:
            at_start.append(e)
    G._cache["search_order"] = (order, ready, at_start)
    return order, ready, at_start


class _Plan:
    def __init__(self, G: FGraph, H: FGraph, vertex_domains, edge_domains):
        self.G, self.H = G, H
        self.by_value = H.edges_by_value()
        self.order, self.ready, self.ready_at_start = _source_order(G)
        vd = vertex_domains or {}
        self.vdom = [list(vd[v]) if v in vd else list(H.vertices) for v in self.order]
        ed = edge_domains or {}
        self.edom = {e: set(ed[e]) for e in ed}

    def candidates(self, e, vmap):
        w = fmap_fast(self.G.spec, vmap, self.G.g[e])
        cands = self.by_value.get(w, ())
        if e in self.edom:
            cands = [c for c in cands if c in self.edom[e]]
        return cands


def _vertex_maps(plan: _Plan, injective: bool) -> Iterator[tuple]:
    """Yield (vertex_map, {edge: candidates}) for every consistent vertex assignment."""
    cands = {}
    for e in plan.ready_at_start:
        c = plan.candidates(e, {})
        if not c:
            return
        cands[e] = c
    n = len(plan.order)
    vmap, used = {}, set()

    def rec(i):
        if i == n:
            yield dict(vmap), dict(cands)
            return
        v = plan.order[i]
        for x in plan.vdom[i]:
            if injective and x in used:
                continue
            vmap[v] = x
            ok = True
            done = []
            for e in plan.ready[i]:
                c = plan.candidates(e, vmap)
                if not c:
                    ok = False
                    break
                cands[e] = c
                done.append(e)
            if ok:
                used.add(x)
                yield from rec(i + 1)
                used.discard(x)
            for e in done:
                del cands[e]
            del vmap[v]

    yield from rec(0)


def iter_homs(G: FGraph, H: FGraph, *, vertex_domains: Mapping | None = None,
              edge_domains: Mapping | None = None, injective: bool = False,
              budget: int = DEFAULT_HOM_BUDGET) -> Iterator[Hom]:
    """Every homomorphism ``G -> H`` satisfying the optional domain restrictions."""
    plan = _Plan(G, H, vertex_domains, edge_domains)
    edges = list(G.edges)
    produced = 0
    for vmap, cands in _vertex_maps(plan, injective):
        emap, used = {}, set()

        def rec(i):
            if i == len(edges):
                yield dict(emap)
                return
            e = edges[i]
            for c in cands[e]:
                if injective and c in used:
                    continue
                emap[e] = c
                used.add(c)
                yield from rec(i + 1)
                used.discard(c)
            emap.pop(e, None)

        for em in rec(0):
            produced += 1
            if produced > budget:
                raise BudgetExceeded("homomorphism enumeration", produced, budget)
            yield Hom(G, H, em, vmap)


def count_homs(G: FGraph, H: FGraph, *, vertex_domains=None, edge_domains=None,
               budget: int = DEFAULT_HOM_BUDGET) -> int:
    """Number of homomorphisms, multiplying edge choices instead of listing them."""
    plan = _Plan(G, H, vertex_domains, edge_domains)
    total = 0
    maps = 0
    for _, cands in _vertex_maps(plan, False):
        maps += 1
        if maps > budget:
            raise BudgetExceeded("vertex-map enumeration", maps, budget)
        k = 1
        for e in G.edges:
            k *= len(cands[e])
        total += k
    return total


def find_hom(G: FGraph, H: FGraph, **kw) -> Hom | None:
    return next(iter_homs(G, H, **kw), None)


def find_iso(G: FGraph, H: FGraph) -> Hom | None:
    if (G.spec != H.spec or len(G.edges) != len(H.edges)
            or len(G.vertices) != len(H.vertices)):
        return None
    if sorted(map(len, map(G.supp, G.edges))) != sorted(map(len, map(H.supp, H.edges))):
        return None
    return find_hom(G, H, injective=True)


def are_isomorphic(G: FGraph, H: FGraph) -> bool:
    return find_iso(G, H) is not None
