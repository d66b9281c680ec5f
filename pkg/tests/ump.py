"""Universal-property checkers: for every cone or cocone, count the mediating homs.

Each checker enumerates all homs between the limit (colimit) object and the
probe once, sorts them into fibers by the cone (cocone) they induce, and then
requires every cone to have a fiber of size exactly 1.  The library's
mediator constructor must return that unique element.  Checkers return a list
of failure descriptions, empty on success.
"""

from collections import defaultdict

from fgraphs.limits import (coequalize, coproduct, coproduct_mediator, equalize, product,
                            product_mediator, pushout, pushout_mediator, quotient_mediator)
from fgraphs.graph import mediate_through_mono
from fgraphs.search import iter_homs


def key(em, vm, src):
    return (tuple(em[e] for e in src.edges), tuple(vm[v] for v in src.vertices))


def hkey(h):
    return key(h.edge_map, h.vertex_map, h.source)


def comp_key(psi, phi):
    """Key of ``psi . phi``."""
    src = phi.source
    return (tuple(psi.edge_map[phi.edge_map[e]] for e in src.edges),
            tuple(psi.vertex_map[phi.vertex_map[v]] for v in src.vertices))


class HomCache:
    """Memoized ``list(iter_homs(G, H))``; keeps the graphs alive so ids stay unique."""

    def __init__(self):
        self.memo = {}

    def __call__(self, G, H):
        k = (id(G), id(H))
        if k not in self.memo:
            self.memo[k] = (G, H, list(iter_homs(G, H)))
        return self.memo[k][2]


_default_cache = HomCache()


def _fibers(homs, cone_of):
    fib = defaultdict(list)
    for m in homs:
        fib[cone_of(m)].append(m)
    return fib


def check_product(Gs, probes, homs=_default_cache):
    fails = []
    P, legs = product(Gs)
    for Q in probes:
        fib = _fibers(iter_homs(Q, P), lambda m: tuple(comp_key(l, m) for l in legs))
        cones = [[]]
        for G in Gs:
            cones = [c + [h] for c in cones for h in homs(Q, G)]
        for cone in cones:
            ms = fib.get(tuple(hkey(h) for h in cone), [])
            if len(ms) != 1 or hkey(product_mediator(P, cone)) != hkey(ms[0]):
                fails.append(("product", Gs, Q, cone, len(ms)))
        if sum(map(len, fib.values())) != len(cones):
            fails.append(("product-count", Gs, Q))
    return fails


def check_coproduct(Gs, probes, homs=_default_cache):
    fails = []
    S, inj = coproduct(Gs)
    for Q in probes:
        fib = _fibers(iter_homs(S, Q), lambda m: tuple(comp_key(m, i) for i in inj))
        cocones = [[]]
        for G in Gs:
            cocones = [c + [h] for c in cocones for h in homs(G, Q)]
        for cc in cocones:
            ms = fib.get(tuple(hkey(h) for h in cc), [])
            if len(ms) != 1 or hkey(coproduct_mediator(S, cc)) != hkey(ms[0]):
                fails.append(("coproduct", Gs, Q, cc, len(ms)))
        if sum(map(len, fib.values())) != len(cocones):
            fails.append(("coproduct-count", Gs, Q))
    return fails


def check_equalizer(phi, psi, probes, homs=_default_cache):
    fails = []
    h, inc = equalize([phi, psi])
    Eq = h.graph
    for Q in probes:
        fib = _fibers(iter_homs(Q, Eq), lambda m: comp_key(inc, m))
        for k in homs(Q, phi.source):
            agree = comp_key(phi, k) == comp_key(psi, k)
            ms = fib.get(hkey(k), [])
            if len(ms) != (1 if agree else 0):
                fails.append(("equalizer", phi, psi, Q, k, len(ms)))
            elif agree:
                v = mediate_through_mono(inc, k)
                if not v.ok or hkey(v.witness) != hkey(ms[0]):
                    fails.append(("equalizer-mediator", phi, psi, Q, k))
    return fails


def check_coequalizer(phi, psi, probes, homs=_default_cache):
    fails = []
    Qg, pi = coequalize(phi, psi)
    for Z in probes:
        fib = _fibers(iter_homs(Qg, Z), lambda m: comp_key(m, pi))
        n = 0
        for k in homs(phi.target, Z):
            if comp_key(k, phi) != comp_key(k, psi):
                continue
            n += 1
            ms = fib.get(hkey(k), [])
            if len(ms) != 1 or hkey(quotient_mediator(pi, k)) != hkey(ms[0]):
                fails.append(("coequalizer", phi, psi, Z, k, len(ms)))
        if sum(map(len, fib.values())) != n:
            fails.append(("coequalizer-count", phi, psi, Z))
    return fails


def check_pushout(phi, psi, probes, homs=_default_cache):
    fails = []
    P, (l1, l2) = pushout(phi, psi)
    for Z in probes:
        fib = _fibers(iter_homs(P, Z), lambda m: (comp_key(m, l1), comp_key(m, l2)))
        n = 0
        for a in homs(phi.target, Z):
            ka = comp_key(a, phi)
            for b in homs(psi.target, Z):
                if ka != comp_key(b, psi):
                    continue
                n += 1
                ms = fib.get((hkey(a), hkey(b)), [])
                if len(ms) != 1 or hkey(pushout_mediator(phi, psi, [a, b], [l1, l2])) != hkey(ms[0]):
                    fails.append(("pushout", phi, psi, Z, (a, b), len(ms)))
        if sum(map(len, fib.values())) != n:
            fails.append(("pushout-count", phi, psi, Z))
    return fails
