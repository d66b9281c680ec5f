"""Shared builders, exhaustive enumerators and brute-force oracles for the tests.

The oracles here deliberately avoid the library's search and lookup code:
they walk every map with itertools and re-check squares with ``map_value``.
"""

import itertools
import random

from hypothesis import strategies as st

from fgraphs.functors import (Atom, DPair, FinPowerset, SetOf, Tup, UPair, enumerate_values,
                              map_value, support, value_key)
from fgraphs.graph import FGraph, Hom


def val(spec, *vs):
    if isinstance(spec, UPair) or isinstance(spec, FinPowerset):
        return SetOf.of(Atom(v) for v in vs)
    return Tup(tuple(Atom(v) for v in vs))


def mk(spec, vertices, edges):
    """``edges`` maps an edge id to the tuple of its vertices."""
    return FGraph(spec, vertices, {e: val(spec, *vs) for e, vs in edges.items()})


def loop(spec=None, v="v", e="l"):
    spec = spec or UPair()
    return mk(spec, [v], {e: (v,) if isinstance(spec, UPair) else (v, v)})


def k2(spec=None):
    spec = spec or UPair()
    return mk(spec, ["v1", "v2"], {"e": ("v1", "v2")})


# ---------------------------------------------------------------------------
# exhaustive small graphs


def canonical_form(G):
    """Isomorphism invariant that is complete on tiny graphs (tries every vertex renaming)."""
    n = len(G.vertices)
    best = None
    for perm in itertools.permutations(range(n)):
        ren = {v: f"x{perm[i]}" for i, v in enumerate(G.vertices)}
        key = tuple(sorted(value_key(map_value(G.spec, ren, G.g[e])) for e in G.edges))
        if best is None or key < best:
            best = key
    return (G.spec, n, best)


def all_graphs(spec, max_edges, max_vertices, up_to_iso=True):
    """Every graph on ``v1..vn`` with edges ``e1..em`` (m <= max_edges, n <= max_vertices)."""
    out, seen = [], set()
    for n in range(max_vertices + 1):
        V = [f"v{i}" for i in range(1, n + 1)]
        vals = enumerate_values(spec, V)
        for m in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(range(len(vals)), m):
                G = FGraph(spec, V, {f"e{i + 1}": vals[j] for i, j in enumerate(combo)})
                if up_to_iso:
                    key = canonical_form(G)
                    if key in seen:
                        continue
                    seen.add(key)
                out.append(G)
    return out


# ---------------------------------------------------------------------------
# brute-force oracles


def brute_homs(G, H):
    """Every homomorphism ``G -> H`` by trying all vertex maps, then all edge choices."""
    out = []
    for images in itertools.product(H.vertices, repeat=len(G.vertices)):
        vm = dict(zip(G.vertices, images))
        choices = []
        for e in G.edges:
            w = map_value(G.spec, vm, G.g[e])
            choices.append([f for f in H.edges if H.g[f] == w])
        for ems in itertools.product(*choices):
            out.append(Hom(G, H, dict(zip(G.edges, ems)), vm))
    return out


def brute_is_hom(phi):
    G1, G2 = phi.source, phi.target
    return all(G2.g[phi.edge_map[e]] == map_value(G1.spec, phi.vertex_map, G1.g[e])
               for e in G1.edges)


def compose_maps(psi, phi):
    return ({e: psi.edge_map[phi.edge_map[e]] for e in phi.source.edges},
            {v: psi.vertex_map[phi.vertex_map[v]] for v in phi.source.vertices})


def same_maps(phi, em, vm):
    return phi.edge_map == em and phi.vertex_map == vm


def brute_subgraphs(G):
    """All (E', V') with every support inside V', by filtering the full power set."""
    out = []
    E, V = list(G.edges), list(G.vertices)
    for r in range(len(V) + 1):
        for Vs in itertools.combinations(V, r):
            for k in range(len(E) + 1):
                for Es in itertools.combinations(E, k):
                    if all({a.id for a in G.spec.leaves(G.g[e])} <= set(Vs) for e in Es):
                        out.append((frozenset(Es), frozenset(Vs)))
    return out


# ---------------------------------------------------------------------------
# random instances


def _values(spec, V, nonempty):
    vals = enumerate_values(spec, V)
    return [w for w in vals if support(spec, w)] if nonempty else vals


def random_graph(rng: random.Random, spec, max_edges=4, max_vertices=4, min_vertices=1,
                 nonempty=False):
    """``nonempty`` drops values with empty support (the empty hyperedge)."""
    n = rng.randint(min_vertices, max_vertices)
    V = [f"v{i}" for i in range(1, n + 1)]
    vals = _values(spec, V, nonempty)
    m = rng.randint(0, max_edges) if vals else 0
    return FGraph(spec, V, {f"e{i}": rng.choice(vals) for i in range(1, m + 1)})


def random_hom_from(rng: random.Random, G, max_vertices=4, extra_edges=2, nonempty=False):
    """A random hom out of ``G`` into a target built to receive it."""
    spec = G.spec
    n2 = rng.randint(1, max_vertices)
    W = [f"w{i}" for i in range(1, n2 + 1)]
    vm = {v: rng.choice(W) for v in G.vertices}
    g2, em = {}, {}
    for e in G.edges:
        w = map_value(spec, vm, G.g[e])
        same = [f for f, x in g2.items() if x == w]
        if same and rng.random() < 0.5:
            em[e] = rng.choice(same)
        else:
            f = f"f{len(g2) + 1}"
            g2[f] = w
            em[e] = f
    vals = _values(spec, W, nonempty)
    for _ in range(rng.randint(0, extra_edges) if vals else 0):
        g2[f"f{len(g2) + 1}"] = rng.choice(vals)
    H = FGraph(spec, W, g2)
    return Hom(G, H, em, vm)


def random_hom(rng: random.Random, spec, max_edges=4, max_vertices=4, nonempty=False):
    """A random hom found by mapping a random source into a random target built to receive it."""
    G = random_graph(rng, spec, max_edges, max_vertices, nonempty=nonempty)
    return random_hom_from(rng, G, max_vertices, nonempty=nonempty)


def brute_isomorphic(G, H):
    """Some vertex bijection carries the multiset of edge values of ``G`` onto that of ``H``."""
    if G.spec != H.spec or len(G.vertices) != len(H.vertices) or len(G.edges) != len(H.edges):
        return False
    target = sorted(value_key(w) for w in H.g.values())
    for perm in itertools.permutations(H.vertices):
        ren = dict(zip(G.vertices, perm))
        if sorted(value_key(map_value(G.spec, ren, w)) for w in G.g.values()) == target:
            return True
    return False


# ---------------------------------------------------------------------------
# hypothesis strategies


SPECS = [UPair(), DPair(), FinPowerset()]


@st.composite
def graphs(draw, specs=tuple(SPECS), max_edges=3, max_vertices=3, min_vertices=0):
    spec = draw(st.sampled_from(list(specs)))
    n = draw(st.integers(min_vertices, max_vertices))
    V = [f"v{i}" for i in range(1, n + 1)]
    vals = enumerate_values(spec, V)
    if not vals:
        return FGraph(spec, V, {})
    picks = draw(st.lists(st.sampled_from(vals), max_size=max_edges))
    return FGraph(spec, V, {f"e{i + 1}": w for i, w in enumerate(picks)})


@st.composite
def homs(draw, specs=(UPair(), DPair()), max_edges=3, max_vertices=3):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    spec = draw(st.sampled_from(list(specs)))
    return random_hom(random.Random(seed), spec, max_edges, max_vertices)


def brute_largest_relation(G1, G2):
    """Union of every sub-relation of ``E1 x E2, V1 x V2`` passing the graph-relation test.

    Every value of ``F(V1 x V2)`` is enumerated once and filed under the pair
    of values it projects to, with its support.  A sub-relation ``(S_E, S_V)``
    is a graph relation iff each pair in ``S_E`` has such a value supported in
    ``S_V``; all ``2^|S_V|`` vertex subsets and ``2^|S_E|`` edge subsets are tried.
    """
    from fgraphs.relations import RelationPair, pair_id

    spec = G1.spec
    vpairs = [(a, b) for a in G1.vertices for b in G2.vertices]
    ids = {pair_id(a, b): (a, b) for a, b in vpairs}
    left = {k: p[0] for k, p in ids.items()}
    right = {k: p[1] for k, p in ids.items()}
    supports = {}
    for w in enumerate_values(spec, ids):
        key_ = (map_value(spec, left, w), map_value(spec, right, w))
        supports.setdefault(key_, []).append(frozenset(ids[a.id] for a in spec.leaves(w)))
    epairs = [(e1, e2) for e1 in G1.edges for e2 in G2.edges]
    E_union, V_union = set(), set()
    for r in range(len(vpairs) + 1):
        for SV in itertools.combinations(vpairs, r):
            SV = frozenset(SV)
            ok_pairs = [p for p in epairs
                        if any(s <= SV for s in supports.get((G1.g[p[0]], G2.g[p[1]]), ()))]
            for k in range(len(epairs) + 1):
                for SE in itertools.combinations(epairs, k):
                    if set(SE) <= set(ok_pairs):
                        E_union |= set(SE)
                        V_union |= SV
    return RelationPair(E_union, V_union)
