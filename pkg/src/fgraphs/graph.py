"""F-graphs, homomorphisms, subgraphs, congruences and factor graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .errors import DomainMismatch, NotACongruence, PreconditionViolated
from .functors import (FunctorSpec, fmap_fast, fset, is_value, natkey,
                       support_fast, value_str)


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer with a witness.  Truthy exactly when ``ok``."""

    ok: bool
    witness: Any = None
    reason: str = ""

    def __bool__(self):
        return self.ok


class FGraph:
    """A graph ``(E, V, g)`` over a functor spec.  Treated as immutable."""

    __slots__ = ("spec", "vertices", "edges", "g", "_supp", "_cache")

    def __init__(self, spec: FunctorSpec, vertices: Iterable[str], structure: Mapping[str, Any]):
        vertices = list(vertices)
        self.spec = spec
        self.vertices = fset(vertices)
        if len(self.vertices) != len(vertices):
            raise ValueError("duplicate vertex ids")
        self.edges = fset(structure)
        self.g = dict(structure)
        self._supp = {}
        self._cache = {}

    E = property(lambda self: self.edges)
    V = property(lambda self: self.vertices)

    def __eq__(self, other):
        return (isinstance(other, FGraph) and self.spec == other.spec
                and self.vertices == other.vertices and self.g == other.g)

    def __hash__(self):
        return hash((self.spec, self.vertices, self.edges))

    def __repr__(self):
        es = ", ".join(f"{e}:{value_str(self.g[e])}" for e in self.edges)
        return f"FGraph({self.spec.kind}, V=[{', '.join(self.vertices)}], E=[{es}])"

    def supp(self, e) -> frozenset:
        s = self._supp.get(e)
        if s is None:
            s = self._supp[e] = support_fast(self.spec, self.g[e])
        return s

    def edges_by_value(self) -> dict:
        """``value -> [edges carrying it]`` (computed once)."""
        idx = self._cache.get("by_value")
        if idx is None:
            idx = {}
            for e in self.edges:
                idx.setdefault(self.g[e], []).append(e)
            self._cache["by_value"] = idx
        return idx

    def is_simple(self) -> bool:
        return len(set(self.g.values())) == len(self.g)


def empty_graph(spec: FunctorSpec) -> FGraph:
    return FGraph(spec, (), {})


def validate_graph(G: FGraph) -> Verdict:
    """Check the structure map lands in ``F(V)``; the witness lists violations."""
    Vs = set(G.vertices)
    bad = []
    for e in G.edges:
        w = G.g[e]
        if not is_value(G.spec, w):
            bad.append(f"edge {e}: {w!r} is not a {G.spec.kind} value")
        elif not support_fast(G.spec, w) <= Vs:
            missing = fset(support_fast(G.spec, w) - Vs)
            bad.append(f"edge {e}: value {value_str(w)} uses unknown vertices {list(missing)}")
    return Verdict(not bad, bad)


@dataclass(eq=False)
class Hom:
    source: FGraph
    target: FGraph
    edge_map: dict
    vertex_map: dict

    def __post_init__(self):
        self.edge_map = dict(self.edge_map)
        self.vertex_map = dict(self.vertex_map)

    def __eq__(self, other):
        return (isinstance(other, Hom) and self.edge_map == other.edge_map
                and self.vertex_map == other.vertex_map
                and self.source == other.source and self.target == other.target)

    def __repr__(self):
        em = ", ".join(f"{k}->{self.edge_map[k]}" for k in self.source.edges)
        vm = ", ".join(f"{k}->{self.vertex_map[k]}" for k in self.source.vertices)
        return f"Hom(E: {em}; V: {vm})"

    def key(self):
        """Hashable identity of the two maps (graphs excluded)."""
        return (tuple(self.edge_map[e] for e in self.source.edges),
                tuple(self.vertex_map[v] for v in self.source.vertices))

    def image_value(self, e):
        return fmap_fast(self.source.spec, self.vertex_map, self.source.g[e])


def validate_hom(phi: Hom) -> Verdict:
    """Commuting-square check; a failure's witness is the first bad edge."""
    G1, G2 = phi.source, phi.target
    if G1.spec != G2.spec:
        raise DomainMismatch("source and target use different functors")
    if set(phi.edge_map) != set(G1.edges) or set(phi.vertex_map) != set(G1.vertices):
        raise DomainMismatch("maps are not total on the source carriers")
    E2, V2 = set(G2.edges), set(G2.vertices)
    if not set(phi.edge_map.values()) <= E2 or not set(phi.vertex_map.values()) <= V2:
        raise DomainMismatch("maps leave the target carriers")
    for e in G1.edges:
        if G2.g[phi.edge_map[e]] != phi.image_value(e):
            return Verdict(False, e, f"square fails at edge {e}")
    return Verdict(True)


def is_hom(phi: Hom) -> bool:
    try:
        return validate_hom(phi).ok
    except DomainMismatch:
        return False


def identity_hom(G: FGraph) -> Hom:
    return Hom(G, G, {e: e for e in G.edges}, {v: v for v in G.vertices})


def compose(psi: Hom, phi: Hom) -> Hom:
    """``psi . phi`` (apply ``phi`` first)."""
    if phi.target != psi.source:
        raise DomainMismatch("phi.target is not psi.source")
    return Hom(phi.source, psi.target,
               {e: psi.edge_map[phi.edge_map[e]] for e in phi.source.edges},
               {v: psi.vertex_map[phi.vertex_map[v]] for v in phi.source.vertices})


def is_injective(phi: Hom) -> bool:
    return (len(set(phi.edge_map.values())) == len(phi.edge_map)
            and len(set(phi.vertex_map.values())) == len(phi.vertex_map))


def is_surjective(phi: Hom) -> bool:
    return (set(phi.edge_map.values()) == set(phi.target.edges)
            and set(phi.vertex_map.values()) == set(phi.target.vertices))


# ---------------------------------------------------------------------------
# subgraphs


def restrict(G: FGraph, E_sub, V_sub) -> FGraph:
    return FGraph(G.spec, V_sub, {e: G.g[e] for e in E_sub})


@dataclass(eq=False)
class SubgraphHandle:
    parent: FGraph
    edges: tuple
    vertices: tuple
    _graph: FGraph = field(default=None, repr=False)

    def __post_init__(self):
        self.edges = fset(self.edges)
        self.vertices = fset(self.vertices)

    @property
    def graph(self) -> FGraph:
        if self._graph is None:
            self._graph = restrict(self.parent, self.edges, self.vertices)
        return self._graph

    @property
    def inclusion(self) -> Hom:
        return Hom(self.graph, self.parent, {e: e for e in self.edges},
                   {v: v for v in self.vertices})

    def carrier(self):
        return (frozenset(self.edges), frozenset(self.vertices))

    def __eq__(self, other):
        return (isinstance(other, SubgraphHandle) and self.parent == other.parent
                and self.edges == other.edges and self.vertices == other.vertices)

    def __le__(self, other):
        return set(self.edges) <= set(other.edges) and set(self.vertices) <= set(other.vertices)

    def __repr__(self):
        return f"Subgraph(E={list(self.edges)}, V={list(self.vertices)})"


def subgraph_check(G: FGraph, E_sub, V_sub) -> Verdict:
    """Witness is the handle on success, else the first edge whose support escapes."""
    E_sub, V_sub = fset(E_sub), fset(V_sub)
    if not set(E_sub) <= set(G.edges) or not set(V_sub) <= set(G.vertices):
        raise DomainMismatch("bounds are not subsets of the graph's carriers")
    Vs = set(V_sub)
    for e in E_sub:
        if not G.supp(e) <= Vs:
            return Verdict(False, e, f"edge {e} has an endpoint outside the vertex subset")
    return Verdict(True, SubgraphHandle(G, E_sub, V_sub))


def whole(G: FGraph) -> SubgraphHandle:
    return SubgraphHandle(G, G.edges, G.vertices)


def image(phi: Hom):
    """Image subgraph of ``phi`` and the surjective corestriction onto it."""
    h = SubgraphHandle(phi.target, set(phi.edge_map.values()), set(phi.vertex_map.values()))
    onto = Hom(phi.source, h.graph, phi.edge_map, phi.vertex_map)
    return h, onto


def factorize(phi: Hom):
    """Surjective-injective factorization ``phi = mono . epi`` through the image."""
    h, epi = image(phi)
    return epi, h.inclusion, h.graph


# ---------------------------------------------------------------------------
# equivalences, kernels, quotients


class Partition:
    """An equivalence relation stored as sorted classes; each class is named by its minimum."""

    __slots__ = ("classes", "rep")

    def __init__(self, classes):
        cl = [tuple(sorted(c, key=natkey)) for c in classes if c]
        cl.sort(key=lambda c: natkey(c[0]))
        self.classes = tuple(cl)
        self.rep = {x: c[0] for c in self.classes for x in c}
        if len(self.rep) != sum(len(c) for c in self.classes):
            raise ValueError("classes overlap")

    @classmethod
    def diagonal(cls, elements):
        return cls([(x,) for x in elements])

    @classmethod
    def total(cls, elements):
        return cls([tuple(elements)])

    @classmethod
    def of_map(cls, f: Mapping):
        groups = {}
        for x, y in f.items():
            groups.setdefault(y, []).append(x)
        return cls(groups.values())

    @classmethod
    def generated(cls, elements, pairs):
        parent = {x: x for x in elements}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups = {}
        for x in elements:
            groups.setdefault(find(x), []).append(x)
        return cls(groups.values())

    @property
    def elements(self):
        return fset(self.rep)

    def related(self, a, b) -> bool:
        return self.rep[a] == self.rep[b]

    def pairs(self):
        for c in self.classes:
            for a in c:
                for b in c:
                    yield (a, b)

    def __le__(self, other: "Partition") -> bool:
        return all(len({other.rep[x] for x in c}) == 1 for c in self.classes)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def restrict(self, subset) -> "Partition":
        s = set(subset)
        return Partition([[x for x in c if x in s] for c in self.classes])

    def is_diagonal(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    def __repr__(self):
        return "Partition(" + " | ".join(",".join(c) for c in self.classes) + ")"


@dataclass(frozen=True)
class EquivPair:
    edges: Partition
    vertices: Partition

    def __le__(self, other):
        return self.edges <= other.edges and self.vertices <= other.vertices

    @classmethod
    def diagonal(cls, G: FGraph):
        return cls(Partition.diagonal(G.edges), Partition.diagonal(G.vertices))

    @classmethod
    def total(cls, G: FGraph):
        return cls(Partition.total(G.edges), Partition.total(G.vertices))

    @classmethod
    def generated(cls, G: FGraph, edge_pairs=(), vertex_pairs=()):
        return cls(Partition.generated(G.edges, edge_pairs),
                   Partition.generated(G.vertices, vertex_pairs))

    def is_diagonal(self):
        return self.edges.is_diagonal() and self.vertices.is_diagonal()


def kernel(phi: Hom) -> EquivPair:
    return EquivPair(Partition.of_map(phi.edge_map), Partition.of_map(phi.vertex_map))


def is_congruence(G: FGraph, theta: EquivPair) -> Verdict:
    """Identified edges must have equal values after projecting vertices to classes."""
    proj = theta.vertices.rep
    for cl in theta.edges.classes:
        first = fmap_fast(G.spec, proj, G.g[cl[0]])
        for e in cl[1:]:
            if fmap_fast(G.spec, proj, G.g[e]) != first:
                return Verdict(False, (cl[0], e))
    return Verdict(True)


def quotient(G: FGraph, theta: EquivPair):
    """Factor graph named by class minima, plus the canonical projection."""
    ok = is_congruence(G, theta)
    if not ok:
        raise NotACongruence(ok.witness)
    erep, vrep = theta.edges.rep, theta.vertices.rep
    g = {c[0]: fmap_fast(G.spec, vrep, G.g[c[0]]) for c in theta.edges.classes}
    Q = FGraph(G.spec, [c[0] for c in theta.vertices.classes], g)
    return Q, Hom(G, Q, erep, vrep)


def first_iso(phi: Hom) -> Hom:
    """The bijection ``source/ker(phi) -> image(phi)``."""
    Q, _ = quotient(phi.source, kernel(phi))
    h, _ = image(phi)
    return Hom(Q, h.graph, {c: phi.edge_map[c] for c in Q.edges},
               {c: phi.vertex_map[c] for c in Q.vertices})


# ---------------------------------------------------------------------------
# diagram lemmas


def _first_violation(p: Partition, f: Mapping):
    for c in p.classes:
        for x in c[1:]:
            if f[x] != f[c[0]]:
                return (c[0], x)
    return None


def mediate_through_epi(phi: Hom, psi: Hom) -> Verdict:
    """The unique ``gamma`` with ``gamma . phi == psi`` when ``ker phi <= ker psi``."""
    if phi.source != psi.source:
        raise PreconditionViolated("phi and psi must share their source")
    if not is_surjective(phi):
        raise PreconditionViolated("phi must be surjective")
    k = kernel(phi)
    bad = _first_violation(k.edges, psi.edge_map)
    if bad:
        return Verdict(False, ("edge",) + bad, "phi identifies edges that psi separates")
    bad = _first_violation(k.vertices, psi.vertex_map)
    if bad:
        return Verdict(False, ("vertex",) + bad, "phi identifies vertices that psi separates")
    em = {phi.edge_map[e]: psi.edge_map[e] for e in phi.source.edges}
    vm = {phi.vertex_map[v]: psi.vertex_map[v] for v in phi.source.vertices}
    return Verdict(True, Hom(phi.target, psi.target, em, vm))


def mediate_through_mono(phi: Hom, psi: Hom) -> Verdict:
    """The unique ``gamma`` with ``phi . gamma == psi`` when ``psi``'s image sits in ``phi``'s."""
    if phi.target != psi.target:
        raise PreconditionViolated("phi and psi must share their target")
    if not is_injective(phi):
        raise PreconditionViolated("phi must be injective")
    inv_e = {y: x for x, y in phi.edge_map.items()}
    inv_v = {y: x for x, y in phi.vertex_map.items()}
    for e in psi.source.edges:
        if psi.edge_map[e] not in inv_e:
            return Verdict(False, ("edge", psi.edge_map[e]), "psi hits an edge outside phi's image")
    for v in psi.source.vertices:
        if psi.vertex_map[v] not in inv_v:
            return Verdict(False, ("vertex", psi.vertex_map[v]),
                           "psi hits a vertex outside phi's image")
    em = {e: inv_e[psi.edge_map[e]] for e in psi.source.edges}
    vm = {v: inv_v[psi.vertex_map[v]] for v in psi.source.vertices}
    return Verdict(True, Hom(psi.source, phi.source, em, vm))


# ---------------------------------------------------------------------------
# morphism classes


def is_iso(phi: Hom) -> Verdict:
    if not (is_injective(phi) and is_surjective(phi)):
        return Verdict(False)
    inv = Hom(phi.target, phi.source, {y: x for x, y in phi.edge_map.items()},
              {y: x for x, y in phi.vertex_map.items()})
    return Verdict(True, inv)


def is_epi(phi: Hom) -> bool:
    return is_surjective(phi)


def is_regular_mono(phi: Hom) -> bool:
    return is_injective(phi)


def is_mono(phi: Hom) -> bool:
    """Mono iff the largest graph relation inside the kernel is the diagonal."""
    from .relations import RelationPair, largest_graph_relation_within

    k = kernel(phi)
    G = phi.source
    bounds = RelationPair(set(k.edges.pairs()), set(k.vertices.pairs()))
    r = largest_graph_relation_within(G, G, bounds)
    return (all(a == b for a, b in r.relation.edge_pairs)
            and all(a == b for a, b in r.relation.vertex_pairs))


def is_regular_epi(phi: Hom) -> bool:
    """For surjective ``phi``: is ``ker phi`` generated by a graph relation?"""
    from .relations import RelationPair, largest_graph_relation_within

    if not is_surjective(phi):
        raise PreconditionViolated("phi must be surjective")
    k = kernel(phi)
    G = phi.source
    bounds = RelationPair(set(k.edges.pairs()), set(k.vertices.pairs()))
    r = largest_graph_relation_within(G, G, bounds)
    gen = EquivPair.generated(G, r.relation.edge_pairs, r.relation.vertex_pairs)
    return gen.edges == k.edges and gen.vertices == k.vertices


# ---------------------------------------------------------------------------
# isomorphism theorems


@dataclass
class SecondIsoWitness:
    chi: Hom
    theta3: EquivPair
    iso: Hom


def iso_theorem_2(G: FGraph, theta1: EquivPair, theta2: EquivPair) -> SecondIsoWitness:
    """``chi: G/theta1 -> G/theta2`` with ``chi . pi1 == pi2`` and ``(G/theta1)/ker chi ~ G/theta2``."""
    if not theta1 <= theta2:
        raise PreconditionViolated("theta1 must be contained in theta2")
    _, pi1 = quotient(G, theta1)
    _, pi2 = quotient(G, theta2)
    chi = mediate_through_epi(pi1, pi2).witness
    theta3 = kernel(chi)
    _, pi3 = quotient(chi.source, theta3)
    iso = mediate_through_epi(pi3, chi).witness
    return SecondIsoWitness(chi, theta3, iso)


@dataclass
class ThirdIsoWitness:
    saturation: SubgraphHandle
    restricted: EquivPair
    iso: Hom


def saturate(theta: EquivPair, handle: SubgraphHandle):
    E = [e for c in theta.edges.classes if set(c) & set(handle.edges) for e in c]
    V = [v for c in theta.vertices.classes if set(c) & set(handle.vertices) for v in c]
    return fset(E), fset(V)


def iso_theorem_3(G: FGraph, theta: EquivPair, handle: SubgraphHandle) -> ThirdIsoWitness:
    """Saturation subgraph, restricted congruence and ``G_U/(theta|U) ~ G_U^theta/theta``."""
    if handle.parent != G:
        raise PreconditionViolated("handle does not belong to G")
    ok = is_congruence(G, theta)
    if not ok:
        raise NotACongruence(ok.witness)
    E_sat, V_sat = saturate(theta, handle)
    sat = subgraph_check(G, E_sat, V_sat)
    if not sat:
        raise PreconditionViolated(f"saturation is not a subgraph (edge {sat.witness})")
    sat = sat.witness
    restricted = EquivPair(theta.edges.restrict(handle.edges), theta.vertices.restrict(handle.vertices))
    Q_u, pi_u = quotient(handle.graph, restricted)
    theta_sat = EquivPair(theta.edges.restrict(sat.edges), theta.vertices.restrict(sat.vertices))
    Q_s, pi_s = quotient(sat.graph, theta_sat)
    iso = Hom(Q_u, Q_s, {c: pi_s.edge_map[c] for c in Q_u.edges},
              {c: pi_s.vertex_map[c] for c in Q_u.vertices})
    return ThirdIsoWitness(sat, restricted, iso)
