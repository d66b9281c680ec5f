"""Graph relations: relation pairs carrying a structure map that makes both
projections homomorphisms.

Vertex pairs never owe anything to edges, so the largest graph relation inside
given bounds is obtained in a single pass: keep every bounded edge pair that
admits a witness value over the bounded vertex pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FGraphError, Unsupported
from .functors import DEFAULT_CAP, enumerate_values, fmap_fast, natkey
from .graph import FGraph, Hom, Verdict, kernel, validate_hom


def pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


def _pair_key(p):
    return natkey(p[0]), natkey(p[1])


def sorted_pairs(pairs):
    return sorted(pairs, key=_pair_key)


@dataclass(frozen=True)
class RelationPair:
    edge_pairs: frozenset
    vertex_pairs: frozenset

    def __init__(self, edge_pairs=(), vertex_pairs=()):
        object.__setattr__(self, "edge_pairs", frozenset(map(tuple, edge_pairs)))
        object.__setattr__(self, "vertex_pairs", frozenset(map(tuple, vertex_pairs)))

    def __le__(self, other):
        return self.edge_pairs <= other.edge_pairs and self.vertex_pairs <= other.vertex_pairs

    def __or__(self, other):
        return RelationPair(self.edge_pairs | other.edge_pairs, self.vertex_pairs | other.vertex_pairs)

    @classmethod
    def full(cls, G1: FGraph, G2: FGraph):
        return cls([(a, b) for a in G1.edges for b in G2.edges],
                   [(a, b) for a in G1.vertices for b in G2.vertices])

    @classmethod
    def diagonal(cls, G: FGraph):
        return cls([(e, e) for e in G.edges], [(v, v) for v in G.vertices])

    def is_diagonal(self):
        return all(a == b for a, b in self.edge_pairs) and all(a == b for a, b in self.vertex_pairs)


@dataclass(eq=False)
class GraphRelation:
    G1: FGraph
    G2: FGraph
    relation: RelationPair
    witness: dict = field(repr=False)  # (e1, e2) -> value over pair ids

    def graph(self) -> FGraph:
        return FGraph(self.G1.spec, [pair_id(a, b) for a, b in self.relation.vertex_pairs],
                      {pair_id(a, b): w for (a, b), w in self.witness.items()})

    def _projection(self, idx, target):
        R = self.graph()
        em = {pair_id(*p): p[idx] for p in self.relation.edge_pairs}
        vm = {pair_id(*p): p[idx] for p in self.relation.vertex_pairs}
        return Hom(R, target, em, vm)

    @property
    def first(self) -> Hom:
        return self._projection(0, self.G1)

    @property
    def second(self) -> Hom:
        return self._projection(1, self.G2)

    def check(self) -> bool:
        return validate_hom(self.first).ok and validate_hom(self.second).ok


class _WitnessFinder:
    """Searches ``F(R_V)`` for a value projecting onto a given pair of edge values."""

    def __init__(self, G1, G2, vertex_pairs, cap):
        self.G1, self.G2, self.cap = G1, G2, cap
        self.by_first = {}
        for a, b in vertex_pairs:
            self.by_first.setdefault(a, []).append(b)
        self.memo = {}

    def find(self, e1, e2):
        spec = self.G1.spec
        w1, w2 = self.G1.g[e1], self.G2.g[e2]
        s1, s2 = self.G1.supp(e1), self.G2.supp(e2)
        relevant = [(a, b) for a in s1 for b in self.by_first.get(a, ()) if b in s2]
        key = (w1, w2, frozenset(relevant))
        if key in self.memo:
            return self.memo[key]
        ids = {pair_id(a, b): (a, b) for a, b in relevant}
        left = {k: p[0] for k, p in ids.items()}
        right = {k: p[1] for k, p in ids.items()}
        found = None
        for w in enumerate_values(spec, ids, cap=self.cap):
            if fmap_fast(spec, left, w) == w1 and fmap_fast(spec, right, w) == w2:
                found = w
                break
        self.memo[key] = found
        return found


def is_graph_relation(G1: FGraph, G2: FGraph, R: RelationPair, cap: int = DEFAULT_CAP) -> Verdict:
    """Witness is the GraphRelation, or the first edge pair lacking a witness value."""
    _check_wellformed(G1, G2, R)
    finder = _WitnessFinder(G1, G2, R.vertex_pairs, cap)
    witness = {}
    for p in sorted_pairs(R.edge_pairs):
        w = finder.find(*p)
        if w is None:
            return Verdict(False, p, f"no witness value for edge pair {p}")
        witness[p] = w
    return Verdict(True, GraphRelation(G1, G2, R, witness))


def _check_wellformed(G1, G2, R):
    E1, E2, V1, V2 = set(G1.edges), set(G2.edges), set(G1.vertices), set(G2.vertices)
    for a, b in R.edge_pairs:
        if a not in E1 or b not in E2:
            raise FGraphError(f"edge pair {(a, b)} references unknown edges")
    for a, b in R.vertex_pairs:
        if a not in V1 or b not in V2:
            raise FGraphError(f"vertex pair {(a, b)} references unknown vertices")


def largest_graph_relation_within(G1: FGraph, G2: FGraph, bounds: RelationPair,
                                  cap: int = DEFAULT_CAP) -> GraphRelation:
    _check_wellformed(G1, G2, bounds)
    finder = _WitnessFinder(G1, G2, bounds.vertex_pairs, cap)
    witness = {}
    for p in sorted_pairs(bounds.edge_pairs):
        w = finder.find(*p)
        if w is not None:
            witness[p] = w
    return GraphRelation(G1, G2, RelationPair(witness, bounds.vertex_pairs), witness)


def largest_graph_relation(G1: FGraph, G2: FGraph, cap: int = DEFAULT_CAP) -> GraphRelation:
    return largest_graph_relation_within(G1, G2, RelationPair.full(G1, G2), cap)


def graph_of_hom(phi: Hom) -> GraphRelation:
    G1 = phi.source
    vm = phi.vertex_map
    to_pair = {v: pair_id(v, vm[v]) for v in G1.vertices}
    witness = {(e, phi.edge_map[e]): fmap_fast(G1.spec, to_pair, G1.g[e]) for e in G1.edges}
    R = RelationPair(witness, vm.items())
    return GraphRelation(G1, phi.target, R, witness)


def relation_from_hom_pair(phi1: Hom, phi2: Hom) -> GraphRelation:
    """The joint image ``(phi1, phi2)[G]``, witnessed through the source structure."""
    if phi1.source != phi2.source:
        raise FGraphError("homomorphisms must share their source")
    G = phi1.source
    to_pair = {v: pair_id(phi1.vertex_map[v], phi2.vertex_map[v]) for v in G.vertices}
    witness = {}
    for e in G.edges:
        p = (phi1.edge_map[e], phi2.edge_map[e])
        witness.setdefault(p, fmap_fast(G.spec, to_pair, G.g[e]))
    vpairs = {(phi1.vertex_map[v], phi2.vertex_map[v]) for v in G.vertices}
    return GraphRelation(phi1.target, phi2.target, RelationPair(witness, vpairs), witness)


def edges_related(G1: FGraph, e1: str, G2: FGraph, e2: str, cap: int = DEFAULT_CAP) -> Verdict:
    """Related edges come with a one-edge graph mapping onto both (witness ``(G, phi, psi)``)."""
    vpairs = [(a, b) for a in G1.supp(e1) for b in G2.supp(e2)]
    finder = _WitnessFinder(G1, G2, vpairs, cap)
    w = finder.find(e1, e2)
    if w is None:
        return Verdict(False, None, f"{e1} and {e2} are not related")
    supp = G1.spec.leaves(w)
    ids = {a.id for a in supp}
    pairs = {pair_id(a, b): (a, b) for a, b in vpairs if pair_id(a, b) in ids}
    G = FGraph(G1.spec, pairs, {"e": w})
    phi = Hom(G, G1, {"e": e1}, {k: p[0] for k, p in pairs.items()})
    psi = Hom(G, G2, {"e": e2}, {k: p[1] for k, p in pairs.items()})
    return Verdict(True, (G, phi, psi))


@dataclass
class KernelRelation:
    relation: GraphRelation
    section: Hom
    retraction: Hom


def kernel_relation(phi: Hom, cap: int = DEFAULT_CAP) -> KernelRelation:
    """The kernel pair of ``phi`` as a graph relation, with ``G1`` as a retract of it."""
    G1 = phi.source
    if not G1.spec.weakly_preserves_kernels:
        raise Unsupported(f"{G1.spec.kind} does not weakly preserve kernel pairs")
    k = kernel(phi)
    R = RelationPair(k.edges.pairs(), k.vertices.pairs())
    v = is_graph_relation(G1, G1, R, cap)
    if not v:
        raise FGraphError(f"kernel pair {v.witness} has no witness; weak kernel preservation fails here")
    rel = v.witness
    # the diagonal edges get the canonical witness F(delta)(g(e))
    diag = {x: pair_id(x, x) for x in G1.vertices}
    for e in G1.edges:
        rel.witness[(e, e)] = fmap_fast(G1.spec, diag, G1.g[e])
    K = rel.graph()
    section = Hom(G1, K, {e: pair_id(e, e) for e in G1.edges}, diag)
    retraction = rel.first
    return KernelRelation(rel, section, retraction)
