"""Patterns over cofree graphs, satisfaction, invariant subgraphs, conditional
patterns, implications and closure audits for the Co-Birkhoff correspondences.

A coloring ``gamma`` of ``G`` induces ``G -> C(X)``; its image only depends on
the vertex coloring and the set of edge colors used.  The factored routines
exploit this: they loop over vertex colorings only and treat every edge color
at once.  Brute-force twins enumerate full colorings and exist as oracles.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cofree import CofreeGraph, ColorSet, Coloring, induced_hom
from .errors import BudgetExceeded, DomainMismatch
from .functors import DEFAULT_CAP, fmap_fast
from .graph import FGraph, Hom, SubgraphHandle, Verdict, compose, is_injective, is_surjective
from .limits import (coproduct, coproduct_mediator, cogenerated_subgraph,
                     edge_induced, generated_subgraph, pushout, to_terminal,
                     terminal_graph)
from .search import DEFAULT_HOM_BUDGET, iter_homs
from .transforms import minimize

DEFAULT_COLORING_BUDGET = 1_000_000


@dataclass(frozen=True)
class Pattern:
    colors: ColorSet
    edge_subset: frozenset
    vertex_subset: frozenset

    def __init__(self, colors, edge_subset=(), vertex_subset=()):
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "edge_subset", frozenset(edge_subset))
        object.__setattr__(self, "vertex_subset", frozenset(vertex_subset))

    @classmethod
    def full(cls, C: CofreeGraph):
        return cls(C.X, C.graph.edges, C.graph.vertices)

    @classmethod
    def of_subgraph(cls, C: CofreeGraph, handle: SubgraphHandle):
        return cls(C.X, handle.edges, handle.vertices)

    def __le__(self, other):
        return self.edge_subset <= other.edge_subset and self.vertex_subset <= other.vertex_subset


@dataclass(frozen=True)
class ConditionalPattern:
    host: FGraph
    edge_subset: frozenset
    vertex_subset: frozenset

    def __init__(self, host, edge_subset=(), vertex_subset=()):
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "edge_subset", frozenset(edge_subset))
        object.__setattr__(self, "vertex_subset", frozenset(vertex_subset))
        if not self.edge_subset <= set(host.edges) or not self.vertex_subset <= set(host.vertices):
            raise DomainMismatch("conditional pattern references elements outside its host")


@dataclass(frozen=True)
class Implication:
    P: Pattern
    Q: Pattern

    def __post_init__(self):
        if self.P.colors != self.Q.colors:
            raise DomainMismatch("implication needs both patterns over the same color set")


def _cofree(spec, X, cap):
    return CofreeGraph(spec, X, cap)


def _check_pattern(P: Pattern, C: CofreeGraph):
    if not P.edge_subset <= set(C.graph.edges) or not P.vertex_subset <= set(C.graph.vertices):
        raise DomainMismatch("pattern references elements outside the cofree graph")


def pattern_hat(P: Pattern, spec, cap: int = DEFAULT_CAP) -> SubgraphHandle:
    """Largest subgraph of ``C(X)`` inside the pattern."""
    C = _cofree(spec, P.colors, cap)
    _check_pattern(P, C)
    return cogenerated_subgraph(C.graph, P.edge_subset, P.vertex_subset)


# ---------------------------------------------------------------------------
# colorings


def _colorings_exist(G, X):
    return (not G.edges or X.edge_colors) and (not G.vertices or X.vertex_colors)


def _vertex_colorings(G, X):
    for cols in itertools.product(X.vertex_colors, repeat=len(G.vertices)):
        yield dict(zip(G.vertices, cols))


def count_colorings(G: FGraph, X: ColorSet) -> int:
    return len(X.edge_colors) ** len(G.edges) * len(X.vertex_colors) ** len(G.vertices)


def iter_colorings(G: FGraph, X: ColorSet, budget: int = DEFAULT_COLORING_BUDGET):
    """All colorings, vertex part most significant, each part lexicographic."""
    n = count_colorings(G, X)
    if n > budget:
        raise BudgetExceeded("colorings", n, budget)
    for gv in _vertex_colorings(G, X):
        for cols in itertools.product(X.edge_colors, repeat=len(G.edges)):
            yield Coloring(dict(zip(G.edges, cols)), dict(gv))


def _guard_vertex_colorings(G, X, budget):
    n = len(X.vertex_colors) ** len(G.vertices)
    if n > budget:
        raise BudgetExceeded("vertex colorings", n, budget)


# ---------------------------------------------------------------------------
# satisfaction


def satisfies_pattern(G: FGraph, P: Pattern, budget: int = DEFAULT_COLORING_BUDGET,
                      cap: int = DEFAULT_CAP) -> Verdict:
    """``G |= P``; a failure's witness is the first failing coloring in canonical order."""
    C = _cofree(G.spec, P.colors, cap)
    hat = pattern_hat(P, G.spec, cap)
    X = P.colors
    if not _colorings_exist(G, X):
        return Verdict(True, None, "no colorings")
    _guard_vertex_colorings(G, X, budget)
    hat_E, hat_V = set(hat.edges), set(hat.vertices)
    low = X.edge_colors[0] if X.edge_colors else None
    for gv in _vertex_colorings(G, X):
        if not set(gv.values()) <= hat_V:
            return Verdict(False, Coloring({e: low for e in G.edges}, gv), "a vertex color escapes")
        # canonically first failing edge coloring: all-minimal if that fails,
        # otherwise bump the last edge that can fail to its smallest bad color
        fail_at = None
        for i, e in enumerate(G.edges):
            w = fmap_fast(G.spec, gv, G.g[e])
            bad = [c for c in X.edge_colors if C.edge_id(c, w) not in hat_E]
            if bad:
                if bad[0] == low:
                    ge = {x: low for x in G.edges}
                    return Verdict(False, Coloring(ge, gv), f"edge {e} escapes")
                fail_at = (i, bad[0])
        if fail_at is not None:
            i, c = fail_at
            ge = {x: low for x in G.edges}
            ge[G.edges[i]] = c
            return Verdict(False, Coloring(ge, gv), f"edge {G.edges[i]} escapes")
    return Verdict(True)


def satisfies_pattern_brute(G: FGraph, P: Pattern, budget: int = DEFAULT_COLORING_BUDGET,
                            cap: int = DEFAULT_CAP) -> Verdict:
    """Oracle: induce the hom for every coloring and test image containment."""
    C = _cofree(G.spec, P.colors, cap)
    hat = cogenerated_subgraph(C.graph, P.edge_subset, P.vertex_subset)
    hat_E, hat_V = set(hat.edges), set(hat.vertices)
    for gamma in iter_colorings(G, P.colors, budget):
        h = induced_hom(G, gamma, C)
        if not (set(h.edge_map.values()) <= hat_E and set(h.vertex_map.values()) <= hat_V):
            return Verdict(False, gamma)
    return Verdict(True)


def satisfies_implication(G: FGraph, I: Implication, budget: int = DEFAULT_COLORING_BUDGET,
                          cap: int = DEFAULT_CAP) -> bool:
    return not satisfies_pattern(G, I.P, budget, cap).ok or satisfies_pattern(G, I.Q, budget, cap).ok


def satisfies_conditional(G: FGraph, R: ConditionalPattern,
                          budget: int = DEFAULT_HOM_BUDGET) -> Verdict:
    """Every hom ``G -> host`` must land in the largest subgraph inside ``R``."""
    hat = cogenerated_subgraph(R.host, R.edge_subset, R.vertex_subset)
    hat_E, hat_V = set(hat.edges), set(hat.vertices)
    for phi in iter_homs(G, R.host, budget=budget):
        if not (set(phi.edge_map.values()) <= hat_E and set(phi.vertex_map.values()) <= hat_V):
            return Verdict(False, phi, "a homomorphism leaves the pattern")
    return Verdict(True)


def conditional_from_implication(I: Implication, spec, cap: int = DEFAULT_CAP) -> ConditionalPattern:
    """Host ``P-hat`` with the pattern ``U(P-hat) & Q``."""
    hat = pattern_hat(I.P, spec, cap)
    H = hat.graph
    return ConditionalPattern(H, set(H.edges) & I.Q.edge_subset, set(H.vertices) & I.Q.vertex_subset)


def implication_from_conditional(R: ConditionalPattern, cap: int = DEFAULT_CAP):
    """Patterns over ``C(U host)``: the unit image of the host implies that of ``R``'s subgraph.

    Returns ``(Implication, cofree graph)``.
    """
    from .cofree import unit_embedding

    eta, C = unit_embedding(R.host, cap)
    hat = cogenerated_subgraph(R.host, R.edge_subset, R.vertex_subset)
    P = Pattern(C.X, eta.edge_map.values(), eta.vertex_map.values())
    Q = Pattern(C.X, [eta.edge_map[e] for e in hat.edges], hat.vertices)
    return Implication(P, Q), C


# ---------------------------------------------------------------------------
# invariant subgraphs


def is_invariant_subgraph(handle: SubgraphHandle, C: CofreeGraph,
                          budget: int = DEFAULT_COLORING_BUDGET) -> Verdict:
    """Every endomorphism of ``C(X)`` maps the subgraph into itself.

    Endomorphisms correspond to colorings of ``C(X)`` by ``X``: a vertex map
    ``f`` plus a free choice of color per edge.  The witness on failure is an
    offending endomorphism.
    """
    if handle.parent != C.graph:
        raise DomainMismatch("handle is not a subgraph of this cofree graph")
    X, spec = C.X, C.spec
    n = len(X.vertex_colors) ** len(X.vertex_colors)
    if n > budget:
        raise BudgetExceeded("vertex maps of the cofree graph", n, budget)
    H_E, H_V = set(handle.edges), set(handle.vertices)
    if not X.edge_colors and C.graph.edges:
        return Verdict(True, None, "no endomorphisms")
    low = X.edge_colors[0] if X.edge_colors else None
    for f in _vertex_colorings(C.graph, X):
        bad = None
        if not {f[v] for v in H_V} <= H_V:
            bad = ("vertex", None, None)
        else:
            for (c, w), eid in C.edge_of.items():
                if eid not in H_E:
                    continue
                fw = fmap_fast(spec, f, w)
                miss = [c2 for c2 in X.edge_colors if C.edge_id(c2, fw) not in H_E]
                if miss:
                    bad = ("edge", eid, miss[0])
                    break
        if bad is not None:
            gE = {e: low for e in C.graph.edges}
            if bad[0] == "edge":
                gE[bad[1]] = bad[2]
            endo = induced_hom(C.graph, Coloring(gE, f), C)
            return Verdict(False, endo, f"endomorphism moves the subgraph ({bad[0]})")
    return Verdict(True)


def is_invariant_subgraph_brute(handle: SubgraphHandle, budget: int = DEFAULT_HOM_BUDGET) -> Verdict:
    """Oracle: enumerate the endomorphisms by hom search."""
    G = handle.parent
    H_E, H_V = set(handle.edges), set(handle.vertices)
    for phi in iter_homs(G, G, budget=budget):
        if not ({phi.edge_map[e] for e in H_E} <= H_E and {phi.vertex_map[v] for v in H_V} <= H_V):
            return Verdict(False, phi)
    return Verdict(True)


# ---------------------------------------------------------------------------
# the pattern of a class


def pat_of_class(Ks, X: ColorSet, spec=None, budget: int = DEFAULT_COLORING_BUDGET,
                 cap: int = DEFAULT_CAP):
    """Union of the images of all induced homs; returns (handle on C(X), Pattern)."""
    Ks = list(Ks)
    if spec is None:
        if not Ks:
            raise DomainMismatch("need a spec when the class is empty")
        spec = Ks[0].spec
    C = _cofree(spec, X, cap)
    E, V = set(), set()
    for K in Ks:
        if K.spec != spec:
            raise DomainMismatch("class members use different functors")
        if not _colorings_exist(K, X):
            continue
        _guard_vertex_colorings(K, X, budget)
        for gv in _vertex_colorings(K, X):
            V |= set(gv.values())
            for e in K.edges:
                w = fmap_fast(spec, gv, K.g[e])
                E |= {C.edge_id(c, w) for c in X.edge_colors}
    h = SubgraphHandle(C.graph, E, V)
    return h, Pattern(X, E, V)


def pat_of_class_brute(Ks, X: ColorSet, spec, budget: int = DEFAULT_COLORING_BUDGET,
                       cap: int = DEFAULT_CAP) -> SubgraphHandle:
    C = _cofree(spec, X, cap)
    E, V = set(), set()
    for K in Ks:
        for gamma in iter_colorings(K, X, budget):
            h = induced_hom(K, gamma, C)
            E |= set(h.edge_map.values())
            V |= set(h.vertex_map.values())
    return SubgraphHandle(C.graph, E, V)


def boundedness_violations(Gs, X: ColorSet):
    """Edges whose induced subgraph has more vertices than there are vertex colors."""
    out = []
    for i, G in enumerate(Gs):
        for e in G.edges:
            n = len(G.supp(e))
            if n > len(X.vertex_colors):
                out.append((i, e, n))
    return out


# ---------------------------------------------------------------------------
# explicit closure witnesses


@dataclass
class CovarietyWitness:
    """``G`` embedded in a homomorphic image ``P`` of a sum ``S`` of class members."""

    summands: list
    sum_graph: FGraph | None = None
    onto: Hom | None = None
    embedding: Hom | None = None


def _edge_cover(Ks, G, e, budget):
    Ge = edge_induced(G, e).graph
    need = len(G.supp(e))
    for k, K in enumerate(Ks):
        for s in K.edges:
            if len(K.supp(s)) < need:
                continue
            sub = generated_subgraph(K, [s]).graph
            for h in iter_homs(sub, Ge, edge_domains={s: [e]}, budget=budget):
                if is_surjective(h):
                    return k, sub, h
    return None


def covariety_witness(Ks, G: FGraph, budget: int = DEFAULT_HOM_BUDGET) -> Verdict:
    """Decide ``G`` in the closure of ``Ks`` under sums, images and subgraphs.

    Each edge-induced subgraph of ``G`` must be the image of a one-edge
    subgraph of some member (and each isolated vertex the image of some
    vertex).  The pieces are then glued: ``A -> S`` includes the pieces into
    a sum of members, ``A -> G`` maps them onto ``G``, and the pushout ``P``
    receives ``S`` surjectively and ``G`` injectively.
    """
    Ks = list(Ks)
    if not G.edges and not G.vertices:
        return Verdict(True, CovarietyWitness([]), "the empty graph is the empty sum")
    pieces = []  # (member index, piece graph, hom piece -> G)
    for e in G.edges:
        found = _edge_cover(Ks, G, e, budget)
        if found is None:
            return Verdict(False, ("edge", e), f"no member edge maps onto the subgraph induced by {e}")
        k, sub, h = found
        inc = generated_subgraph(G, [e]).inclusion
        pieces.append((k, sub, compose(inc, h)))
    used = set().union(*(G.supp(e) for e in G.edges)) if G.edges else set()
    for u in G.vertices:
        if u in used:
            continue
        k = next((i for i, K in enumerate(Ks) if K.vertices), None)
        if k is None:
            return Verdict(False, ("vertex", u), "no member has a vertex")
        x = Ks[k].vertices[0]
        piece = FGraph(G.spec, [x], {})
        pieces.append((k, piece, Hom(piece, G, {}, {x: u})))
    members = [Ks[k] for k, _, _ in pieces]
    S, s_inj = coproduct(members)
    A, a_inj = coproduct([p for _, p, _ in pieces])
    into_S = coproduct_mediator(A, [compose(s_inj[i], _inclusion(p, Ks[k]))
                                    for i, (k, p, _) in enumerate(pieces)])
    onto_G = coproduct_mediator(A, [h for _, _, h in pieces])
    P, (leg_S, leg_G) = pushout(into_S, onto_G)
    if not (is_surjective(leg_S) and is_injective(leg_G)):
        return Verdict(False, None, "gluing failed")
    return Verdict(True, CovarietyWitness(members, S, leg_S, leg_G))


def _inclusion(piece: FGraph, K: FGraph) -> Hom:
    return Hom(piece, K, {e: e for e in piece.edges}, {v: v for v in piece.vertices})


def quasi_witness(Ks, G: FGraph, budget: int = DEFAULT_HOM_BUDGET) -> Verdict:
    """Decide ``G`` in the closure under sums and images: homs from members must cover ``G``."""
    homs, E, V = [], set(), set()
    for K in Ks:
        for phi in iter_homs(K, G, budget=budget):
            new_E = set(phi.edge_map.values()) - E
            new_V = set(phi.vertex_map.values()) - V
            if new_E or new_V:
                homs.append(phi)
                E |= new_E
                V |= new_V
    if E != set(G.edges) or V != set(G.vertices):
        missing = sorted(set(G.edges) - E) + sorted(set(G.vertices) - V)
        return Verdict(False, missing, "homomorphic images of members do not cover the graph")
    if not homs:
        return Verdict(True, CovarietyWitness([]), "the empty graph is the empty sum")
    S, _ = coproduct([h.source for h in homs])
    onto = coproduct_mediator(S, homs)
    if not is_surjective(onto):
        return Verdict(False, None, "mediating map is not onto")
    return Verdict(True, CovarietyWitness([h.source for h in homs], S, onto, None))


def images_cover(Ks, G: FGraph, budget: int = DEFAULT_HOM_BUDGET) -> ConditionalPattern:
    """Conditional pattern over ``G``: the union of images of homs from the members."""
    E, V = set(), set()
    for K in Ks:
        for phi in iter_homs(K, G, budget=budget):
            E |= set(phi.edge_map.values())
            V |= set(phi.vertex_map.values())
    return ConditionalPattern(G, E, V)


# ---------------------------------------------------------------------------
# audits


@dataclass
class AuditRow:
    index: int
    lhs: bool
    rhs: bool
    lhs_reason: str = ""
    rhs_reason: str = ""

    @property
    def agree(self):
        return self.lhs == self.rhs


@dataclass
class AuditReport:
    mode: str
    rows: list
    warnings: list = field(default_factory=list)

    @property
    def all_agree(self):
        return all(r.agree for r in self.rows)

    @property
    def members(self):
        return [r.index for r in self.rows if r.lhs and r.rhs]


MODES = ("covariety", "quasi", "complete")


def closure_audit(Ks, universe, X: ColorSet, mode: str = "covariety", spec=None,
                  coloring_budget: int = DEFAULT_COLORING_BUDGET,
                  hom_budget: int = DEFAULT_HOM_BUDGET, cap: int = DEFAULT_CAP) -> AuditReport:
    """Compare explicit closure membership with the pattern-side characterization.

    covariety: sums, images, subgraphs  vs  patterns over ``C(X)``.
    quasi:     sums, images             vs  conditional patterns (host = the probe).
    complete:  also preimages           vs  patterns over the terminal graph.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    Ks, universe = list(Ks), list(universe)
    if spec is None:
        spec = (Ks or universe)[0].spec
    warnings = []
    rows = []
    if mode == "covariety":
        bad = boundedness_violations(Ks + universe, X)
        if bad:
            warnings.append(f"{len(bad)} edge(s) exceed the {len(X.vertex_colors)} vertex colors; "
                            "pattern side may admit extra graphs")
        _, P = pat_of_class(Ks, X, spec, coloring_budget, cap)
        for i, G in enumerate(universe):
            lhs = covariety_witness(Ks, G, hom_budget)
            rhs = satisfies_pattern(G, P, coloring_budget, cap)
            rows.append(AuditRow(i, lhs.ok, rhs.ok, lhs.reason, rhs.reason))
    elif mode == "quasi":
        for i, G in enumerate(universe):
            lhs = quasi_witness(Ks, G, hom_budget)
            R = images_cover(Ks, G, hom_budget)
            rhs = satisfies_conditional(G, R, hom_budget)
            rows.append(AuditRow(i, lhs.ok, rhs.ok, lhs.reason, rhs.reason))
    else:
        T = terminal_graph(spec, cap)
        E, V = set(), set()
        for K in Ks:
            t = to_terminal(K, T)
            E |= set(t.edge_map.values())
            V |= set(t.vertex_map.values())
        Xt = ColorSet(["*"], ["*"])
        Ct = _cofree(spec, Xt, cap)
        assert Ct.graph == T
        P = Pattern(Xt, E, V)
        for i, G in enumerate(universe):
            M, _ = minimize(G)
            lhs = covariety_witness(Ks, M, hom_budget)
            rhs = satisfies_pattern(G, P, coloring_budget, cap)
            rows.append(AuditRow(i, lhs.ok, rhs.ok, lhs.reason, rhs.reason))
    return AuditReport(mode, rows, warnings)


def find_quotient_in(Ks, G: FGraph, budget: int = DEFAULT_HOM_BUDGET):
    """Search every congruence of ``G`` for a quotient in the sum/image/subgraph closure."""
    from .graph import EquivPair, Partition, is_congruence, quotient

    def partitions(xs):
        if not xs:
            yield []
            return
        first, rest = xs[0], xs[1:]
        for p in partitions(rest):
            for i in range(len(p)):
                yield p[:i] + [[first] + p[i]] + p[i + 1:]
            yield [[first]] + p

    for pv in partitions(list(G.vertices)):
        for pe in partitions(list(G.edges)):
            theta = EquivPair(Partition(pe), Partition(pv))
            if is_congruence(G, theta):
                Q, pi = quotient(G, theta)
                if covariety_witness(Ks, Q, budget):
                    return pi
    return None

