"""Graph transformations: retyping along natural transformations, simplification,
minimization, orientation lifting and conjunct decomposition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .errors import MalformedValue, NotAnOrientation, SpecMismatch
from .functors import (Atom, Colored, ColoredSpec, DirectedHyper, DPair, FinPowerset,
                       FunctorSpec, Pt, SetOf, Tup, UPair, enumerate_values,
                       fmap_fast, fset, is_value, natkey, value_str)
from .graph import FGraph, Hom, Verdict, kernel, quotient
from .limits import generated_subgraph, subgraph_lattice, terminal_graph, to_terminal


@dataclass(frozen=True)
class NaturalTransformation:
    """A family of maps ``F1(V) -> F2(V)``; ``component(V, w)`` evaluates one of them."""

    name: str
    source_spec: FunctorSpec
    target_spec: FunctorSpec
    component: Callable


def identity_transformation(spec: FunctorSpec) -> NaturalTransformation:
    return NaturalTransformation("identity", spec, spec, lambda V, w: w)


def deorient() -> NaturalTransformation:
    """``(v1, v2) -> {v1, v2}``."""
    return NaturalTransformation("deorient", DPair(), UPair(), lambda V, w: SetOf.of(w.items))


def uncolor(spec: ColoredSpec) -> NaturalTransformation:
    """Forget edge colors and the vertex colors attached to the leaves."""
    inner = spec.inner

    def comp(V, w):
        return inner.fmap(w.inner, lambda p: p.base)

    return NaturalTransformation("uncolor", spec, inner, comp)


def underlying_hyper() -> NaturalTransformation:
    """``(v, S) -> {v} | S``."""

    def comp(V, w):
        head, rest = w.items
        return SetOf.of((head,) + rest.items)

    return NaturalTransformation("underlying-hyper", DirectedHyper(), FinPowerset(), comp)


def _maps(A, B):
    for images in itertools.product(B, repeat=len(A)):
        yield dict(zip(A, images))


def check_naturality(tau: NaturalTransformation, size_bound: int = 3) -> Verdict:
    """Test every map between sets of size up to ``size_bound``; witness is ``(f, w)``."""
    F1, F2 = tau.source_spec, tau.target_spec
    for n1 in range(size_bound + 1):
        V1 = [f"a{i}" for i in range(1, n1 + 1)]
        values = enumerate_values(F1, V1)
        for n2 in range(size_bound + 1):
            V2 = [f"b{i}" for i in range(1, n2 + 1)]
            for f in _maps(V1, V2):
                for w in values:
                    lhs = tau.component(fset(V2), fmap_fast(F1, f, w))
                    rhs = fmap_fast(F2, f, tau.component(fset(V1), w))
                    if lhs != rhs:
                        return Verdict(False, (f, w), "naturality square fails")
    return Verdict(True)


def apply_transformation(tau: NaturalTransformation, G: FGraph) -> FGraph:
    """Same carriers, structure map composed with the component at ``V``."""
    if G.spec != tau.source_spec:
        raise SpecMismatch(f"graph is typed by {G.spec.kind}, transformation expects "
                           f"{tau.source_spec.kind}")
    g = {}
    for e in G.edges:
        w = tau.component(G.vertices, G.g[e])
        if not is_value(tau.target_spec, w, G.vertices):
            raise MalformedValue(f"component produced {w!r} for edge {e}")
        g[e] = w
    return FGraph(tau.target_spec, G.vertices, g)


def retype_hom(tau: NaturalTransformation, phi: Hom) -> Hom:
    return Hom(apply_transformation(tau, phi.source), apply_transformation(tau, phi.target),
               phi.edge_map, phi.vertex_map)


def lift_graph(tau: NaturalTransformation, G: FGraph) -> FGraph | None:
    """A source-typed graph mapped onto ``G`` by ``tau``, or None if some edge has no preimage."""
    g = {}
    for e in G.edges:
        supp = fset(G.supp(e))
        found = None
        for w in enumerate_values(tau.source_spec, supp):
            if tau.component(G.vertices, w) == G.g[e]:
                found = w
                break
        if found is None:
            return None
        g[e] = found
    return FGraph(tau.source_spec, G.vertices, g)


def _leaf_to_atom(x):
    return x if isinstance(x, Atom) else Atom(value_str(x))


def apply_general_transformation(T_E: FunctorSpec, T_V: FunctorSpec, tau: Callable,
                                 target_spec: FunctorSpec, G: FGraph) -> FGraph:
    """``(T_E E, T_V V, tau o T_E(g))`` for ``tau: T_E . F1 => F2 . T_V``.

    ``tau(V, x)`` receives a ``T_E`` value whose leaves are ``F1`` values and
    returns an ``F2`` value whose leaves are ``T_V`` values.  New elements are
    named by the text form of those values.
    """
    new_E = enumerate_values(T_E, G.edges)
    new_V = [value_str(x) for x in enumerate_values(T_V, G.vertices)]
    g = {}
    for x in new_E:
        lifted = T_E.fmap(x, lambda a: G.g[a.id])
        w = tau(G.vertices, lifted)
        g[value_str(x)] = target_spec.fmap(w, _leaf_to_atom)
    H = FGraph(target_spec, new_V, g)
    for e in H.edges:
        if not is_value(target_spec, H.g[e], H.vertices):
            raise MalformedValue(f"transformation produced an invalid value for {e}")
    return H


def color_graph(G: FGraph, gamma_E: dict, gamma_V: dict, edge_colors, vertex_colors) -> FGraph:
    """Attach a coloring to a graph, producing a graph over the colored functor.

    Only a constructor: it is not functorial in ``G``.
    """
    spec = ColoredSpec(tuple(edge_colors), tuple(vertex_colors), G.spec)
    g = {e: Colored(gamma_E[e], G.spec.fmap(G.g[e], lambda a: Pt(a, gamma_V[a.id])))
         for e in G.edges}
    return FGraph(spec, G.vertices, g)


# ---------------------------------------------------------------------------
# simplification and minimization


def simplify(G: FGraph):
    """Edges become the distinct structure values; returns (simple graph, surjection)."""
    g = {value_str(w): w for w in G.g.values()}
    S = FGraph(G.spec, G.vertices, g)
    return S, Hom(G, S, {e: value_str(G.g[e]) for e in G.edges}, {v: v for v in G.vertices})


def simplify_hom(phi: Hom) -> Hom:
    S1, _ = simplify(phi.source)
    S2, _ = simplify(phi.target)
    em = {value_str(w): value_str(fmap_fast(S1.spec, phi.vertex_map, w)) for w in phi.source.g.values()}
    return Hom(S1, S2, em, phi.vertex_map)


def minimize(G: FGraph):
    """Quotient by the kernel of the unique map to the terminal graph."""
    t = to_terminal(G, terminal_graph(G.spec))
    return quotient(G, kernel(t))


# ---------------------------------------------------------------------------
# orientations


def _check_orientation(G, omega):
    if set(omega) != set(G.edges):
        raise NotAnOrientation("orientation must be defined on every edge")
    for e in G.edges:
        if omega[e] not in G.supp(e):
            raise NotAnOrientation(f"{omega[e]!r} is not a vertex of edge {e}")


def lift_orientation(phi: Hom, omega2: dict) -> dict:
    """Orientation of the source compatible with ``omega2`` (order-minimal choice)."""
    _check_orientation(phi.target, omega2)
    G1 = phi.source
    omega1 = {}
    for e in G1.edges:
        want = omega2[phi.edge_map[e]]
        cands = [v for v in G1.supp(e) if phi.vertex_map[v] == want]
        if not cands:
            raise NotAnOrientation(f"edge {e} has no endpoint over {want!r}; phi is not a homomorphism")
        omega1[e] = min(cands, key=natkey)
    return omega1


def orient(G: FGraph, omega: dict) -> FGraph:
    """The directed hypergraph ``e -> (omega(e), g(e))``."""
    _check_orientation(G, omega)
    g = {e: Tup((Atom(omega[e]), SetOf.of(Atom(v) for v in G.supp(e)))) for e in G.edges}
    return FGraph(DirectedHyper(), G.vertices, g)


# ---------------------------------------------------------------------------
# conjunct decomposition


def is_one_generated(G: FGraph) -> bool:
    """Some edge lies in no proper subgraph."""
    for e in G.edges:
        h = generated_subgraph(G, [e])
        if len(h.edges) == len(G.edges) and len(h.vertices) == len(G.vertices):
            return True
    return False


def is_conjunctly_irreducible(G: FGraph) -> bool:
    return is_one_generated(G)


def is_conjunctly_irreducible_brute(G: FGraph, cap: int = 100_000) -> bool:
    """Oracle: irreducible iff the proper subgraphs cannot jointly cover every edge."""
    top = (frozenset(G.edges), frozenset(G.vertices))
    covered = set()
    for h in subgraph_lattice(G, cap):
        if h.carrier() != top:
            covered |= set(h.edges)
    return bool(G.edges) and covered != set(G.edges)


@dataclass
class ConjunctDecomposition:
    parts: list
    one_generated: list
    isolated: tuple


def conjunct_decomposition(G: FGraph) -> ConjunctDecomposition:
    parts = [generated_subgraph(G, [e]) for e in G.edges]
    used = set().union(*(h.vertices for h in parts)) if parts else set()
    isolated = fset(v for v in G.vertices if v not in used)
    return ConjunctDecomposition(parts, [is_one_generated(h.graph) for h in parts], isolated)
