"""Small named graphs used in examples, tests and the CLI."""

from __future__ import annotations

from .functors import Atom, KTuple, SetOf, Tup, UPair
from .graph import FGraph, Hom


def uedge(*vs):
    return SetOf.of(Atom(v) for v in vs)


def tup(*vs):
    return Tup(tuple(Atom(v) for v in vs))


def path(n: int, spec=None) -> FGraph:
    """Undirected path ``v1 - e1 - v2 - ... - v{n+1}`` with ``n`` edges."""
    spec = spec or UPair()
    return FGraph(spec, [f"v{i}" for i in range(1, n + 2)],
                  {f"e{i}": uedge(f"v{i}", f"v{i + 1}") for i in range(1, n + 1)})


def cycle(n: int, prefix: str = "") -> FGraph:
    """Undirected cycle with edges ``e_i = {v_i, v_(i+1)}``, indices mod ``n``."""
    vs = [f"{prefix}v{i}" for i in range(1, n + 1)]
    return FGraph(UPair(), vs, {f"{prefix}e{i}": uedge(vs[i - 1], vs[i % n]) for i in range(1, n + 1)})


def c4_to_k3():
    """The square folded onto a triangle: ``e1, e4 -> f1``, ``e2, e3 -> f2``, ``v4 -> w2``."""
    C4 = cycle(4)
    K3 = FGraph(UPair(), ["w1", "w2", "w3"],
                {"f1": uedge("w1", "w2"), "f2": uedge("w2", "w3"), "f3": uedge("w3", "w1")})
    phi = Hom(C4, K3, {"e1": "f1", "e2": "f2", "e3": "f2", "e4": "f1"},
              {"v1": "w1", "v2": "w2", "v3": "w3", "v4": "w2"})
    return C4, K3, phi


def ktuple_unrelated_pair():
    """Two single-edge (3,2)-tuple graphs whose edges are not related."""
    spec = KTuple(3, 2)
    G1 = FGraph(spec, ["v1", "v2"], {"e": tup("v1", "v1", "v2")})
    G2 = FGraph(spec, ["w1", "w2"], {"f": tup("w1", "w2", "w2")})
    return G1, G2
