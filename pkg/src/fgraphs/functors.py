"""Finite set-endofunctors and their values.

A functor value is an immutable tree whose leaves are vertex atoms.  Every
functor shipped here is *standard*: it preserves inclusions, so a value lives
in ``F(U)`` exactly when its support is contained in ``U``.

Element ids are strings.  All sets are kept as tuples sorted by
:func:`natkey`, so ``v2`` sorts before ``v10`` and iteration is deterministic.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Union

from .errors import EnumerationCapExceeded, MalformedValue

DEFAULT_CAP = 1_000_000

_DIGITS = re.compile(r"(\d+)")


def natkey(s: str):
    parts = _DIGITS.split(s)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts)), s


def fset(items: Iterable[str]) -> tuple:
    """Canonical finite set: deduplicated, sorted by :func:`natkey`."""
    return tuple(sorted(set(items), key=natkey))


# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class Atom:
    id: str

    def __repr__(self):
        return f"Atom({self.id!r})"


@dataclass(frozen=True)
class Pt:
    """Leaf of a colored functor's inner value: a (vertex, vertex color) pair."""

    base: "Leaf"
    color: str


@dataclass(frozen=True)
class Tup:
    items: tuple

    def __hash__(self):
        # cached: values are hashed constantly during hom search
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(("Tup", self.items))
            object.__setattr__(self, "_hash", h)
        return h


@dataclass(frozen=True)
class SetOf:
    items: tuple

    def __hash__(self):
        # cached: values are hashed constantly during hom search
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(("SetOf", self.items))
            object.__setattr__(self, "_hash", h)
        return h

    @classmethod
    def of(cls, items):
        return cls(canon_items(items))


@dataclass(frozen=True)
class Tagged:
    part: int
    inner: "Value"


@dataclass(frozen=True)
class Colored:
    color: str
    inner: "Value"


Leaf = Union[Atom, Pt]
Value = Union[Atom, Pt, Tup, SetOf, Tagged, Colored]


def value_key(w):
    if isinstance(w, Atom):
        return (0, natkey(w.id))
    if isinstance(w, Pt):
        return (1, value_key(w.base), natkey(w.color))
    if isinstance(w, Tup):
        return (2, len(w.items), tuple(value_key(x) for x in w.items))
    if isinstance(w, SetOf):
        return (3, len(w.items), tuple(value_key(x) for x in w.items))
    if isinstance(w, Tagged):
        return (4, w.part, value_key(w.inner))
    if isinstance(w, Colored):
        return (5, natkey(w.color), value_key(w.inner))
    raise MalformedValue(f"not a functor value: {w!r}")


def canon_items(items) -> tuple:
    return tuple(sorted(set(items), key=value_key))


def canonicalize(w):
    """Re-sort and deduplicate every SetOf node (idempotent on canonical input)."""
    if isinstance(w, (Atom, Pt)):
        return w
    if isinstance(w, Tup):
        return Tup(tuple(canonicalize(x) for x in w.items))
    if isinstance(w, SetOf):
        return SetOf(canon_items(canonicalize(x) for x in w.items))
    if isinstance(w, Tagged):
        return Tagged(w.part, canonicalize(w.inner))
    if isinstance(w, Colored):
        return Colored(w.color, canonicalize(w.inner))
    raise MalformedValue(f"not a functor value: {w!r}")


def value_str(w) -> str:
    """Compact text form, used to name derived elements such as ``(1|{r,g})``."""
    if isinstance(w, Atom):
        return w.id
    if isinstance(w, Pt):
        return f"({value_str(w.base)},{w.color})"
    if isinstance(w, Tup):
        return "(" + ",".join(value_str(x) for x in w.items) + ")"
    if isinstance(w, SetOf):
        return "{" + ",".join(value_str(x) for x in w.items) + "}"
    if isinstance(w, Tagged):
        return f"{w.part}:{value_str(w.inner)}"
    if isinstance(w, Colored):
        return f"{w.color}<{value_str(w.inner)}>"
    raise MalformedValue(f"not a functor value: {w!r}")


# ---------------------------------------------------------------------------
# functor specs


def _is_atom(leaf):
    return isinstance(leaf, Atom)


class FunctorSpec:
    """Base class.  Subclasses are frozen dataclasses, hence hashable."""

    kind = "abstract"

    def enum(self, leaves: tuple) -> list:
        raise NotImplementedError

    def count(self, n: int) -> int:
        raise NotImplementedError

    def fmap(self, w, f: Callable):
        raise NotImplementedError

    def leaves(self, w) -> Iterable:
        raise NotImplementedError

    def check(self, w, leaf_ok: Callable) -> bool:
        raise NotImplementedError

    weakly_preserves_kernels = True

    def to_json(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class Identity(FunctorSpec):
    kind = "identity"

    def enum(self, leaves):
        return list(leaves)

    def count(self, n):
        return n

    def fmap(self, w, f):
        return f(w)

    def leaves(self, w):
        return (w,)

    def check(self, w, leaf_ok):
        return leaf_ok(w)


@dataclass(frozen=True)
class UPair(FunctorSpec):
    kind = "upair"

    def enum(self, leaves):
        out = [SetOf((x,)) for x in leaves]
        out += [SetOf.of(p) for p in itertools.combinations(leaves, 2)]
        return out

    def count(self, n):
        return n + n * (n - 1) // 2

    def fmap(self, w, f):
        return SetOf.of(f(x) for x in w.items)

    def leaves(self, w):
        return w.items

    def check(self, w, leaf_ok):
        return (isinstance(w, SetOf) and 1 <= len(w.items) <= 2
                and w.items == canon_items(w.items)
                and all(leaf_ok(x) for x in w.items))


@dataclass(frozen=True)
class DPair(FunctorSpec):
    kind = "dpair"

    def enum(self, leaves):
        return [Tup(p) for p in itertools.product(leaves, repeat=2)]

    def count(self, n):
        return n * n

    def fmap(self, w, f):
        return Tup(tuple(f(x) for x in w.items))

    def leaves(self, w):
        return w.items

    def check(self, w, leaf_ok):
        return (isinstance(w, Tup) and len(w.items) == 2
                and all(leaf_ok(x) for x in w.items))


@dataclass(frozen=True)
class FinPowerset(FunctorSpec):
    kind = "powerset"

    def enum(self, leaves):
        out = []
        for r in range(len(leaves) + 1):
            out += [SetOf.of(c) for c in itertools.combinations(leaves, r)]
        return out

    def count(self, n):
        return 2 ** n

    def fmap(self, w, f):
        return SetOf.of(f(x) for x in w.items)

    def leaves(self, w):
        return w.items

    def check(self, w, leaf_ok):
        return (isinstance(w, SetOf) and w.items == canon_items(w.items)
                and all(leaf_ok(x) for x in w.items))


@dataclass(frozen=True)
class DirectedHyper(FunctorSpec):
    """``V x P(V)``: a head vertex together with a set of vertices."""

    kind = "directed_hyper"

    def enum(self, leaves):
        sets = FinPowerset().enum(leaves)
        return [Tup((v, s)) for v in leaves for s in sets]

    def count(self, n):
        return n * 2 ** n

    def fmap(self, w, f):
        head, rest = w.items
        return Tup((f(head), SetOf.of(f(x) for x in rest.items)))

    def leaves(self, w):
        head, rest = w.items
        return (head,) + rest.items

    def check(self, w, leaf_ok):
        if not (isinstance(w, Tup) and len(w.items) == 2):
            return False
        head, rest = w.items
        return leaf_ok(head) and FinPowerset().check(rest, leaf_ok)


def _count_bounded_multiplicity(n, k, maxmult):
    """Number of k-tuples over n symbols where no symbol occurs more than maxmult times."""
    series = [Fraction(1, math.factorial(j)) for j in range(maxmult + 1)]
    poly = [Fraction(1)]
    for _ in range(n):
        nxt = [Fraction(0)] * min(len(poly) + maxmult, k + 1)
        for i, a in enumerate(poly):
            for j, b in enumerate(series):
                if i + j <= k:
                    nxt[i + j] += a * b
        poly = nxt
    coeff = poly[k] if k < len(poly) else Fraction(0)
    return int(coeff * math.factorial(k))


@dataclass(frozen=True)
class KTuple(FunctorSpec):
    """k-tuples; with ``min_equal >= 2`` some component must repeat that often."""

    k: int = 2
    min_equal: int = 0
    kind = "ktuple"

    def __post_init__(self):
        if self.k < 1 or self.min_equal < 0:
            raise ValueError(f"bad KTuple parameters k={self.k} min_equal={self.min_equal}")

    def _ok_shape(self, items):
        if self.min_equal <= 1:
            return True
        counts = {}
        for x in items:
            counts[x] = counts.get(x, 0) + 1
        return max(counts.values(), default=0) >= self.min_equal

    def enum(self, leaves):
        return [Tup(p) for p in itertools.product(leaves, repeat=self.k) if self._ok_shape(p)]

    def count(self, n):
        if self.min_equal <= 1:
            return n ** self.k
        return n ** self.k - _count_bounded_multiplicity(n, self.k, self.min_equal - 1)

    def fmap(self, w, f):
        return Tup(tuple(f(x) for x in w.items))

    def leaves(self, w):
        return w.items

    def check(self, w, leaf_ok):
        return (isinstance(w, Tup) and len(w.items) == self.k
                and all(leaf_ok(x) for x in w.items) and self._ok_shape(w.items))

    @property
    def weakly_preserves_kernels(self):
        return self.min_equal < 2

    def to_json(self):
        return {"kind": self.kind, "k": self.k, "min_equal": self.min_equal}


@dataclass(frozen=True)
class ColoredSpec(FunctorSpec):
    """``X_E x F(V x X_V)``: edge colors outside, vertex colors paired with leaves."""

    edge_colors: tuple = ()
    vertex_colors: tuple = ()
    inner: FunctorSpec = UPair()
    kind = "colored"

    def __post_init__(self):
        object.__setattr__(self, "edge_colors", fset(self.edge_colors))
        object.__setattr__(self, "vertex_colors", fset(self.vertex_colors))

    def enum(self, leaves):
        pts = tuple(Pt(x, c) for x in leaves for c in self.vertex_colors)
        pts = tuple(sorted(pts, key=value_key))
        inner = self.inner.enum(pts)
        return [Colored(c, w) for c in self.edge_colors for w in inner]

    def count(self, n):
        return len(self.edge_colors) * self.inner.count(n * len(self.vertex_colors))

    def fmap(self, w, f):
        return Colored(w.color, self.inner.fmap(w.inner, lambda p: Pt(f(p.base), p.color)))

    def leaves(self, w):
        return tuple(p.base for p in self.inner.leaves(w.inner))

    def check(self, w, leaf_ok):
        if not (isinstance(w, Colored) and w.color in self.edge_colors):
            return False

        def pt_ok(p):
            return isinstance(p, Pt) and p.color in self.vertex_colors and leaf_ok(p.base)

        return self.inner.check(w.inner, pt_ok)

    @property
    def weakly_preserves_kernels(self):
        return self.inner.weakly_preserves_kernels

    def to_json(self):
        return {"kind": self.kind, "edge_colors": list(self.edge_colors),
                "vertex_colors": list(self.vertex_colors), "inner": self.inner.to_json()}


@dataclass(frozen=True)
class Sum(FunctorSpec):
    parts: tuple = ()
    kind = "sum"

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def enum(self, leaves):
        return [Tagged(i, w) for i, p in enumerate(self.parts) for w in p.enum(leaves)]

    def count(self, n):
        return sum(p.count(n) for p in self.parts)

    def fmap(self, w, f):
        return Tagged(w.part, self.parts[w.part].fmap(w.inner, f))

    def leaves(self, w):
        return self.parts[w.part].leaves(w.inner)

    def check(self, w, leaf_ok):
        return (isinstance(w, Tagged) and 0 <= w.part < len(self.parts)
                and self.parts[w.part].check(w.inner, leaf_ok))

    @property
    def weakly_preserves_kernels(self):
        return all(p.weakly_preserves_kernels for p in self.parts)

    def to_json(self):
        return {"kind": self.kind, "parts": [p.to_json() for p in self.parts]}


# ---------------------------------------------------------------------------
# the operations


@lru_cache(maxsize=4096)
def _enumerate_cached(spec, V):
    vals = spec.enum(tuple(Atom(v) for v in V))
    return tuple(sorted(vals, key=value_key))


def count_values(spec: FunctorSpec, n: int) -> int:
    return spec.count(n)


def enumerate_values(spec: FunctorSpec, V: Iterable[str], cap: int = DEFAULT_CAP) -> tuple:
    """All of ``F(V)`` in canonical order."""
    V = fset(V)
    n = spec.count(len(V))
    if n > cap:
        raise EnumerationCapExceeded(f"F(V) for {spec.kind} over {len(V)} elements", n, cap)
    return _enumerate_cached(spec, V)


def _as_fn(f) -> Callable[[str], str]:
    if isinstance(f, Mapping):
        return f.__getitem__
    return f


def map_value(spec: FunctorSpec, f, w):
    """``F(f)(w)``: apply the vertex map ``f`` at every atom and re-canonicalize."""
    if not spec.check(w, _is_atom):
        raise MalformedValue(f"{w!r} is not a {spec.kind} value")
    fn = _as_fn(f)
    try:
        return spec.fmap(w, lambda a: Atom(fn(a.id)))
    except KeyError as exc:
        raise MalformedValue(f"vertex map undefined at {exc.args[0]!r}") from None


_ATOMS: dict = {}


def _atom(i: str) -> Atom:
    a = _ATOMS.get(i)
    if a is None:
        a = _ATOMS[i] = Atom(i)
    return a


def fmap_fast(spec: FunctorSpec, f: Mapping, w):
    """Unchecked :func:`map_value` for hot loops (``f`` must be total on the support)."""
    return spec.fmap(w, lambda a: _atom(f[a.id]))


def support(spec: FunctorSpec, w) -> tuple:
    if not spec.check(w, _is_atom):
        raise MalformedValue(f"{w!r} is not a {spec.kind} value")
    return fset(a.id for a in spec.leaves(w))


def support_fast(spec: FunctorSpec, w) -> frozenset:
    return frozenset(a.id for a in spec.leaves(w))


def is_value(spec: FunctorSpec, w, V=None) -> bool:
    """Grammar check; with ``V`` given, atoms must also lie in ``V``."""
    if V is None:
        return spec.check(w, _is_atom)
    V = set(V)
    return spec.check(w, lambda a: isinstance(a, Atom) and a.id in V)


def value_in_subset(spec: FunctorSpec, w, V_sub: Iterable[str]) -> bool:
    return set(support(spec, w)) <= set(V_sub)


# ---------------------------------------------------------------------------
# JSON


def spec_from_json(obj) -> FunctorSpec:
    kind = obj["kind"]
    if kind == "identity":
        return Identity()
    if kind == "upair":
        return UPair()
    if kind == "dpair":
        return DPair()
    if kind == "powerset":
        return FinPowerset()
    if kind == "directed_hyper":
        return DirectedHyper()
    if kind == "ktuple":
        return KTuple(int(obj["k"]), int(obj.get("min_equal", 0)))
    if kind == "colored":
        return ColoredSpec(tuple(str(c) for c in obj["edge_colors"]),
                           tuple(str(c) for c in obj["vertex_colors"]),
                           spec_from_json(obj["inner"]))
    if kind == "sum":
        return Sum(tuple(spec_from_json(p) for p in obj["parts"]))
    raise MalformedValue(f"unknown functor kind {kind!r}")


def value_to_json(w):
    if isinstance(w, Atom):
        return w.id
    if isinstance(w, Pt):
        return [value_to_json(w.base), w.color]
    if isinstance(w, Tup):
        return [value_to_json(x) for x in w.items]
    if isinstance(w, SetOf):
        return {"set": [value_to_json(x) for x in w.items]}
    if isinstance(w, Tagged):
        return {"part": w.part, "value": value_to_json(w.inner)}
    if isinstance(w, Colored):
        return {"color": w.color, "value": value_to_json(w.inner)}
    raise MalformedValue(f"not a functor value: {w!r}")


def _atom_leaf(obj):
    if isinstance(obj, (str, int)) and not isinstance(obj, bool):
        return Atom(str(obj))
    raise MalformedValue(f"expected an element id, got {obj!r}")


def _parse(spec, obj, leaf):
    try:
        if isinstance(spec, Identity):
            return leaf(obj)
        if isinstance(spec, (UPair, FinPowerset)):
            return SetOf.of(leaf(x) for x in obj["set"])
        if isinstance(spec, (DPair, KTuple)):
            if not isinstance(obj, list):
                raise MalformedValue(f"expected a tuple, got {obj!r}")
            return Tup(tuple(leaf(x) for x in obj))
        if isinstance(spec, DirectedHyper):
            head, rest = obj
            return Tup((leaf(head), SetOf.of(leaf(x) for x in rest["set"])))
        if isinstance(spec, ColoredSpec):
            def pt(o):
                base, color = o
                return Pt(leaf(base), str(color))
            return Colored(str(obj["color"]), _parse(spec.inner, obj["value"], pt))
        if isinstance(spec, Sum):
            part = int(obj["part"])
            return Tagged(part, _parse(spec.parts[part], obj["value"], leaf))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise MalformedValue(f"cannot read {obj!r} as a {spec.kind} value: {exc}") from None
    raise MalformedValue(f"unsupported spec {spec!r}")


def value_from_json(spec: FunctorSpec, obj):
    w = _parse(spec, obj, _atom_leaf)
    if not spec.check(w, _is_atom):
        raise MalformedValue(f"{obj!r} is not a valid {spec.kind} value")
    return w
