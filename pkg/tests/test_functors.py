import itertools
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fgraphs.errors import EnumerationCapExceeded, MalformedValue
from fgraphs.functors import (Atom, Colored, ColoredSpec, DirectedHyper, DPair, FinPowerset,
                              Identity, KTuple, Pt, SetOf, Sum, Tagged, Tup, UPair,
                              canonicalize, count_values, enumerate_values, is_value, map_value,
                              natkey, spec_from_json, support, value_from_json, value_in_subset,
                              value_str, value_to_json)

ALL_SPECS = [Identity(), UPair(), DPair(), FinPowerset(), DirectedHyper(), KTuple(3),
             KTuple(3, 2), KTuple(2, 2), ColoredSpec(("a", "b"), ("r",), UPair()),
             Sum((UPair(), DPair()))]


def A(*xs):
    return tuple(Atom(x) for x in xs)


def test_natkey_orders_numbers_numerically():
    assert sorted(["v10", "v2", "v1"], key=natkey) == ["v1", "v2", "v10"]


def test_upair_enumeration_matches_listing():
    assert enumerate_values(UPair(), ["v1", "v2"]) == (
        SetOf(A("v1")), SetOf(A("v2")), SetOf(A("v1", "v2")))


def test_dpair_over_empty_set_is_empty():
    assert enumerate_values(DPair(), []) == ()


def test_ktuple_3_2_over_two_symbols_keeps_all_eight():
    # oracle: filter the 2^3 tuples by "some symbol occurs at least twice"
    brute = [t for t in itertools.product("ab", repeat=3) if max(Counter(t).values()) >= 2]
    assert len(brute) == 8
    assert len(enumerate_values(KTuple(3, 2), ["a", "b"])) == 8


@pytest.mark.parametrize("k,m", [(3, 2), (3, 3), (4, 2), (4, 3), (2, 2)])
@pytest.mark.parametrize("n", range(0, 5))
def test_ktuple_count_formula_matches_filter(k, m, n):
    syms = [str(i) for i in range(n)]
    brute = sum(1 for t in itertools.product(syms, repeat=k)
                if t and max(Counter(t).values()) >= m)
    assert count_values(KTuple(k, m), n) == brute
    assert len(enumerate_values(KTuple(k, m), syms)) == brute


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind)
@pytest.mark.parametrize("n", range(0, 4))
def test_enumeration_is_duplicate_free_and_counted(spec, n):
    V = [f"v{i}" for i in range(n)]
    vals = enumerate_values(spec, V)
    assert len(vals) == len(set(vals)) == count_values(spec, n)
    assert all(is_value(spec, w, V) for w in vals)


def test_upair_count_oracle():
    for n in range(6):
        subsets = [c for r in (1, 2) for c in itertools.combinations(range(n), r)]
        assert count_values(UPair(), n) == len(subsets)


def test_enumeration_cap():
    with pytest.raises(EnumerationCapExceeded):
        enumerate_values(FinPowerset(), [f"v{i}" for i in range(12)], cap=1000)


def test_map_value_examples():
    assert map_value(UPair(), {"v": "x", "w": "x"}, SetOf(A("v", "w"))) == SetOf(A("x"))
    assert map_value(DPair(), lambda a: a, Tup(A("v1", "v2"))) == Tup(A("v1", "v2"))
    # oracle: elementwise image then dedup
    f = {"a": "1", "b": "1", "c": "2"}
    img = sorted({f[x] for x in "abc"})
    assert map_value(FinPowerset(), f, SetOf(A("a", "b", "c"))) == SetOf(A(*img))


def test_map_value_rejects_partial_maps_and_bad_values():
    with pytest.raises(MalformedValue):
        map_value(UPair(), {"v": "x"}, SetOf(A("v", "w")))
    with pytest.raises(MalformedValue):
        map_value(UPair(), {}, Tup(A("v")))


def test_support_examples():
    assert support(UPair(), SetOf(A("v1", "v2"))) == ("v1", "v2")
    assert support(FinPowerset(), SetOf(())) == ()
    w = Colored("red", SetOf((Pt(Atom("v"), "blue"),)))
    spec = ColoredSpec(("red",), ("blue",), UPair())
    assert support(spec, w) == ("v",)


def test_value_in_subset_examples():
    assert value_in_subset(UPair(), SetOf(A("v1", "v2")), ["v1", "v2", "v3"])
    assert not value_in_subset(UPair(), SetOf(A("v1", "v3")), ["v1", "v2"])
    empty = SetOf(())
    assert value_in_subset(FinPowerset(), empty, [])
    assert empty in enumerate_values(FinPowerset(), [])


def test_grammar_checks():
    assert not is_value(UPair(), SetOf(A("a", "b", "c")))
    assert not is_value(UPair(), SetOf(()))
    assert not is_value(UPair(), SetOf(A("b", "a")))  # not canonical
    assert is_value(DirectedHyper(), Tup((Atom("h"), SetOf(A("a")))))
    assert not is_value(KTuple(3, 2), Tup(A("a", "b", "c")))
    assert not is_value(Sum((UPair(),)), Tagged(1, SetOf(A("a"))))


def test_canonicalize_and_value_str():
    w = SetOf((Atom("b"), Atom("a"), Atom("a")))
    assert canonicalize(w) == SetOf(A("a", "b"))
    assert value_str(Tup((Atom("h"), SetOf(A("a", "b"))))) == "(h,{a,b})"
    assert value_str(Colored("1", SetOf((Pt(Atom("v"), "r"),)))) == "1<{(v,r)}>"
    assert value_str(Tagged(0, Atom("x"))) == "0:x"


def test_ktuple_rejects_bad_parameters():
    with pytest.raises(ValueError):
        KTuple(0)


def test_spec_json_round_trip():
    for spec in ALL_SPECS:
        assert spec_from_json(spec.to_json()) == spec
    with pytest.raises(MalformedValue):
        spec_from_json({"kind": "nope"})


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.kind)
def test_value_json_round_trip(spec):
    for w in enumerate_values(spec, ["v1", "v2"]):
        assert value_from_json(spec, value_to_json(w)) == w


def test_value_json_rejects_garbage():
    with pytest.raises(MalformedValue):
        value_from_json(UPair(), {"set": ["a", "b", "c"]})
    with pytest.raises(MalformedValue):
        value_from_json(DPair(), {"set": ["a"]})
    with pytest.raises(MalformedValue):
        value_from_json(UPair(), {"set": [True]})


def test_weak_kernel_flags():
    assert UPair().weakly_preserves_kernels and DPair().weakly_preserves_kernels
    assert KTuple(3).weakly_preserves_kernels
    assert not KTuple(3, 2).weakly_preserves_kernels
    assert not Sum((UPair(), KTuple(3, 2))).weakly_preserves_kernels


# ---------------------------------------------------------------------------
# functor laws


spec_st = st.sampled_from(ALL_SPECS)


@st.composite
def value_and_maps(draw):
    spec = draw(spec_st)
    V = ["a", "b", "c"]
    w = draw(st.sampled_from(enumerate_values(spec, V)))
    W = ["x", "y"]
    f = {v: draw(st.sampled_from(W)) for v in V}
    g = {x: draw(st.sampled_from(["p", "q", "r"])) for x in W}
    return spec, w, f, g


@settings(max_examples=300, deadline=None)
@given(value_and_maps())
def test_functor_preserves_identity_and_composition(data):
    spec, w, f, g = data
    assert map_value(spec, {v: v for v in "abc"}, w) == w
    gf = {v: g[f[v]] for v in f}
    assert map_value(spec, gf, w) == map_value(spec, g, map_value(spec, f, w))


@settings(max_examples=300, deadline=None)
@given(value_and_maps())
def test_support_is_natural(data):
    spec, w, f, _ = data
    assert set(support(spec, map_value(spec, f, w))) == {f[v] for v in support(spec, w)}


@settings(max_examples=200, deadline=None)
@given(value_and_maps())
def test_standard_functor_membership_is_support_containment(data):
    spec, w, _, _ = data
    for r in range(4):
        for U in itertools.combinations("abc", r):
            inside = w in enumerate_values(spec, U)
            assert inside == value_in_subset(spec, w, U)
