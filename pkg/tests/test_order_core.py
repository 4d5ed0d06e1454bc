"""Poset, chain partition, ideal encoding, and explicit lattice checks."""

import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latmed.errors import (
    CycleDetected,
    NotALattice,
    NotAnIdeal,
    NotDistributive,
    OutOfBounds,
    ShapeMismatch,
    TooLarge,
    UnknownLabel,
)
from latmed.order_core import (
    all_ideals,
    birkhoff_round_trip,
    chain_partition,
    explicit_lattice,
    format_vector,
    ideal_to_vector,
    join,
    join_irreducibles,
    lattice_from_vectors,
    meet,
    parse_poset,
    parse_vector,
    poset_from_covers,
    serialize_poset,
    vec_leq,
    vector_to_ideal,
)


def random_poset(rng, n, density=0.3):
    labels = [f"x{i}" for i in range(n)]
    covers = [
        (labels[i], labels[j])
        for j in range(1, n)
        for i in range(j)
        if rng.random() < density
    ]
    return poset_from_covers(labels, covers)


def brute_force_max_antichain(poset):
    # oracle: largest pairwise-incomparable subset, checked over all subsets
    best = 0
    elems = poset.elements
    for r in range(len(elems), 0, -1):
        if r <= best:
            break
        for sub in combinations(elems, r):
            if all(
                not poset.leq(a, b) and not poset.leq(b, a)
                for a, b in combinations(sub, 2)
            ):
                best = r
                break
    return best


def brute_force_ideals(poset):
    # oracle: filter every subset for downward closure under the relation
    elems = poset.elements
    out = []
    for r in range(len(elems) + 1):
        for sub in combinations(elems, r):
            s = set(sub)
            if all(y in s for x in s for y in elems if poset.leq(y, x)):
                out.append(s)
    return out


def test_vector_ops_basics():
    assert meet((1, 0), (0, 1)) == (0, 0)
    assert join((1, 0), (0, 2)) == (1, 2)
    assert vec_leq((0, 1), (1, 1)) and not vec_leq((1, 1), (0, 1))
    with pytest.raises(ShapeMismatch):
        meet((1, 0), (1, 0, 0))


@given(st.lists(st.integers(0, 30), min_size=0, max_size=6))
def test_vector_text_round_trip(v):
    assert parse_vector(format_vector(v)) == tuple(v)


def test_parse_vector_rejects_garbage():
    for bad in ["1,2", "(1,-2)", "(a,b)", "", "(1 2)"]:
        with pytest.raises(OutOfBounds):
            parse_vector(bad)


@given(
    st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)),
             min_size=3, max_size=3)
)
@settings(max_examples=200)
def test_meet_join_lattice_identities(vs):
    a, b, c = [tuple(v) for v in vs]
    assert meet(a, b) == meet(b, a)
    assert join(a, b) == join(b, a)
    assert meet(a, meet(b, c)) == meet(meet(a, b), c)
    assert join(a, join(b, c)) == join(join(a, b), c)
    assert meet(a, join(a, b)) == a  # absorption
    assert join(a, meet(a, b)) == a
    # distributivity, the property everything else rests on
    assert meet(a, join(b, c)) == join(meet(a, b), meet(a, c))


def test_poset_from_covers_validation():
    with pytest.raises(UnknownLabel):
        poset_from_covers(["a", "a"], [])
    with pytest.raises(UnknownLabel):
        poset_from_covers(["a"], [("a", "b")])
    with pytest.raises(CycleDetected):
        poset_from_covers(["a"], [("a", "a")])
    with pytest.raises(CycleDetected):
        poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])


def test_relation_is_transitive_closure():
    p = poset_from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert p.leq("a", "c") and p.leq("a", "a")
    assert not p.leq("c", "a")


def test_linear_extension_respects_order():
    rng = random.Random(3)
    for _ in range(30):
        p = random_poset(rng, rng.randint(1, 9))
        pos = {x: i for i, x in enumerate(p.linear_extension)}
        for lo, hi in p.covers:
            assert pos[lo] < pos[hi]


def test_poset_text_round_trip():
    p = poset_from_covers(["a", "b", "c", "d"], [("a", "b"), ("c", "b"), ("c", "d")])
    q = parse_poset(serialize_poset(p))
    assert q.elements == p.elements
    assert q.covers == p.covers
    assert q.relation == p.relation


def test_chain_partition_is_minimum():
    rng = random.Random(5)
    for _ in range(60):
        p = random_poset(rng, rng.randint(1, 9))
        cp = chain_partition(p)
        seen = [x for chain in cp.chains for x in chain]
        assert sorted(seen) == sorted(p.elements)  # a partition
        for chain in cp.chains:
            for lo, hi in zip(chain, chain[1:]):
                assert p.leq(lo, hi)
        assert len(cp.chains) == brute_force_max_antichain(p)


def test_all_ideals_matches_subset_filter():
    rng = random.Random(9)
    for _ in range(40):
        p = random_poset(rng, rng.randint(1, 9))
        cp = chain_partition(p)
        expected = sorted(ideal_to_vector(p, cp, s) for s in brute_force_ideals(p))
        assert all_ideals(p, cp) == expected


def test_ideal_vector_round_trip():
    rng = random.Random(13)
    for _ in range(25):
        p = random_poset(rng, rng.randint(1, 8))
        cp = chain_partition(p)
        for v in all_ideals(p, cp):
            members = vector_to_ideal(p, cp, v)
            assert ideal_to_vector(p, cp, members) == v


def test_ideal_encoding_rejects_bad_inputs():
    p = poset_from_covers(["a", "b", "c", "d"], [("a", "b"), ("c", "b"), ("c", "d")])
    cp = chain_partition(p)
    with pytest.raises(NotAnIdeal):
        ideal_to_vector(p, cp, {"b"})  # b without its lower covers
    with pytest.raises(UnknownLabel):
        ideal_to_vector(p, cp, {"zzz"})
    with pytest.raises(ShapeMismatch):
        vector_to_ideal(p, cp, (1,))
    with pytest.raises(OutOfBounds):
        vector_to_ideal(p, cp, (9, 0))
    # (0,2) asks for d without c's chain being deep enough to force c?
    # chains are ('a','b') and ('c','d'): (0,2) includes c and d but not a,
    # which is fine; (2,0) includes b without c and must be refused
    with pytest.raises(NotAnIdeal):
        vector_to_ideal(p, cp, (2, 0))


def test_all_ideals_size_guard():
    p = poset_from_covers([f"x{i}" for i in range(25)], [])
    with pytest.raises(TooLarge):
        all_ideals(p, chain_partition(p))


def test_running_example_encoding():
    p = poset_from_covers(["a", "b", "c", "d"], [("a", "b"), ("c", "b"), ("c", "d")])
    cp = chain_partition(p)
    assert cp.lengths() == (2, 2)
    assert ideal_to_vector(p, cp, {"a", "b", "c"}) == (2, 1)
    assert len(all_ideals(p, cp)) == 8


def test_explicit_lattice_meets_joins_componentwise():
    rng = random.Random(21)
    for _ in range(15):
        dims = rng.randint(1, 3)
        vecs = sorted({
            tuple(rng.randint(0, 2) for _ in range(dims)) for _ in range(6)
        })
        # close the sample so it actually is a lattice
        closed = set(vecs)
        frontier = list(closed)
        while frontier:
            fresh = []
            for a in list(closed):
                for b in frontier:
                    for c in (meet(a, b), join(a, b)):
                        if c not in closed:
                            closed.add(c)
                            fresh.append(c)
            frontier = fresh
        lat = lattice_from_vectors(sorted(closed))
        for a in lat.elements:
            for b in lat.elements:
                assert lat.meet_of(a, b) == meet(a, b)
                assert lat.join_of(a, b) == join(a, b)


def test_explicit_lattice_rejects_non_lattice():
    # two incomparable elements with no common lower bound
    with pytest.raises(NotALattice):
        explicit_lattice(["a", "b"], [])


def test_explicit_lattice_rejects_diamond():
    # M3: three incomparable atoms between bottom and top; modular, not
    # distributive
    elems = ["bot", "p", "q", "r", "top"]
    pairs = [("bot", x) for x in elems] + [(x, "top") for x in elems]
    with pytest.raises(NotDistributive):
        explicit_lattice(elems, pairs)


def test_explicit_lattice_rejects_pentagon():
    # N5: bot < a < top, bot < b < c < top, a incomparable to b and c
    elems = ["bot", "a", "b", "c", "top"]
    pairs = [("bot", x) for x in elems] + [(x, "top") for x in elems]
    pairs += [("b", "c")]
    with pytest.raises(NotDistributive):
        explicit_lattice(elems, pairs)


def test_explicit_lattice_rejects_intransitive_relation():
    pairs = [("a", "b"), ("b", "c")]  # missing (a, c)
    with pytest.raises(NotALattice):
        explicit_lattice(["a", "b", "c"], pairs)


def test_explicit_lattice_rejects_cycle():
    with pytest.raises(CycleDetected):
        explicit_lattice(["a", "b"], [("a", "b"), ("b", "a")])


def test_join_irreducibles_of_cube():
    lat = lattice_from_vectors(list(product((0, 1), repeat=3)))
    jp = join_irreducibles(lat)
    # exactly the three atoms, pairwise incomparable
    assert sorted(jp.elements) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert jp.covers == ()


def test_join_irreducibles_of_chain():
    lat = lattice_from_vectors([(i,) for i in range(5)])
    jp = join_irreducibles(lat)
    assert list(jp.elements) == [(1,), (2,), (3,), (4,)]
    assert len(jp.covers) == 3


def test_birkhoff_round_trip_small():
    for vecs in [
        list(product(range(3), range(4))),
        list(product((0, 1), repeat=4)),
        [(i,) for i in range(6)],
    ]:
        lat = lattice_from_vectors(vecs)
        jp, mapping = birkhoff_round_trip(lat)
        assert len(mapping) == len(lat.elements)
        # ideals of J(L) are in bijection with L
        assert len(set(mapping.values())) == len(lat.elements)


def test_birkhoff_round_trip_running_example():
    p = poset_from_covers(["a", "b", "c", "d"], [("a", "b"), ("c", "b"), ("c", "d")])
    cp = chain_partition(p)
    lat = lattice_from_vectors(all_ideals(p, cp))
    jp, _ = birkhoff_round_trip(lat)
    assert len(jp.elements) == 4  # recovers a four-element generator poset
