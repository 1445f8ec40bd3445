import itertools

import numpy as np
import pytest

from jordanlat.errors import CycleDetected, InputError, NoBoundedStructure, NotALattice, NotComparable
from jordanlat.lattice import (
    boolean_lattice,
    build_lattice,
    chain_lattice,
    has_atomic_cover_property,
    has_graded_chains,
    height,
    interval,
    is_atomistic,
    is_irredundant_join,
    join_many,
    to_dot,
)
from jordanlat.sublattice import enumerate_subspace_lattice

from conftest import brute_lub


def labels_of(L, xs):
    return [L.label(x) for x in xs]


class TestBuild:
    def test_boolean_b2(self, B2):
        assert labels_of(B2, B2.atoms) == ["a", "b"]
        assert height(B2) == 2
        assert B2.label(B2.bottom) == "0" and B2.label(B2.top) == "1"

    def test_pentagon(self, N5):
        assert labels_of(N5, N5.atoms) == ["a", "b"]
        assert height(N5) == 3

    def test_non_minimal_covers_are_reduced(self):
        L = build_lattice(["0", "a", "1"], [("0", "a"), ("a", "1"), ("0", "1")])
        # oracle: x < y with nothing strictly between, straight from the order
        brute = [
            (x, y)
            for x, y in itertools.permutations(range(3), 2)
            if L.leq[x, y] and not any(L.leq[x, z] and L.leq[z, y] and z not in (x, y) for z in range(3))
        ]
        assert sorted(brute) == [(0, 1), (1, 2)]
        assert L.cover_pairs() == brute

    def test_cycle(self):
        with pytest.raises(CycleDetected):
            build_lattice(["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "a"), ("b", "1")])

    def test_self_loop_is_a_cycle(self):
        with pytest.raises(CycleDetected):
            build_lattice(["0"], [("0", "0")])

    def test_not_a_lattice_has_witness(self):
        # two maximal elements above a, b: a and b have no least upper bound
        L_labels = ["0", "a", "b", "c", "d", "1"]
        covers = [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")]
        with pytest.raises(NotALattice) as info:
            build_lattice(L_labels, covers)
        assert info.value.witness == (1, 2)

    def test_unbounded(self):
        with pytest.raises(NoBoundedStructure):
            build_lattice(["a", "b"], [])

    def test_unknown_and_duplicate_labels(self):
        with pytest.raises(InputError):
            build_lattice(["0", "1"], [("0", "x")])
        with pytest.raises(InputError):
            build_lattice(["0", "0"], [])

    def test_one_element(self):
        L = build_lattice(["0"], [])
        assert height(L) == 0 and L.atoms == () and L.bottom == L.top == 0

    def test_deterministic(self, N5):
        again = build_lattice(list(N5.labels), [(N5.label(x), N5.label(y)) for x, y in N5.cover_pairs()])
        for name in ("leq", "cover", "join_table", "meet_table"):
            assert np.array_equal(getattr(N5, name), getattr(again, name))

    @pytest.mark.parametrize("make", [lambda: boolean_lattice(3), lambda: chain_lattice(4)])
    def test_join_table_matches_exhaustive_lub(self, make, N5):
        for L in (make(), N5):
            for x, y in itertools.product(range(len(L)), repeat=2):
                assert L.join(x, y) == brute_lub(L, x, y)

    def test_lattice_laws_on_b3(self, B3):
        n = len(B3)
        for x, y, z in itertools.product(range(n), repeat=3):
            assert B3.join(x, y) == B3.join(y, x)
            assert B3.join(B3.join(x, y), z) == B3.join(x, B3.join(y, z))
            assert B3.meet(x, B3.join(x, y)) == x  # absorption
        for x in range(n):
            assert B3.join(x, x) == x
            assert B3.is_leq(B3.bottom, x) and B3.is_leq(x, B3.top)


class TestJoinMany:
    def test_b2(self, B2):
        assert B2.label(join_many(B2, [1, 2])) == "1"
        assert join_many(B2, []) == B2.bottom

    def test_pentagon_atoms(self, N5):
        assert N5.label(join_many(N5, [N5.index("a"), N5.index("b")])) == "1"


class TestPredicates:
    def test_atomistic(self, B2, N5):
        assert is_atomistic(B2)
        v = is_atomistic(N5)
        assert not v and N5.label(v.witness) == "c"
        chain = build_lattice(["0", "a", "1"], [("0", "a"), ("a", "1")])
        v = is_atomistic(chain)
        assert not v and chain.label(v.witness) == "1"

    def test_height(self, N5):
        assert height(boolean_lattice(3)) == 3
        assert height(build_lattice(["0"], [])) == 0
        assert height(N5) == 3

    def test_atomic_cover(self, B3, N5):
        assert has_atomic_cover_property(B3)
        v = has_atomic_cover_property(N5)
        assert not v and [N5.label(x) for x in v.witness] == ["a", "b"]
        assert has_atomic_cover_property(enumerate_subspace_lattice(2, 2).lattice)

    def test_graded(self, B3, N5):
        assert has_graded_chains(B3)
        v = has_graded_chains(N5)
        assert not v and N5.label(v.witness) == "1"
        assert has_graded_chains(chain_lattice(5))

    def test_irredundant(self, B2, B3):
        assert is_irredundant_join(B3, list(B3.atoms))
        a, b = B2.atoms
        assert not is_irredundant_join(B2, [a, b, a])
        sub = enumerate_subspace_lattice(2, 2).lattice
        assert len(sub.atoms) == 3
        assert not is_irredundant_join(sub, list(sub.atoms))
        with pytest.raises(ValueError):
            is_irredundant_join(B2, [])


class TestInterval:
    def test_atom_interval(self, B3):
        emb = interval(B3, B3.bottom, B3.atoms[0])
        assert len(emb.sub) == 2 and height(emb.sub) == 1

    def test_whole_lattice(self, N5):
        emb = interval(N5, N5.bottom, N5.top)
        assert emb.sub.labels == N5.labels
        assert np.array_equal(emb.sub.join_table, N5.join_table)

    def test_pentagon_lower_interval(self, N5):
        emb = interval(N5, N5.bottom, N5.index("c"))
        assert list(emb.sub.labels) == ["0", "a", "c"]
        assert height(emb.sub) == 2
        assert emb.sub.cover_pairs() == [(0, 1), (1, 2)]

    def test_embedding_is_sublattice(self, B3):
        x, y = B3.atoms[0], B3.top
        emb = interval(B3, x, y)
        sub = emb.sub
        for u, v in itertools.product(range(len(sub)), repeat=2):
            assert emb.to_parent[sub.join(u, v)] == B3.join(emb.to_parent[u], emb.to_parent[v])
            assert emb.to_parent[sub.meet(u, v)] == B3.meet(emb.to_parent[u], emb.to_parent[v])
            assert sub.is_leq(u, v) == B3.is_leq(emb.to_parent[u], emb.to_parent[v])
        assert height(sub) <= height(B3)

    def test_not_comparable(self, B2):
        with pytest.raises(NotComparable):
            interval(B2, 1, 2)


@pytest.mark.parametrize(
    "L",
    [boolean_lattice(2), boolean_lattice(3), chain_lattice(1)]
    + [enumerate_subspace_lattice(p, n).lattice for p, n in [(2, 2), (2, 3), (3, 2)]],
)
def test_atomistic_semimodular_fixtures_are_graded(L):
    if is_atomistic(L) and has_atomic_cover_property(L):
        assert has_graded_chains(L)
    assert height(interval(L, L.bottom, L.top).sub) == height(L)


def test_dot_export(B2):
    dot = to_dot(B2)
    assert "rankdir=BT" in dot
    assert dot.count("->") == 4
    for lab in B2.labels:
        assert f'label="{lab}"' in dot
