import itertools

import numpy as np
import pytest

from jordanlat.errors import ConditionsNotMet, EmptyBase, HypothesesNotMet, NotNilpotent
from jordanlat.gf import GFMatrix, all_matrices, is_nilpotent
from jordanlat.jnb import (
    JordanNormalBase,
    check_prop_2_4,
    compute_jnb,
    extend_kernel_chain,
    jordan_type,
    lift_atom,
    make_base,
    nilpotency_from_jnb,
    verify_jnb,
)
from jordanlat.joinhom import build_join_hom, check_conditions, extend_from_atoms, zero_map
from jordanlat.lattice import height, pentagon
from jordanlat.sublattice import enumerate_subspace_lattice, induced_join_hom

J2 = GFMatrix.from_rows(2, [[0, 1], [0, 0]])


@pytest.fixture
def sub22_j2():
    model = enumerate_subspace_lattice(2, 2)
    return model, induced_join_hom(model, J2)


@pytest.fixture
def b3_shift(B3):
    """Atoms 1, 2 are killed, atom 3 maps to atom 1."""
    return extend_from_atoms(B3, {B3.index("1"): 0, B3.index("2"): 0, B3.index("3"): B3.index("1")})


def b3_jnb_maps(B3):
    for images in itertools.product(range(len(B3)), repeat=3):
        h = extend_from_atoms(B3, dict(zip(B3.atoms, images)))
        if h.is_nilpotent and check_conditions(h).ok:
            yield h


def subspace_fixtures():
    for p, n in [(2, 2), (2, 3), (3, 2)]:
        model = enumerate_subspace_lattice(p, n)
        for A in all_matrices(p, n):
            if is_nilpotent(A):
                yield model, induced_join_hom(model, A)


class TestCompute:
    def test_zero_map_b3(self, B3):
        base = compute_jnb(zero_map(B3))
        assert base.lengths == (1, 1, 1)
        assert [B3.label(a) for a in base.atoms()] == ["1", "2", "3"]

    def test_chain_rejected(self, chain4, shift4):
        with pytest.raises(ConditionsNotMet) as info:
            compute_jnb(shift4)
        assert info.value.report.first_failure()[0] == "JNB1"

    def test_jordan_block(self, sub22_j2):
        model, h = sub22_j2
        base = compute_jnb(h)
        assert base.labelled(model.lattice) == [["10", "01"]]
        assert h.nilpotency_k == 2

    def test_not_nilpotent(self, B2):
        h = build_join_hom(B2, {"0": "0", "a": "b", "b": "b", "1": "b"})
        with pytest.raises(NotNilpotent, match="λ\\^∞\\(1\\) = b"):
            compute_jnb(h)

    def test_one_element_lattice(self):
        from jordanlat.lattice import build_lattice

        L = build_lattice(["0"], [])
        base = compute_jnb(zero_map(L))
        assert base.chains == ()
        with pytest.raises(EmptyBase):
            nilpotency_from_jnb(base)

    def test_two_element_lattice(self):
        from jordanlat.lattice import chain_lattice

        L = chain_lattice(1)
        base = compute_jnb(zero_map(L))
        assert base.chains == ((L.top,),)


class TestLift:
    def test_jordan_block_tie_break(self, sub22_j2):
        model, h = sub22_j2
        L = model.lattice
        e1 = L.index("10")
        # both "01" and "11" map onto "10"; the lower index wins
        qualifying = [a for a in L.atoms if h(a) == e1]
        assert [L.label(a) for a in qualifying] == ["01", "11"]
        assert L.label(lift_atom(h, e1)) == "01"

    def test_zero_map_has_no_atom_below_image(self, B3):
        with pytest.raises(ValueError):
            lift_atom(zero_map(B3), B3.atoms[0])

    def test_b3(self, B3, b3_shift):
        assert B3.label(lift_atom(b3_shift, B3.index("1"))) == "3"


class TestExtend:
    def test_zero_map(self, B3):
        assert [B3.label(b) for b in extend_kernel_chain(zero_map(B3), B3.bottom)] == ["1", "2", "3"]

    def test_c_equals_z(self, b3_shift):
        assert extend_kernel_chain(b3_shift, b3_shift.kernel_z) == []

    def test_jordan_block(self, sub22_j2):
        model, h = sub22_j2
        L = model.lattice
        assert L.label(h.kernel_z) == "10"
        assert extend_kernel_chain(h, L.index("10")) == []


class TestVerify:
    def test_drop_top_atom(self, sub22_j2):
        model, h = sub22_j2
        base = compute_jnb(h)
        dropped = make_base(model.lattice, [base.chains[0][:-1]])
        v = verify_jnb(h, dropped)
        assert not v and v.witness == "total join ≠ 1"

    def test_reversed_chain(self, sub22_j2):
        model, h = sub22_j2
        base = compute_jnb(h)
        rev = make_base(model.lattice, [base.chains[0][::-1]], canonical=False)
        v = verify_jnb(h, rev)
        assert not v and v.witness == "λ action violated at (1,2)"

    def test_mutations_rejected(self):
        for model, h in itertools.islice(subspace_fixtures(), 0, None, 7):
            L = model.lattice
            base = compute_jnb(h)
            atoms = base.atoms()
            mutants = []
            for k in range(len(atoms)):
                # drop one atom anywhere
                chains = [list(ch) for ch in base.chains]
                pos = 0
                for ch in chains:
                    if k < pos + len(ch):
                        del ch[k - pos]
                        break
                    pos += len(ch)
                mutants.append([ch for ch in chains if ch])
            for t, ch in enumerate(base.chains):
                if len(ch) > 1:
                    chains = [list(c) for c in base.chains]
                    chains[t] = chains[t][::-1]
                    mutants.append(chains)
            for s, t in itertools.combinations(range(base.r), 2):
                chains = [list(c) for c in base.chains]
                chains[s][-1], chains[t][-1] = chains[t][-1], chains[s][-1]
                # swapping between singleton chains only reorders them
                if sorted(map(tuple, chains)) != sorted(base.chains):
                    mutants.append(chains)
            for chains in mutants:
                assert not verify_jnb(h, make_base(L, chains, canonical=False))


class TestIrredundance:
    def test_subspace_output(self, sub22_j2):
        model, h = sub22_j2
        assert check_prop_2_4(model.lattice, compute_jnb(h))

    def test_duplicated_atom(self):
        model = enumerate_subspace_lattice(2, 3)
        L = model.lattice
        base = compute_jnb(zero_map(L))
        dup = JordanNormalBase(base.chains + (base.chains[0],), base.c_element)
        assert not check_prop_2_4(L, dup)

    def test_pentagon(self):
        N5 = pentagon()
        with pytest.raises(HypothesesNotMet):
            check_prop_2_4(N5, JordanNormalBase(((N5.atoms[0],),), N5.atoms[0]))


class TestNilpotencyFromBase:
    def test_examples(self, B3, sub22_j2):
        assert nilpotency_from_jnb(compute_jnb(zero_map(B3))) == 1
        _, h = sub22_j2
        assert nilpotency_from_jnb(compute_jnb(h)) == 2 == h.nilpotency_k
        assert nilpotency_from_jnb(JordanNormalBase(((1, 2, 3), (4,)), 0)) == 3


def test_theorem_on_subspace_lattices():
    for model, h in subspace_fixtures():
        L = model.lattice
        base = compute_jnb(h)
        assert verify_jnb(h, base)
        assert nilpotency_from_jnb(base) == h.nilpotency_k
        assert sum(base.lengths) == height(L)
        assert L.is_leq(base.c_element, h.kernel_z)
        assert check_prop_2_4(L, base)
        assert list(base.lengths) == sorted(base.lengths, reverse=True)


def test_theorem_on_boolean_lattice(B3):
    count = 0
    for h in b3_jnb_maps(B3):
        base = compute_jnb(h)
        assert verify_jnb(h, base)
        assert nilpotency_from_jnb(base) == h.nilpotency_k
        count += 1
    assert count > 1


def test_deterministic(sub22_j2):
    model = enumerate_subspace_lattice(2, 3)
    A = GFMatrix.from_rows(2, [[0, 1, 1], [0, 0, 1], [0, 0, 0]])
    h = induced_join_hom(model, A)
    assert compute_jnb(h) == compute_jnb(h)


def test_random_choices_keep_jordan_type():
    rng = np.random.default_rng(5)
    for model, h in itertools.islice(subspace_fixtures(), 0, None, 3):
        expected = jordan_type(compute_jnb(h))
        for _ in range(3):
            base = compute_jnb(h, rng=rng)
            assert verify_jnb(h, base)
            assert jordan_type(base) == expected
