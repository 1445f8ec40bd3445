import itertools

import numpy as np
import pytest

from jordanlat.joinhom import build_join_hom
from jordanlat.lattice import boolean_lattice, build_lattice, chain_lattice, pentagon


@pytest.fixture
def B2():
    return build_lattice(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


@pytest.fixture
def B3():
    return boolean_lattice(3)


@pytest.fixture
def N5():
    return pentagon()


@pytest.fixture
def chain4():
    """0 < a < b < 1"""
    return build_lattice(["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "1")])


@pytest.fixture
def shift4(chain4):
    return build_join_hom(chain4, {"0": "0", "a": "0", "b": "a", "1": "b"})


@pytest.fixture
def z4_style():
    """Submodule lattice 0 < 2Z/4Z < Z/4Z of a module with nonzero radical."""
    return build_lattice(["0", "A", "M"], [("0", "A"), ("A", "M")])


# -- independent brute-force oracles ------------------------------------------------

def brute_lub(L, x, y):
    ups = [u for u in range(len(L)) if L.leq[x, u] and L.leq[y, u]]
    least = [u for u in ups if all(L.leq[u, v] for v in ups)]
    assert len(least) == 1
    return least[0]


def brute_jnb2_failures(h):
    L = h.lattice
    n = len(L)
    failures = []
    for x, y in itertools.product(range(n), repeat=2):
        if L.leq[x, y] and h(x) == h(y):
            if not any(L.join(x, u) == y and h(u) == L.bottom for u in range(n)):
                failures.append((x, y))
    return failures


def brute_jnb3_failures(h):
    L = h.lattice
    n = len(L)
    failures = []
    for x in range(n):
        images = {h(u) for u in range(n) if L.leq[u, x]}
        for t in range(n):
            if L.leq[t, h(x)] and t not in images:
                failures.append((x, t))
    return failures


def all_vectors(p, n):
    return [np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=n)]


def brute_kernel_size(A):
    return sum(1 for v in all_vectors(A.p, A.cols) if not A.apply(v).any())


def brute_image_set(A):
    return {tuple(A.apply(v)) for v in all_vectors(A.p, A.cols)}


def brute_span_set(p, vectors, n):
    """All linear combinations, by enumeration of coefficients."""
    vectors = [np.asarray(v, dtype=np.int64) for v in vectors]
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(vectors)):
        acc = np.zeros(n, dtype=np.int64)
        for c, v in zip(coeffs, vectors):
            acc = (acc + c * v) % p
        out.add(tuple(int(x) for x in acc))
    return out
