"""The lattice of subspaces of GF(p)^n and cross-validation of both engines."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .combinat import as_partition, gaussian_binomial, subspace_count
from .errors import CrossValidationFailed, DimensionMismatch, JordanLatError, TooLarge
from .gf import (
    GFMatrix,
    JordanChainBasis,
    Subspace,
    _check_prime,
    block_partition_oracle,
    compute_jordan_chains,
    verify_chain_basis,
)
from .jnb import JordanNormalBase, check_prop_2_4, compute_jnb, make_base, verify_jnb
from .joinhom import JoinHom, build_join_hom, check_conditions
from .lattice import MAX_ELEMENTS, FiniteLattice, build_lattice


@dataclass(frozen=True, eq=False)
class SubspaceLatticeModel:
    lattice: FiniteLattice
    subspaces: tuple[Subspace, ...]
    p: int
    n: int
    _lookup: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self._lookup:
            self._lookup.update({s: i for i, s in enumerate(self.subspaces)})

    def element_of(self, s: Subspace) -> int:
        return self._lookup[s]

    def subspace(self, x: int) -> Subspace:
        return self.subspaces[x]

    def span_element(self, vectors) -> int:
        return self._lookup[Subspace.span(self.p, self.n, vectors)]


def _echelon_forms(p: int, n: int, d: int):
    """Every d x n reduced echelon matrix, grouped by pivot profile."""
    for pivots in itertools.combinations(range(n), d):
        free = [
            (i, j)
            for i, pc in enumerate(pivots)
            for j in range(pc + 1, n)
            if j not in pivots
        ]
        for values in itertools.product(range(p), repeat=len(free)):
            M = np.zeros((d, n), dtype=np.int64)
            for i, pc in enumerate(pivots):
                M[i, pc] = 1
            for (i, j), v in zip(free, values):
                M[i, j] = v
            yield M


def enumerate_subspaces(p: int, n: int) -> list[Subspace]:
    _check_prime(p)
    total = subspace_count(n, p)
    if total > MAX_ELEMENTS:
        raise TooLarge(f"Sub(GF({p})^{n}) has {total} elements, cap is {MAX_ELEMENTS}", total)
    spaces = [
        Subspace(p, n, tuple(tuple(int(v) for v in row) for row in M))
        for d in range(n + 1)
        for M in _echelon_forms(p, n, d)
    ]
    spaces.sort(key=Subspace.sort_key)
    for d in range(n + 1):
        found = sum(1 for s in spaces if s.dim == d)
        if found != gaussian_binomial(n, d, p):
            raise JordanLatError(f"enumerated {found} subspaces of dimension {d}")
    return spaces


def _covers(spaces: list[Subspace], p: int, n: int) -> list[tuple[int, int]]:
    by_dim: dict[int, list[int]] = {}
    for i, s in enumerate(spaces):
        by_dim.setdefault(s.dim, []).append(i)
    pairs = []
    for d in range(1, n + 1):
        lower = by_dim[d - 1]
        if d == 1:
            pairs.extend((lower[0], j) for j in by_dim[1])
            continue
        U = np.array([spaces[i].matrix() for i in lower])  # (m, d-1, n)
        for j in by_dim[d]:
            W = spaces[j]
            resid = (U - np.einsum("mkd,dn->mkn", U[:, :, W.pivots()], W.matrix())) % p
            inside = ~resid.any(axis=(1, 2))
            pairs.extend((lower[k], j) for k in np.flatnonzero(inside))
    return pairs


@functools.lru_cache(maxsize=16)
def enumerate_subspace_lattice(p: int, n: int) -> SubspaceLatticeModel:
    spaces = enumerate_subspaces(p, n)
    labels = [s.label() for s in spaces]
    L = build_lattice(labels, [(labels[a], labels[b]) for a, b in _covers(spaces, p, n)])
    return SubspaceLatticeModel(L, tuple(spaces), p, n)


def induced_join_hom(model: SubspaceLatticeModel, A: GFMatrix) -> JoinHom:
    if A.p != model.p or A.shape != (model.n, model.n):
        raise DimensionMismatch(
            f"expected {model.n}x{model.n} over GF({model.p}), got {A.shape} over GF({A.p})"
        )
    values = [model.element_of(s.image(A)) for s in model.subspaces]
    return build_join_hom(model.lattice, values)


def span_base(model: SubspaceLatticeModel, basis: JordanChainBasis) -> JordanNormalBase:
    """Lattice base formed by the lines through each chain vector."""
    chains = [[model.span_element([v]) for v in ch] for ch in basis.chains]
    return make_base(model.lattice, chains)


LEGS = (
    "jnb_conditions",
    "abstract_base",
    "concrete_chains",
    "partitions",
    "span_correspondence",
    "irredundance",
)


@dataclass
class CrossValidationReport:
    p: int
    n: int
    matrix: GFMatrix
    legs: dict = field(default_factory=dict)  # leg name -> (ok, detail)
    oracle: tuple = ()
    lattice_type: tuple = ()
    chain_type: tuple = ()
    lattice_base: Optional[JordanNormalBase] = None
    chain_basis: Optional[JordanChainBasis] = None

    @property
    def ok(self) -> bool:
        return len(self.legs) == len(LEGS) and all(ok for ok, _ in self.legs.values())

    def first_failure(self):
        for leg in LEGS:
            ok, detail = self.legs.get(leg, (False, "not run"))
            if not ok:
                return leg, detail
        return None


def cross_validate(p: int, n: int, A: GFMatrix, strict: bool = False) -> CrossValidationReport:
    model = enumerate_subspace_lattice(p, n)
    L = model.lattice
    report = CrossValidationReport(p, n, A)
    legs = report.legs
    report.oracle = block_partition_oracle(A)
    h = induced_join_hom(model, A)

    cond = check_conditions(h)
    legs["jnb_conditions"] = (cond.ok, None if cond.ok else str(cond.first_failure()))

    try:
        base = compute_jnb(h, check=False)
        report.lattice_base = base
        report.lattice_type = as_partition(base.lengths)
        legs["abstract_base"] = (True, None)
    except JordanLatError as exc:
        legs["abstract_base"] = (False, str(exc))
        base = None

    chains = compute_jordan_chains(A)
    report.chain_basis = chains
    report.chain_type = as_partition(chains.lengths)
    verdict = verify_chain_basis(A, chains)
    legs["concrete_chains"] = (verdict.holds, verdict.witness)

    agree = report.lattice_type == report.chain_type == report.oracle
    legs["partitions"] = (
        agree,
        None if agree else f"lattice {report.lattice_type}, chains {report.chain_type}, oracle {report.oracle}",
    )

    spans = span_base(model, chains)
    atoms_ok = all(a in L.atoms for a in spans.atoms())
    span_verdict = verify_jnb(h, spans)
    legs["span_correspondence"] = (
        atoms_ok and span_verdict.holds,
        None if atoms_ok and span_verdict.holds else (span_verdict.witness or "span is not an atom"),
    )

    if base is None:
        legs["irredundance"] = (False, "no abstract base")
    else:
        try:
            irr = check_prop_2_4(L, base)
            legs["irredundance"] = (irr, None if irr else "join is redundant")
        except JordanLatError as exc:
            legs["irredundance"] = (False, str(exc))

    if strict and not report.ok:
        raise CrossValidationFailed(*report.first_failure())
    return report
