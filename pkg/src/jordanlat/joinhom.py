"""Join-homomorphisms of finite lattices and the JNB1-JNB3 condition checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .errors import InputError, NotJoinHom, ZeroNotFixed
from .lattice import FiniteLattice, Verdict, interval, is_atomistic


@dataclass(frozen=True, eq=False)
class JoinHom:
    lattice: FiniteLattice
    values: np.ndarray
    image_w: int
    kernel_z: int
    nilpotency_k: Optional[int]

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def __repr__(self):
        return f"JoinHom(size={len(self.lattice)}, w={self.image_w}, z={self.kernel_z}, k={self.nilpotency_k})"

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_k is not None

    def label_map(self) -> dict:
        L = self.lattice
        return {L.label(x): L.label(int(v)) for x, v in enumerate(self.values)}


def build_join_hom(L: FiniteLattice, values) -> JoinHom:
    """Validate a value table (sequence indexed by element, or label mapping)."""
    if isinstance(values, Mapping):
        table = np.empty(len(L), dtype=np.int64)
        seen = set()
        for src, dst in values.items():
            x = L.index(src) if isinstance(src, str) else int(src)
            table[x] = L.index(dst) if isinstance(dst, str) else int(dst)
            seen.add(x)
        missing = [L.label(x) for x in range(len(L)) if x not in seen]
        if missing:
            raise InputError(f"map is not total; missing {missing}")
    else:
        table = np.array(values, dtype=np.int64)
        if table.shape != (len(L),):
            raise InputError(f"map needs {len(L)} values, got shape {table.shape}")
    if table.min() < 0 or table.max() >= len(L):
        raise InputError("map value out of range")

    if table[L.bottom] != L.bottom:
        raise ZeroNotFixed(f"bottom maps to {L.label(int(table[L.bottom]))!r}")
    lhs = table[L.join_table]
    rhs = L.join_table[table[:, None], table[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        x, y = (int(v) for v in bad[0])
        raise NotJoinHom(
            f"image of {L.label(x)!r} v {L.label(y)!r} is {L.label(int(lhs[x, y]))!r}, "
            f"but the join of the images is {L.label(int(rhs[x, y]))!r}",
            (x, y),
        )
    table.setflags(write=False)

    w = int(table[L.top])
    zeros = np.flatnonzero(table == L.bottom)
    z = int(zeros[0])
    for u in zeros[1:]:
        z = int(L.join_table[z, u])
    # lambda(x) = 0 <=> x <= z
    assert np.array_equal(table == L.bottom, L.leq[:, z])
    return JoinHom(L, table, w, z, _nilpotency(L, table))


def _nilpotency(L: FiniteLattice, table: np.ndarray) -> Optional[int]:
    x = L.top
    for k in range(1, L.height_value + 2):
        x = int(table[x])
        if x == L.bottom:
            return k
    return None


def apply_power(h: JoinHom, x: int, m: int) -> int:
    if m < 0:
        raise ValueError("power must be non-negative")
    for _ in range(m):
        x = int(h.values[x])
    return x


def nilpotency_index(h: JoinHom) -> Optional[int]:
    return h.nilpotency_k


def power_sequence(h: JoinHom) -> list[int]:
    """lambda^i(1) for i = 0, 1, ... until the sequence stabilizes."""
    seq = [h.lattice.top]
    while True:
        nxt = int(h.values[seq[-1]])
        if nxt == seq[-1]:
            return seq
        seq.append(nxt)


def stable_value(h: JoinHom) -> int:
    return power_sequence(h)[-1]


@dataclass(frozen=True)
class ConditionReport:
    jnb1: Verdict
    jnb2: Optional[Verdict] = None
    jnb3: Optional[Verdict] = None

    @property
    def ok(self) -> bool:
        return all(v is None or v.holds for v in (self.jnb1, self.jnb2, self.jnb3))

    def first_failure(self):
        for name, v in (("JNB1", self.jnb1), ("JNB2", self.jnb2), ("JNB3", self.jnb3)):
            if v is not None and not v.holds:
                return name, v.witness
        return None


def check_jnb1(L: FiniteLattice) -> Verdict:
    # finite height holds for every finite lattice, so only atomicity is at stake
    return is_atomistic(L)


def check_jnb2(h: JoinHom) -> Verdict:
    L = h.lattice
    lam = h.values
    kernel_part = L.down(h.kernel_z)
    for x in range(len(L)):
        ys = np.flatnonzero(L.leq[x] & (lam == lam[x]))
        reachable = L.join_table[x, kernel_part]
        missing = ys[~np.isin(ys, reachable)]
        if missing.size:
            return Verdict(False, (x, int(missing[0])))
    return Verdict(True)


def check_jnb3(h: JoinHom) -> Verdict:
    missing = _jnb3_missing(h, first_only=True)
    if missing:
        return Verdict(False, missing[0])
    return Verdict(True)


def jnb3_violations(h: JoinHom) -> list[tuple[int, int]]:
    """Every pair (x, t) with t <= lambda(x) and no preimage of t below x."""
    return _jnb3_missing(h, first_only=False)


def _jnb3_missing(h: JoinHom, first_only: bool):
    L = h.lattice
    out = []
    for x in range(len(L)):
        hit = np.unique(h.values[L.down(x)])
        targets = L.down(int(h.values[x]))
        for t in targets[~np.isin(targets, hit)]:
            out.append((x, int(t)))
            if first_only:
                return out
    return out


def check_conditions(h: JoinHom) -> ConditionReport:
    return ConditionReport(check_jnb1(h.lattice), check_jnb2(h), check_jnb3(h))


def preimages_below(h: JoinHom, target: int, bound: int) -> list[int]:
    L = h.lattice
    return [int(u) for u in np.flatnonzero(L.leq[:, bound] & (h.values == target))]


@dataclass(frozen=True, eq=False)
class Restriction:
    """A join-hom on an interval, with the embedding into the parent."""

    hom: JoinHom
    to_parent: tuple[int, ...]
    from_parent: dict


def restrict_to_image(h: JoinHom) -> Restriction:
    L = h.lattice
    emb = interval(L, L.bottom, h.image_w)
    values = [emb.from_parent[int(h.values[e])] for e in emb.to_parent]
    return Restriction(build_join_hom(emb.sub, values), emb.to_parent, emb.from_parent)


def zero_map(L: FiniteLattice) -> JoinHom:
    return build_join_hom(L, [L.bottom] * len(L))


def extend_from_atoms(L: FiniteLattice, atom_images: Mapping[int, int]) -> JoinHom:
    """The join-hom on an atomistic lattice determined by its atom images."""
    values = []
    for x in range(len(L)):
        acc = L.bottom
        for a in L.atoms:
            if L.leq[a, x]:
                acc = L.join(acc, atom_images[a])
        values.append(acc)
    return build_join_hom(L, values)


def is_monotone(h: JoinHom) -> bool:
    L = h.lattice
    lam = h.values
    return bool(np.all(~L.leq | L.leq[lam[:, None], lam[None, :]]))

