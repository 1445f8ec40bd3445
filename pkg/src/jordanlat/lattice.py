"""Explicit finite bounded lattices.

A lattice is given by its element labels and a (possibly non-minimal) list of
cover pairs.  Everything else -- the order, the Hasse diagram, the join and
meet tables, atoms and height -- is derived once at construction and stored
as numpy tables indexed by input position.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    InputError,
    NoBoundedStructure,
    NotALattice,
    NotComparable,
    TooLarge,
)

MAX_ELEMENTS = 20000


@dataclass(frozen=True)
class Verdict:
    """Outcome of a structural predicate, with a witness on failure."""

    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    labels: tuple[str, ...]
    leq: np.ndarray  # leq[i, j] <=> i <= j
    cover: np.ndarray  # cover[i, j] <=> i is covered by j
    join_table: np.ndarray
    meet_table: np.ndarray
    bottom: int
    top: int
    atoms: tuple[int, ...]
    height_value: int
    _index: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        for arr in (self.leq, self.cover, self.join_table, self.meet_table):
            arr.setflags(write=False)
        if not self._index:
            self._index.update({lab: i for i, lab in enumerate(self.labels)})

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"FiniteLattice(size={len(self)}, height={self.height_value}, atoms={len(self.atoms)})"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown element label {label!r}") from None

    def label(self, x: int) -> str:
        return self.labels[x]

    def is_leq(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    def down(self, x: int) -> np.ndarray:
        """Indices of the principal ideal [0, x], ascending."""
        return np.flatnonzero(self.leq[:, x])

    def up(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.leq[x, :])

    def upper_covers(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.cover[x, :])

    def lower_covers(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.cover[:, x])

    def cover_pairs(self) -> list[tuple[int, int]]:
        xs, ys = np.nonzero(self.cover)
        return [(int(x), int(y)) for x, y in zip(xs, ys)]


# -- construction -----------------------------------------------------------

def _bound_table(leq: np.ndarray, order: np.ndarray, upper: bool):
    """Join (upper=True) or meet table, plus the first pair lacking a bound.

    For each pair the candidate bound is the first common bound in the
    linear extension ``order``; it is the least bound iff every common bound
    lies above it.
    """
    n = leq.shape[0]
    rel = leq if upper else leq.T  # rel[i, j] <=> j is on the "bound" side of i
    if not upper:
        order = order[::-1]
    table = np.empty((n, n), dtype=np.int64)
    rel_ordered = rel[:, order]
    for x in range(n):
        common = rel_ordered[x][None, :] & rel_ordered  # (y, position)
        has_any = common.any(axis=1)
        cand = order[np.argmax(common, axis=1)]
        ok = has_any & ~(common & ~rel_ordered[cand]).any(axis=1)
        if not ok.all():
            y = int(np.flatnonzero(~ok)[0])
            return None, (x, y)
        table[x] = cand
    return table, None


def _first_bad_pair(bad_join, bad_meet):
    cands = [p for p in (bad_join, bad_meet) if p is not None]
    return min(tuple(sorted(p)) for p in cands)


def _closure(labels: tuple[str, ...], succ: list[list[int]]) -> np.ndarray:
    n = len(labels)
    sorter = graphlib.TopologicalSorter({i: set(succ[i]) for i in range(n)})
    try:
        # static_order yields successors before the node itself
        order = list(sorter.static_order())
    except graphlib.CycleError as exc:
        cycle = " -> ".join(labels[i] for i in reversed(exc.args[1]))
        raise CycleDetected(f"cover relation has a cycle: {cycle}") from None
    leq = np.eye(n, dtype=bool)
    for i in order:
        for j in succ[i]:
            leq[i] |= leq[j]
    return leq


def _reduce(leq: np.ndarray) -> np.ndarray:
    strict = leq & ~np.eye(leq.shape[0], dtype=bool)
    s = strict.astype(np.int32)
    return strict & ~((s @ s) > 0)


def _longest_from_bottom(cover: np.ndarray, order: np.ndarray) -> np.ndarray:
    n = cover.shape[0]
    longest = np.zeros(n, dtype=np.int64)
    for y in order:
        below = np.flatnonzero(cover[:, y])
        if below.size:
            longest[y] = longest[below].max() + 1
    return longest


def linear_extension(leq: np.ndarray) -> np.ndarray:
    """Elements sorted by the size of their principal ideal (stable)."""
    return np.argsort(leq.sum(axis=0), kind="stable")


def build_lattice(labels: Sequence[str], covers: Iterable[tuple[str, str]]) -> FiniteLattice:
    labels = tuple(str(lab) for lab in labels)
    n = len(labels)
    if n > MAX_ELEMENTS:
        raise TooLarge(f"{n} elements exceeds the cap of {MAX_ELEMENTS}", n)
    index = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise InputError(f"duplicate element label {lab!r}")
        index[lab] = i
    succ: list[list[int]] = [[] for _ in range(n)]
    for pair in covers:
        lo, hi = pair
        for lab in (lo, hi):
            if lab not in index:
                raise InputError(f"cover ({lo!r}, {hi!r}) references unknown label {lab!r}")
        succ[index[lo]].append(index[hi])
    if n == 0:
        raise NoBoundedStructure("empty element list")

    leq = _closure(labels, succ)
    return _from_order(labels, leq)


def _from_order(labels: tuple[str, ...], leq: np.ndarray) -> FiniteLattice:
    n = len(labels)
    minima = np.flatnonzero(leq.all(axis=1))
    maxima = np.flatnonzero(leq.all(axis=0))
    if minima.size != 1 or maxima.size != 1:
        raise NoBoundedStructure(
            f"no unique bottom/top (bottom candidates {minima.size}, top candidates {maxima.size})"
        )
    order = linear_extension(leq)
    join_table, bad_join = _bound_table(leq, order, upper=True)
    meet_table, bad_meet = _bound_table(leq, order, upper=False)
    if bad_join or bad_meet:
        x, y = _first_bad_pair(bad_join, bad_meet)
        raise NotALattice(
            f"elements {labels[x]!r} and {labels[y]!r} lack a unique least upper or greatest lower bound",
            (x, y),
        )
    cover = _reduce(leq)
    bottom, top = int(minima[0]), int(maxima[0])
    atoms = tuple(int(a) for a in np.flatnonzero(cover[bottom]))
    longest = _longest_from_bottom(cover, order)
    return FiniteLattice(
        labels=labels,
        leq=leq,
        cover=cover,
        join_table=join_table,
        meet_table=meet_table,
        bottom=bottom,
        top=top,
        atoms=atoms,
        height_value=int(longest[top]),
    )


# -- operations -------------------------------------------------------------

def join_many(L: FiniteLattice, xs: Iterable[int]) -> int:
    acc = L.bottom
    for x in xs:
        acc = int(L.join_table[acc, x])
    return acc


def meet_many(L: FiniteLattice, xs: Iterable[int]) -> int:
    acc = L.top
    for x in xs:
        acc = int(L.meet_table[acc, x])
    return acc


def height(L: FiniteLattice) -> int:
    return L.height_value


def is_atomistic(L: FiniteLattice) -> Verdict:
    atoms = np.asarray(L.atoms, dtype=np.int64)
    for x in range(len(L)):
        below = atoms[L.leq[atoms, x]] if atoms.size else atoms
        if join_many(L, below) != x:
            return Verdict(False, x)
    return Verdict(True)


def has_atomic_cover_property(L: FiniteLattice) -> Verdict:
    """x is covered by x v a for every x and atom a with x != x v a."""
    atoms = np.asarray(L.atoms, dtype=np.int64)
    if atoms.size == 0:
        return Verdict(True)
    for x in range(len(L)):
        joins = L.join_table[x, atoms]
        bad = (joins != x) & ~L.cover[x, joins]
        if bad.any():
            return Verdict(False, (x, int(atoms[np.argmax(bad)])))
    return Verdict(True)


def chain_length_bounds(L: FiniteLattice) -> tuple[np.ndarray, np.ndarray]:
    """Shortest and longest maximal-chain lengths from bottom to each element."""
    order = linear_extension(L.leq)
    n = len(L)
    shortest = np.zeros(n, dtype=np.int64)
    longest = np.zeros(n, dtype=np.int64)
    for y in order:
        below = np.flatnonzero(L.cover[:, y])
        if below.size:
            shortest[y] = shortest[below].min() + 1
            longest[y] = longest[below].max() + 1
    return shortest, longest


def has_graded_chains(L: FiniteLattice) -> Verdict:
    shortest, longest = chain_length_bounds(L)
    bad = np.flatnonzero(shortest != longest)
    if bad.size:
        return Verdict(False, int(bad[0]))
    return Verdict(True)


def is_irredundant_join(L: FiniteLattice, xs: Sequence[int]) -> bool:
    xs = list(xs)
    if not xs:
        raise ValueError("irredundancy is undefined for an empty family")
    total = join_many(L, xs)
    for i in range(len(xs)):
        if join_many(L, xs[:i] + xs[i + 1:]) == total:
            return False
    return True


@dataclass(frozen=True)
class IntervalEmbedding:
    sub: FiniteLattice
    to_parent: tuple[int, ...]
    from_parent: dict

    def lift(self, x: int) -> int:
        return self.to_parent[x]

    def restrict(self, x: int) -> int:
        return self.from_parent[x]


def interval(L: FiniteLattice, x: int, y: int) -> IntervalEmbedding:
    """The interval [x, y] as a standalone lattice.

    Elements keep their parent labels and parent index order, so the
    embedding is monotone in index as well as in the order.
    """
    if not L.is_leq(x, y):
        raise NotComparable(f"{L.label(x)!r} is not below {L.label(y)!r}")
    members = np.flatnonzero(L.leq[x, :] & L.leq[:, y])
    pos = {int(e): i for i, e in enumerate(members)}
    remap = np.full(len(L), -1, dtype=np.int64)
    remap[members] = np.arange(members.size)
    grid = np.ix_(members, members)
    sub_leq = L.leq[grid].copy()
    sub_cover = L.cover[grid].copy()
    sub_join = remap[L.join_table[grid]]
    sub_meet = remap[L.meet_table[grid]]
    bottom, top = pos[x], pos[y]
    atoms = tuple(int(a) for a in np.flatnonzero(sub_cover[bottom]))
    longest = _longest_from_bottom(sub_cover, linear_extension(sub_leq))
    sub = FiniteLattice(
        labels=tuple(L.labels[e] for e in members),
        leq=sub_leq,
        cover=sub_cover,
        join_table=sub_join,
        meet_table=sub_meet,
        bottom=bottom,
        top=top,
        atoms=atoms,
        height_value=int(longest[top]),
    )
    return IntervalEmbedding(sub, tuple(int(e) for e in members), pos)


# -- standard fixtures --------------------------------------------------------

def boolean_lattice(dim: int) -> FiniteLattice:
    """Subsets of {1..dim}; labels are the sorted members ("0" for empty)."""
    def name(mask):
        members = [str(i + 1) for i in range(dim) if mask >> i & 1]
        return "".join(members) if members else "0"

    masks = sorted(range(1 << dim), key=lambda m: (bin(m).count("1"), m))
    labels = [name(m) for m in masks]
    covers = [
        (name(m), name(m | 1 << i)) for m in masks for i in range(dim) if not m >> i & 1
    ]
    return build_lattice(labels, covers)


def chain_lattice(length: int) -> FiniteLattice:
    labels = [str(i) for i in range(length + 1)]
    return build_lattice(labels, list(zip(labels, labels[1:])))


def pentagon() -> FiniteLattice:
    return build_lattice(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )


def to_dot(L: FiniteLattice, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, lab in enumerate(L.labels):
        lines.append(f'  n{i} [label="{_dot_escape(lab)}"];')
    for x, y in L.cover_pairs():
        lines.append(f"  n{x} -> n{y} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')
