"""Jordan normal bases of a finite lattice with respect to a nilpotent join-hom.

The construction recurses on the interval [0, lambda(1)]: a base found there
is extended by one lifted atom per chain, then completed with atoms of the
kernel that keep the leading joins strictly ascending.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    ConditionsNotMet,
    EmptyBase,
    HypothesesNotMet,
    NoAtomPreimage,
    NoPreimage,
    NotNilpotent,
    Stalled,
    VerificationFailed,
)
from .joinhom import JoinHom, check_conditions, preimages_below, restrict_to_image, stable_value
from .lattice import (
    FiniteLattice,
    Verdict,
    has_atomic_cover_property,
    has_graded_chains,
    is_irredundant_join,
    join_many,
)


@dataclass(frozen=True)
class JordanNormalBase:
    chains: tuple[tuple[int, ...], ...]
    c_element: int

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(ch) for ch in self.chains)

    @property
    def r(self) -> int:
        return len(self.chains)

    def atoms(self) -> list[int]:
        return [a for ch in self.chains for a in ch]

    def labelled(self, L: FiniteLattice) -> list[list[str]]:
        return [[L.label(a) for a in ch] for ch in self.chains]


def canonical_order(chains) -> list[tuple[int, ...]]:
    """Longest chains first; equal lengths by leading atom index."""
    return sorted((tuple(ch) for ch in chains), key=lambda ch: (-len(ch), ch[0] if ch else -1))


def make_base(L: FiniteLattice, chains, canonical: bool = True) -> JordanNormalBase:
    chains = canonical_order(chains) if canonical else [tuple(ch) for ch in chains]
    chains = tuple(tuple(int(a) for a in ch) for ch in chains)
    c = join_many(L, (ch[0] for ch in chains if ch))
    return JordanNormalBase(chains, c)


def base_from_labels(L: FiniteLattice, chains: Sequence[Sequence[str]]) -> JordanNormalBase:
    """Build a base in the stored order given by a base file."""
    return make_base(L, [[L.index(lab) for lab in ch] for ch in chains], canonical=False)


# -- construction ---------------------------------------------------------------

def lift_atom(h: JoinHom, a: int, rng: Optional[np.random.Generator] = None) -> int:
    L = h.lattice
    if a not in L.atoms or not L.is_leq(a, h.image_w):
        raise ValueError(f"{L.label(a)!r} is not an atom below the image")
    xs = preimages_below(h, a, L.top)
    if not xs:
        raise NoPreimage(f"no element maps onto {L.label(a)!r}")
    x = xs[0] if rng is None else xs[rng.integers(len(xs))]
    candidates = [b for b in L.atoms if L.is_leq(b, x) and h(b) == a]
    if not candidates:
        raise NoAtomPreimage(
            f"no atom below {L.label(x)!r} maps onto {L.label(a)!r}"
        )
    return candidates[0] if rng is None else candidates[rng.integers(len(candidates))]


def extend_kernel_chain(h: JoinHom, c: int, rng: Optional[np.random.Generator] = None) -> list[int]:
    L = h.lattice
    z = h.kernel_z
    if not L.is_leq(c, z):
        raise ValueError(f"{L.label(c)!r} is not below the kernel")
    kernel_atoms = [a for a in L.atoms if L.is_leq(a, z)]
    out = []
    current = c
    while current != z:
        fresh = [a for a in kernel_atoms if not L.is_leq(a, current)]
        if not fresh:
            raise Stalled(f"no atom of the kernel lies outside {L.label(current)!r}")
        b = fresh[0] if rng is None else fresh[rng.integers(len(fresh))]
        out.append(b)
        current = L.join(current, b)
    return out


def _build(h: JoinHom, rng) -> list[list[int]]:
    L = h.lattice
    if L.height_value == 0:
        return []
    restricted = restrict_to_image(h)
    inner = _build(restricted.hom, rng)
    chains = [[restricted.to_parent[a] for a in ch] for ch in inner]
    for ch in chains:
        ch.append(lift_atom(h, ch[-1], rng))
    c = join_many(L, (ch[0] for ch in chains))
    chains.extend([b] for b in extend_kernel_chain(h, c, rng))
    return chains


def compute_jnb(
    h: JoinHom, check: bool = True, rng: Optional[np.random.Generator] = None
) -> JordanNormalBase:
    """Jordan normal base in canonical chain order.

    ``check=False`` skips the JNB1-JNB3 pre-checks; a violated condition then
    surfaces as an error from the construction or as VerificationFailed.
    ``rng`` replaces the lowest-index choices with random ones.
    """
    L = h.lattice
    if not h.is_nilpotent:
        raise NotNilpotent(f"not nilpotent, λ^∞(1) = {L.label(stable_value(h))}")
    if check:
        report = check_conditions(h)
        if not report.ok:
            name, witness = report.first_failure()
            raise ConditionsNotMet(f"{name} fails, witness {_show(L, witness)}", report)
    base = make_base(L, _build(h, rng))
    verdict = verify_jnb(h, base)
    if not verdict:
        raise VerificationFailed(verdict.witness)
    return base


def _show(L: FiniteLattice, witness) -> str:
    if isinstance(witness, tuple):
        return "(" + ", ".join(L.label(x) for x in witness) + ")"
    return L.label(witness)


# -- verification ----------------------------------------------------------------

def verify_jnb(h: JoinHom, base: JordanNormalBase) -> Verdict:
    """Check the defining conditions in the base's stored chain order."""
    L = h.lattice
    atoms = set(L.atoms)
    seen = set()
    for t, ch in enumerate(base.chains, start=1):
        if not ch:
            return Verdict(False, f"empty chain {t}")
        for i, a in enumerate(ch, start=1):
            if a not in atoms:
                return Verdict(False, f"not an atom at ({t},{i})")
            if a in seen:
                return Verdict(False, f"duplicate atom at ({t},{i})")
            seen.add(a)

    acc = L.bottom
    for t, ch in enumerate(base.chains, start=1):
        nxt = L.join(acc, ch[0])
        if nxt == acc:
            return Verdict(False, f"leading joins not strictly ascending at {t}")
        acc = nxt
    for t, ch in enumerate(base.chains, start=1):
        for i in range(1, len(ch)):
            nxt = L.join(acc, ch[i])
            if nxt == acc:
                return Verdict(False, f"strict growth violated at ({t},{i + 1})")
            acc = nxt
    if acc != L.top:
        return Verdict(False, "total join ≠ 1")

    for t, ch in enumerate(base.chains, start=1):
        for i in range(1, len(ch)):
            if h(ch[i]) != ch[i - 1]:
                return Verdict(False, f"λ action violated at ({t},{i + 1})")
        if h(ch[0]) != L.bottom:
            return Verdict(False, f"λ action violated at ({t},1)")
    return Verdict(True)


def check_prop_2_4(L: FiniteLattice, base: JordanNormalBase) -> bool:
    """Irredundance of the flattened atom family, under the cover and grading hypotheses."""
    cover = has_atomic_cover_property(L)
    graded = has_graded_chains(L)
    if not cover or not graded:
        failed = [name for name, v in (("atomic cover", cover), ("graded chains", graded)) if not v]
        raise HypothesesNotMet(f"hypotheses fail: {', '.join(failed)}")
    flat = base.atoms()
    if not flat:
        return True
    return is_irredundant_join(L, flat)


def nilpotency_from_jnb(base: JordanNormalBase) -> int:
    if not base.chains:
        raise EmptyBase("the empty base carries no nilpotency index")
    return max(base.lengths)


def jordan_type(base: JordanNormalBase) -> tuple[int, ...]:
    return tuple(sorted(base.lengths, reverse=True))
