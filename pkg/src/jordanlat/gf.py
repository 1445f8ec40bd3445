"""Exact linear algebra over prime fields and Jordan chains of nilpotent maps.

Vectors are column vectors: a matrix ``A`` acts by ``u -> A u``.  Subspaces
are stored by their reduced row echelon basis with zero rows dropped, which
makes equality entrywise and lets them be hashed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .combinat import as_partition, conjugate_partition
from .errors import DimensionMismatch, InputError, NotNilpotent
from .lattice import Verdict

MAX_PRIME = 65521


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _check_prime(p: int):
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)) or p > MAX_PRIME:
        raise InputError(f"modulus must be a prime <= {MAX_PRIME}, got {p!r}")


def _rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = M[r] * pow(int(M[r, c]), -1, p) % p
        col = M[:, c].copy()
        col[r] = 0
        M = (M - np.outer(col, M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def _rank(M: np.ndarray, p: int) -> int:
    if M.size == 0:
        return 0
    return len(_rref(M, p)[1])


def _null_basis(M: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {u : M u = 0}, one per free column."""
    cols = M.shape[1]
    R, pivots = _rref(M, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(pivots):
            out[k, pc] = -R[i, f] % p
    return out


@dataclass(frozen=True, eq=False)
class GFMatrix:
    p: int
    entries: np.ndarray

    def __post_init__(self):
        _check_prime(self.p)
        arr = np.array(self.entries, dtype=np.int64)
        if arr.ndim != 2:
            raise InputError("matrix must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= self.p):
            raise InputError(f"entries must be residues in [0, {self.p})")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, p: int, rows) -> "GFMatrix":
        return cls(p, np.array(rows, dtype=np.int64).reshape(len(rows), -1) % p)

    @classmethod
    def reduce(cls, p: int, arr) -> "GFMatrix":
        return cls(p, np.asarray(arr, dtype=np.int64) % p)

    @classmethod
    def identity(cls, p: int, n: int) -> "GFMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: Optional[int] = None) -> "GFMatrix":
        return cls(p, np.zeros((rows, rows if cols is None else cols), dtype=np.int64))

    @property
    def shape(self):
        return self.entries.shape

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other):
        return (
            isinstance(other, GFMatrix)
            and self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.p, self.shape, self.entries.tobytes()))

    def __repr__(self):
        return f"GFMatrix(p={self.p}, rows={self.tolist()})"

    def __matmul__(self, other: "GFMatrix") -> "GFMatrix":
        if self.p != other.p or self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape} (p={self.p}, {other.p})")
        return GFMatrix(self.p, self.entries @ other.entries % self.p)

    def __add__(self, other: "GFMatrix") -> "GFMatrix":
        return GFMatrix(self.p, (self.entries + other.entries) % self.p)

    def apply(self, v) -> np.ndarray:
        return self.entries @ np.asarray(v, dtype=np.int64) % self.p

    def power(self, m: int) -> "GFMatrix":
        out = GFMatrix.identity(self.p, self.rows)
        for _ in range(m):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return not self.entries.any()

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def encoding(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.entries.ravel())


@dataclass(frozen=True)
class Subspace:
    p: int
    n: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, p: int, n: int, vectors) -> "Subspace":
        arr = np.asarray(vectors, dtype=np.int64).reshape(-1, n)
        if arr.shape[0] == 0:
            return cls(p, n, ())
        R, pivots = _rref(arr, p)
        return cls(p, n, tuple(tuple(int(v) for v in R[i]) for i in range(len(pivots))))

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, ())

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls.span(p, n, np.eye(n, dtype=np.int64))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.n)

    def pivots(self) -> list[int]:
        return [next(j for j, v in enumerate(row) if v) for row in self.basis]

    def sort_key(self):
        return (self.dim, self.basis)

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return not v.any()
        B = self.matrix()
        return not ((v - v[self.pivots()] @ B) % self.p).any()

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.p, self.n, np.vstack([self.matrix(), other.matrix()]))

    def annihilator(self) -> np.ndarray:
        """Rows c with c . v = 0 for all v here; v is in the space iff all vanish."""
        if self.dim == 0:
            return np.eye(self.n, dtype=np.int64)
        return _null_basis(self.matrix(), self.p)

    def __and__(self, other: "Subspace") -> "Subspace":
        constraints = np.vstack([self.annihilator(), other.annihilator()])
        if constraints.shape[0] == 0:
            return Subspace.full(self.p, self.n)
        return Subspace.span(self.p, self.n, _null_basis(constraints, self.p))

    def image(self, A: GFMatrix) -> "Subspace":
        _check_square(A, self.n, self.p)
        return Subspace.span(self.p, self.n, self.matrix() @ A.entries.T % self.p)

    def preimage(self, A: GFMatrix) -> "Subspace":
        """{u : A u in self}"""
        _check_square(A, self.n, self.p)
        C = self.annihilator()
        if C.shape[0] == 0:
            return Subspace.full(self.p, self.n)
        return Subspace.span(self.p, self.n, _null_basis(C @ A.entries % self.p, self.p))

    def label(self) -> str:
        if self.dim == 0:
            return "0"
        sep = "" if self.p <= 10 else ","
        return ";".join(sep.join(str(v) for v in row) for row in self.basis)


def _check_square(A: GFMatrix, n: int, p: int):
    if A.shape != (n, n) or A.p != p:
        raise DimensionMismatch(f"expected a {n}x{n} matrix over GF({p}), got {A.shape} over GF({A.p})")


def rref(A: GFMatrix) -> tuple[GFMatrix, int]:
    R, pivots = _rref(A.entries, A.p)
    return GFMatrix(A.p, R), len(pivots)


def rank(A: GFMatrix) -> int:
    return _rank(A.entries, A.p)


def kernel_space(A: GFMatrix) -> Subspace:
    return Subspace.span(A.p, A.cols, _null_basis(A.entries, A.p))


def image_space(A: GFMatrix) -> Subspace:
    return Subspace.span(A.p, A.rows, A.entries.T)


def preimage_vector(A: GFMatrix, v, within: Optional[Subspace] = None) -> Optional[np.ndarray]:
    """Some u in ``within`` with A u = v, free coordinates set to zero."""
    p, n = A.p, A.cols
    W = np.eye(n, dtype=np.int64) if within is None else within.matrix()
    v = np.asarray(v, dtype=np.int64) % p
    if W.shape[0] == 0:
        return np.zeros(n, dtype=np.int64) if not v.any() else None
    M = A.entries @ W.T % p
    R, pivots = _rref(np.column_stack([M, v]), p)
    d = W.shape[0]
    if pivots and pivots[-1] == d:
        return None
    coeffs = np.zeros(d, dtype=np.int64)
    for i, c in enumerate(pivots):
        coeffs[c] = R[i, d]
    return coeffs @ W % p


def nilpotency_index(A: GFMatrix) -> Optional[int]:
    """Least k with A^k = 0, or None."""
    n = A.rows
    P = GFMatrix.identity(A.p, n)
    for k in range(1, n + 1):
        P = P @ A
        if P.is_zero():
            return k
    return None if n else 1


def is_nilpotent(A: GFMatrix) -> bool:
    return nilpotency_index(A) is not None


def _require_nilpotent(A: GFMatrix):
    if A.rows != A.cols:
        raise DimensionMismatch(f"matrix must be square, got {A.shape}")
    if not is_nilpotent(A):
        raise NotNilpotent(f"A^{A.rows} != 0", A.rows)


@dataclass(frozen=True)
class JordanChainBasis:
    p: int
    n: int
    chains: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(ch) for ch in self.chains)

    def vectors(self) -> list[tuple[int, ...]]:
        return [v for ch in self.chains for v in ch]

    def to_dict(self) -> dict:
        return {"prime": self.p, "chains": [[list(v) for v in ch] for ch in self.chains]}


def _make_chain_basis(p: int, n: int, chains) -> JordanChainBasis:
    chains = sorted(chains, key=len, reverse=True)
    return JordanChainBasis(
        p, n, tuple(tuple(tuple(int(x) for x in v) for v in ch) for ch in chains)
    )


def _chains(M: np.ndarray, p: int) -> list[list[np.ndarray]]:
    n = M.shape[0]
    if n == 0:
        return []
    W, pivots = _rref(M.T, p)
    W = W[: len(pivots)]
    if not pivots:
        return [[row] for row in np.eye(n, dtype=np.int64)]

    # restriction to the image, in coordinates of its echelon basis
    inner = _chains((M @ W.T % p)[pivots, :], p)
    chains = [[c @ W % p for c in ch] for ch in inner]
    A = GFMatrix(p, M)
    for ch in chains:
        ch.append(preimage_vector(A, ch[-1]))

    spanned = np.array([ch[0] for ch in chains], dtype=np.int64).reshape(len(chains), n)
    r = _rank(spanned, p)
    for k in _null_basis(M, p):
        trial = np.vstack([spanned, k])
        if _rank(trial, p) > r:
            chains.append([k])
            spanned, r = trial, r + 1
    chains.sort(key=len, reverse=True)
    return chains


def compute_jordan_chains(A: GFMatrix) -> JordanChainBasis:
    _require_nilpotent(A)
    chains = _chains(A.entries, A.p)
    return _make_chain_basis(A.p, A.rows, chains)


def kernel_dimensions(A: GFMatrix) -> list[int]:
    """dim ker A^i for i = 1, 2, ... up to the nilpotency index."""
    _require_nilpotent(A)
    n = A.rows
    dims = []
    P = GFMatrix.identity(A.p, n)
    while not dims or dims[-1] < n:
        P = P @ A
        dims.append(n - rank(P))
    return dims


def block_partition_oracle(A: GFMatrix) -> tuple[int, ...]:
    dims = kernel_dimensions(A)
    at_least = [m - prev for m, prev in zip(dims, [0] + dims[:-1])]
    return conjugate_partition(at_least)


def verify_chain_basis(A: GFMatrix, B: JordanChainBasis) -> Verdict:
    p, n = A.p, A.rows
    if B.p != p or B.n != n:
        raise DimensionMismatch("chain basis and matrix disagree on prime or dimension")
    vecs = np.array(B.vectors(), dtype=np.int64).reshape(-1, n) % p
    if vecs.shape[0] != n or (~vecs.any(axis=1)).any() or _rank(vecs, p) != n:
        return Verdict(False, "not a basis")
    for t, ch in enumerate(B.chains, start=1):
        for i in range(1, len(ch)):
            if not np.array_equal(A.apply(ch[i]), np.asarray(ch[i - 1]) % p):
                return Verdict(False, f"φ action violated at ({t},{i + 1})")
        if A.apply(ch[0]).any():
            return Verdict(False, f"φ action violated at ({t},1)")
    return Verdict(True)


# -- generators ---------------------------------------------------------------

def jordan_block(k: int) -> np.ndarray:
    return np.eye(k, k, 1, dtype=np.int64)


def canonical_blocks(partition: Sequence[int], p: int) -> GFMatrix:
    """Block-diagonal nilpotent matrix with superdiagonal Jordan blocks."""
    parts = as_partition(partition)
    n = sum(parts)
    out = np.zeros((n, n), dtype=np.int64)
    at = 0
    for k in parts:
        out[at:at + k, at:at + k] = jordan_block(k)
        at += k
    return GFMatrix(p, out)


def inverse(A: GFMatrix) -> GFMatrix:
    n = A.rows
    R, pivots = _rref(np.hstack([A.entries, np.eye(n, dtype=np.int64)]), A.p)
    if pivots[:n] != list(range(n)):
        raise InputError("matrix is singular")
    return GFMatrix(A.p, R[:, n:])


def random_invertible(p: int, n: int, rng: np.random.Generator) -> GFMatrix:
    while True:
        M = rng.integers(0, p, size=(n, n))
        if _rank(M, p) == n:
            return GFMatrix(p, M)


def random_nilpotent(p: int, n: int, rng: np.random.Generator) -> GFMatrix:
    """Random strictly upper triangular matrix conjugated by a random invertible one.

    The fill density of the triangle is itself random so that all block
    structures, not just the generic single block, show up.
    """
    density = rng.random()
    U = rng.integers(1, p, size=(n, n)) * (rng.random((n, n)) < density)
    U = np.triu(U, 1)
    P = random_invertible(p, n, rng)
    return P @ GFMatrix(p, U) @ inverse(P)


def all_matrices(p: int, n: int):
    """Every n x n matrix over GF(p), in lexicographic order of entries."""
    total = p ** (n * n)
    digits = np.array([p ** e for e in range(n * n - 1, -1, -1)], dtype=np.int64)
    for code in range(total):
        yield GFMatrix(p, (code // digits % p).reshape(n, n))
