"""Small counting helpers: partitions and Gaussian binomials."""

from __future__ import annotations

from typing import Iterable


def conjugate_partition(parts: Iterable[int]) -> tuple[int, ...]:
    """Transpose of a Young diagram.

    >>> conjugate_partition([3, 1])
    (2, 1, 1)
    """
    parts = sorted((p for p in parts if p > 0), reverse=True)
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


def as_partition(parts: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(parts, reverse=True))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspace_count(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def format_partition(parts: Iterable[int]) -> str:
    return "(" + ",".join(str(p) for p in parts) + ")"


def parse_partition(text: str) -> tuple[int, ...]:
    try:
        parts = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise ValueError(f"bad partition {text!r}") from None
    if not parts or any(p <= 0 for p in parts):
        raise ValueError(f"bad partition {text!r}")
    return as_partition(parts)
