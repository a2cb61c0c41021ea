"""Exact arithmetic and linear algebra over a prime field F_p.

Everything downstream (degree tables, GRS duality, transfer matrices,
protocol simulation) runs on top of this module.  Matrices are plain
numpy ``int64`` arrays with entries kept canonically in ``[0, p)``; a
:class:`FieldContext` carries the modulus and provides the operations.

The context and all arrays it touches are treated as immutable; every
operation returns fresh arrays, so concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "FieldContext",
    "SingularMatrixError",
    "DuplicatePointError",
    "ZeroPointError",
    "is_prime",
    "next_prime",
    "element_of_order",
]


class SingularMatrixError(ValueError):
    """A square system had no unique solution."""


class DuplicatePointError(ValueError):
    """Evaluation points must be pairwise distinct."""


class ZeroPointError(ValueError):
    """Evaluation points must be nonzero."""


# Deterministic Miller-Rabin witnesses, valid for all n < 3,317,044,064,679,887,385,961,981.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with fixed witnesses)."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def element_of_order(order: int, p: int) -> int:
    """Smallest element of multiplicative order exactly ``order`` in F_p.

    Requires ``order`` to divide p - 1.
    """
    if (p - 1) % order != 0:
        raise ValueError(f"order {order} does not divide p-1 = {p - 1}")
    factors = _prime_factors(order)
    for g in range(2, p):
        if pow(g, order, p) != 1:
            continue
        if all(pow(g, order // f, p) != 1 for f in factors):
            return g
    raise ValueError(f"no element of order {order} in F_{p}")


@dataclass(frozen=True)
class FieldContext:
    """Prime field F_p with exact matrix algebra.

    The modulus must be an odd prime with p < 2^31 so that single
    products fit comfortably in int64; accumulated matrix products are
    chunked to stay in range for any admissible p.
    """

    p: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0:
            raise ValueError(f"modulus must be an odd prime >= 3, got {self.p}")
        if self.p >= 2**31:
            raise ValueError(f"modulus must be < 2^31, got {self.p}")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    # -- scalar arithmetic -------------------------------------------------

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(x, -1, self.p)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(x), -e, self.p)
        return pow(x % self.p, e, self.p)

    # -- arrays ------------------------------------------------------------

    def asarray(self, data) -> np.ndarray:
        """Canonicalize to an int64 array with entries in [0, p)."""
        return np.asarray(data, dtype=np.int64) % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def matmul(self, a, b) -> np.ndarray:
        """Exact A @ B mod p, chunking the inner dimension against overflow."""
        a = self.asarray(a)
        b = self.asarray(b)
        if a.shape[-1] != b.shape[0]:
            raise ValueError(f"shape mismatch for matmul: {a.shape} x {b.shape}")
        chunk = max(1, (1 << 62) // (self.p * self.p))
        inner = a.shape[-1]
        if inner <= chunk:
            return (a @ b) % self.p
        acc = np.zeros(np.matmul(a[..., :1], b[:1]).shape, dtype=np.int64)
        for lo in range(0, inner, chunk):
            acc = (acc + a[..., lo:lo + chunk] @ b[lo:lo + chunk]) % self.p
        return acc

    def _eliminate(self, aug: np.ndarray, n: int) -> tuple[np.ndarray, int]:
        """In-place Gauss-Jordan on the first n columns; returns (aug, rank).

        Pivot choice is the lowest row index with a nonzero entry, which
        fixes determinism (arithmetic is exact, so any pivot works).
        """
        p = self.p
        rank = 0
        for col in range(n):
            sub = aug[rank:, col]
            nz = np.nonzero(sub)[0]
            if nz.size == 0:
                continue
            piv = rank + int(nz[0])
            if piv != rank:
                aug[[rank, piv]] = aug[[piv, rank]]
            aug[rank] = aug[rank] * self.inv(int(aug[rank, col])) % p
            hits = np.nonzero(aug[:, col])[0]
            hits = hits[hits != rank]
            if hits.size:
                aug[hits] = (aug[hits] - np.outer(aug[hits, col], aug[rank])) % p
            rank += 1
            if rank == aug.shape[0]:
                break
        return aug, rank

    def mat_rank(self, a) -> int:
        a = self.asarray(a).copy()
        if a.size == 0:
            return 0
        _, rank = self._eliminate(a, a.shape[1])
        return rank

    def mat_solve(self, a, b) -> np.ndarray:
        """Solve A X = B for square A; raises SingularMatrixError otherwise."""
        a = self.asarray(a)
        b = self.asarray(b)
        if a.shape[0] != a.shape[1]:
            raise ValueError(f"matrix must be square, got {a.shape}")
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        if b.shape[0] != a.shape[0]:
            raise ValueError(f"right-hand side has {b.shape[0]} rows, expected {a.shape[0]}")
        n = a.shape[0]
        aug, rank = self._eliminate(np.hstack([a, b]).copy(), n)
        if rank < n:
            raise SingularMatrixError(f"matrix of rank {rank} < {n}")
        return aug[:, n:]

    def mat_inverse(self, a) -> np.ndarray:
        a = self.asarray(a)
        return self.mat_solve(a, self.identity(a.shape[0]))

    def vandermonde(self, points: Sequence[int], exponents: Sequence[int]) -> np.ndarray:
        """Matrix with entry (i, j) = points[i] ** exponents[j] mod p."""
        pts = [x % self.p for x in points]
        if any(x == 0 for x in pts):
            raise ZeroPointError("evaluation points must be nonzero")
        if len(set(pts)) != len(pts):
            raise DuplicatePointError("evaluation points must be distinct")
        exps = list(exponents)
        if len(set(exps)) != len(exps):
            raise ValueError("exponents must be pairwise distinct")
        return np.array([[pow(x, e, self.p) for e in exps] for x in pts], dtype=np.int64)
