"""Exact dense linear algebra over a :mod:`modular_g2.fields` field.

Gauss-Jordan elimination with first-nonzero pivoting, left to right.  Over
prime fields rows are processed in batches: each batch is first cleared
against the pivots found so far (one BLAS product), then reduced on its own,
so systems of ~10^4 equations stay cheap.  Over GF(p)(t) a plain row loop
over Python lists is used and zero entries are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .fields import Field, PrimeField, mulmod

_BATCH = 256


def _reduce_block_prime(X: np.ndarray, p: int, skip: set[int]) -> tuple[np.ndarray, list[int]]:
    R = X.copy()
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        if c in skip:
            continue
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), p - 2, p) if p > 2 else 1
        if inv != 1:
            R[r] = R[r] * inv % p
        col = R[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            R[rows] = (R[rows] - np.outer(col[rows], R[r])) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def _rref_rows_prime(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = np.asarray(A, dtype=np.int64) % p
    m, n = A.shape
    basis = np.zeros((0, n), dtype=np.int64)
    pivots: list[int] = []
    for start in range(0, m, _BATCH):
        X = A[start:start + _BATCH]
        if pivots:
            X = (X - mulmod(X[:, pivots], basis, p)) % p
        if not X.any():
            continue
        Y, new = _reduce_block_prime(X, p, set(pivots))
        if new:
            if pivots:
                basis = (basis - mulmod(basis[:, new], Y, p)) % p
            basis = np.vstack([basis, Y])
            pivots = pivots + new
            order = np.argsort(pivots, kind="stable")
            basis = basis[order]
            pivots = [pivots[i] for i in order]
        if len(pivots) == n:
            break
    return basis, pivots


def _rref_rows_generic(A: np.ndarray, F: Field) -> tuple[np.ndarray, list[int]]:
    rows = [list(r) for r in np.asarray(A, dtype=object)]
    m = len(rows)
    n = A.shape[1]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        k = next((i for i in range(r, m) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        piv = rows[r]
        inv = F.inv(piv[c])
        if inv != 1:
            piv = [x * inv if x else x for x in piv]
            rows[r] = piv
        support = [j for j in range(c, n) if piv[j]]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            for j in support:
                row[j] = row[j] - f * piv[j]
        pivots.append(c)
        r += 1
    out = F.zeros((r, n))
    for i in range(r):
        out[i, :] = rows[i]
    return out, pivots


def rref_rows(A, F: Field) -> tuple[np.ndarray, list[int]]:
    """Nonzero rows of the reduced row-echelon form of ``A`` and its pivot columns."""
    A = F.check_array(A, ndim=2)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return F.zeros((0, A.shape[1])), []
    if isinstance(F, PrimeField):
        return _rref_rows_prime(A, F.p)
    return _rref_rows_generic(A, F)


def rref(A, F: Field) -> tuple[np.ndarray, int]:
    """Canonical RREF of ``A`` (same shape, zero rows last) and the rank."""
    A = F.check_array(A, ndim=2)
    R, pivots = rref_rows(A, F)
    out = F.zeros(A.shape)
    out[: len(pivots)] = R
    return out, len(pivots)


def rank(A, F: Field) -> int:
    return len(rref_rows(A, F)[1])


def kernel_basis(A, F: Field) -> "Subspace":
    """The null space ``{v : A v = 0}`` as a :class:`Subspace`."""
    A = F.check_array(A, ndim=2)
    n = A.shape[1]
    R, pivots = rref_rows(A, F)
    free = [j for j in range(n) if j not in set(pivots)]
    K = F.zeros((len(free), n))
    for i, j in enumerate(free):
        K[i, j] = F.one_value
        for r, pc in enumerate(pivots):
            if F.nonzero(R[r, j]):
                K[i, pc] = F.reduce(-R[r, j])
    return Subspace.span(F, n, K)


def solve(A, b, F: Field):
    """One solution of ``A x = b``, or ``None`` if the system is inconsistent."""
    A = F.check_array(A, ndim=2)
    b = F.check_array(b, ndim=1)
    if A.shape[0] != b.shape[0]:
        raise ValueError(f"shape mismatch: {A.shape} vs {b.shape}")
    m, n = A.shape
    aug = F.zeros((m, n + 1))
    aug[:, :n] = A
    aug[:, n] = b
    R, pivots = rref_rows(aug, F)
    if pivots and pivots[-1] == n:
        return None
    x = F.zeros(n)
    for r, c in enumerate(pivots):
        x[c] = R[r, n]
    return x


def inverse(A, F: Field) -> np.ndarray:
    A = F.check_array(A, ndim=2)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = F.zeros((n, 2 * n))
    aug[:, :n] = A
    aug[:, n:] = F.eye(n)
    R, pivots = rref_rows(aug, F)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return R[:, n:]


@dataclass(eq=False)
class Subspace:
    """A subspace of ``F^ambient_dim`` stored by its canonical RREF basis (rows)."""

    field: Field
    ambient_dim: int
    basis: np.ndarray
    pivots: list[int] = dc_field(default_factory=list)

    @classmethod
    def span(cls, F: Field, ambient_dim: int, vectors) -> "Subspace":
        vecs = F.asarray(vectors) if len(vectors) else F.zeros((0, ambient_dim))
        vecs = vecs.reshape(-1, ambient_dim)
        R, pivots = rref_rows(vecs, F)
        return cls(F, ambient_dim, R, pivots)

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, F.zeros((0, n)), [])

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, F.eye(n), list(range(n)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return self.dim

    def _check(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def reduce(self, v) -> np.ndarray:
        """Reduce ``v`` (a vector or a stack of row vectors) modulo this subspace."""
        F = self.field
        v = F.asarray(v)
        if not self.pivots:
            return v
        if v.ndim == 1:
            return F.reduce(v - F.matmul(v[self.pivots][None, :], self.basis)[0])
        return F.reduce(v - F.matmul(v[:, self.pivots], self.basis))

    def contains(self, v) -> bool:
        F = self.field
        v = F.asarray(v)
        if v.ndim == 1:
            v = v[None, :]
        return not F.nonzero(self.reduce(v)).any()

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` (or rows of ``v``) in the RREF basis; raises if outside."""
        F = self.field
        v = F.asarray(v)
        if not self.contains(v):
            raise ValueError("vector does not lie in the subspace")
        if v.ndim == 1:
            return v[self.pivots].copy()
        return v[:, self.pivots].copy()

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        F = self.field
        if not other.dim:
            return self
        stacked = np.concatenate([self.basis, other.basis], axis=0)
        return Subspace.span(F, self.ambient_dim, stacked)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        F = self.field
        if not self.dim or not other.dim:
            return Subspace.zero(F, self.ambient_dim)
        # a A = b B  <=>  (a, -b) in ker [A; -B]^T
        stacked = np.concatenate([self.basis, F.reduce(-other.basis)], axis=0)
        ker = kernel_basis(stacked.T, F)
        if not ker.dim:
            return Subspace.zero(F, self.ambient_dim)
        coeffs = ker.basis[:, : self.dim]
        return Subspace.span(F, self.ambient_dim, F.matmul(coeffs, self.basis))

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return not self.dim or other.contains(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.field.equal(self.basis, other.basis)
        )

    def __hash__(self):
        return id(self)

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field!r})"


def subspace_ops(A: Subspace, B: Subspace, op: str):
    """``op`` in ``{"sum", "intersect", "contains", "equals"}``."""
    if op == "sum":
        return A + B
    if op == "intersect":
        return A.intersect(B)
    if op == "contains":
        return B.issubspace(A)
    if op == "equals":
        A._check(B)
        return A == B
    raise ValueError(f"unknown subspace operation {op!r}")


def column_space(A, F: Field) -> Subspace:
    A = F.check_array(A, ndim=2)
    return Subspace.span(F, A.shape[0], A.T)


def stack_constraints(F: Field, blocks: Sequence[np.ndarray]) -> np.ndarray:
    blocks = [F.asarray(b) for b in blocks if len(b)]
    return np.concatenate(blocks, axis=0) if blocks else F.zeros((0, 0))


def iter_projective_points(F: PrimeField, n: int) -> Iterable[np.ndarray]:
    """Nonzero vectors of GF(p)^n whose first nonzero coordinate is 1, lexicographically."""
    import itertools

    p = F.p
    for lead in range(n):
        rest = n - lead - 1
        for tail in itertools.product(range(p), repeat=rest):
            v = np.zeros(n, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v
