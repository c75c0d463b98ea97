"""Finite-dimensional algebras given by structure constants.

Conventions used throughout the package:

* ``constants[i, j, k]`` is the coefficient of ``b_k`` in ``b_i b_j``.
* Linear maps act on column vectors; ``matrix[a, b]`` is the coefficient of
  the ``a``-th target basis vector in the image of the ``b``-th source one.
* For an algebra regarded as a Lie algebra the table *is* the bracket, and
  ``ad(x)`` is left multiplication.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .fields import Field, PrimeField, parse_field_spec, make_field
from .linalg import Subspace, iter_projective_points, kernel_basis, rank, solve


def einsum(F: Field, subscripts: str, *operands) -> np.ndarray:
    ops = [np.asarray(o, dtype=F.dtype) for o in operands]
    return F.reduce(np.einsum(subscripts, *ops, optimize=len(ops) > 2 and F.dtype is not object))


def combination_label(vec, labels: Sequence[str], F: Field) -> str:
    """Render ``vec`` as a linear combination of ``labels``."""
    parts = []
    for c, name in zip(np.asarray(vec).reshape(-1), labels):
        if not F.nonzero(np.asarray([c]))[0]:
            continue
        s = F.render(c)
        if s == "1":
            parts.append(name)
        elif isinstance(F, PrimeField) and int(c) == F.p - 1:
            parts.append("-" + name)
        else:
            parts.append(f"{s}*{name}" if " " not in s else f"({s})*{name}")
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        out += " - " + part[1:] if part.startswith("-") else " + " + part
    return out


class StructureTable:
    """An ``n``-dimensional algebra over ``field`` by its ``n^3`` structure constants."""

    def __init__(self, field: Field, constants, labels: Sequence[str] | None = None,
                 unit_index: int | None = None):
        c = field.asarray(constants)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise ValueError(f"structure constants must have shape (n, n, n), got {c.shape}")
        self.field = field
        self.constants = c
        n = c.shape[0]
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(n)]
        if len(self.labels) != n:
            raise ValueError("one label per basis element required")
        self.unit_index = unit_index
        if unit_index is not None:
            e = field.zeros((n, n))
            e[:] = field.eye(n)
            if not (field.equal(c[unit_index], e) and field.equal(c[:, unit_index], e)):
                raise ValueError(f"basis element {unit_index} is not a two-sided unit")

    @property
    def dim(self) -> int:
        return self.constants.shape[0]

    def __repr__(self):
        return f"StructureTable(dim={self.dim}, field={self.field!r})"

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one_value
        return v

    def vector(self, coeffs: dict) -> np.ndarray:
        """Vector from ``{label: coefficient}``."""
        F = self.field
        v = F.zeros(self.dim)
        for name, c in coeffs.items():
            i = self.labels.index(name)
            v[i] = F.reduce(F.scalar_array(c) + v[i])
        return v

    def multiply(self, x, y) -> np.ndarray:
        F = self.field
        x = F.check_array(x, ndim=1)
        y = F.check_array(y, ndim=1)
        if x.shape[0] != self.dim or y.shape[0] != self.dim:
            raise ValueError("vector dimension does not match the algebra")
        return einsum(F, "i,j,ijk->k", x, y, self.constants)

    def bracket(self, x, y) -> np.ndarray:
        return self.field.reduce(self.multiply(x, y) - self.multiply(y, x))

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        return einsum(self.field, "i,ijk->kj", self.field.asarray(x), self.constants)

    def right_matrix(self, x) -> np.ndarray:
        """Matrix of ``y -> y x``."""
        return einsum(self.field, "j,ijk->ki", self.field.asarray(x), self.constants)

    def ad_matrix(self, x) -> np.ndarray:
        """Matrix of ``y -> xy - yx``; for a bracket table use :meth:`left_matrix`."""
        return self.field.reduce(self.left_matrix(x) - self.right_matrix(x))

    def ad_matrices(self) -> np.ndarray:
        """``ad(b_i)`` for the bracket given by the table itself, shape ``(n, n, n)``."""
        return np.ascontiguousarray(self.constants.transpose(0, 2, 1))

    def commutator_table(self, labels=None) -> "StructureTable":
        c = self.field.reduce(self.constants - self.constants.transpose(1, 0, 2))
        return StructureTable(self.field, c, labels or self.labels)

    def product_matrix(self) -> np.ndarray:
        """The multiplication as an ``n x n^2`` matrix on ``b_i (x) b_j``."""
        n = self.dim
        return np.ascontiguousarray(self.constants.reshape(n * n, n).T)

    def change_basis(self, P, labels=None) -> "StructureTable":
        """Table in the basis given by the columns of invertible ``P``."""
        from .linalg import inverse

        F = self.field
        P = F.check_array(P, ndim=2)
        Pinv = inverse(P, F)
        c = einsum(F, "ai,bj,abc,kc->ijk", P, P, self.constants, Pinv)
        return StructureTable(F, c, labels or [f"b{i}'" for i in range(self.dim)])

    def to_dict(self) -> dict:
        F = self.field
        n = self.dim
        triples = []
        nz = F.nonzero(self.constants)
        for i, j, k in zip(*np.nonzero(nz)):
            triples.append([int(i), int(j), int(k), F.render(self.constants[i, j, k])])
        return {
            "field": F.descriptor(),
            "dim": n,
            "unit": self.unit_index,
            "labels": list(self.labels),
            "constants": triples,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "StructureTable":
        fd = data["field"]
        F = make_field(fd["kind"], int(fd["p"]))
        n = int(data["dim"])
        c = F.zeros((n, n, n))
        for i, j, k, value in data["constants"]:
            c[i, j, k] = F.parse(value) if isinstance(value, str) else F.from_int(value)
        return cls(F, c, data.get("labels"), data.get("unit"))

    @classmethod
    def from_json(cls, text: str) -> "StructureTable":
        return cls.from_dict(json.loads(text))


def multiply(A: StructureTable, x, y) -> np.ndarray:
    return A.multiply(x, y)


@dataclass
class LinearMapRep:
    """A linear map between based spaces; ``matrix`` has shape ``(target_dim, source_dim)``."""

    field: Field
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = self.field.check_array(self.matrix, ndim=2)

    @property
    def source_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def target_dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v) -> np.ndarray:
        return self.field.matmul(self.matrix, self.field.asarray(v))

    def __matmul__(self, other: "LinearMapRep") -> "LinearMapRep":
        return LinearMapRep(self.field, self.field.matmul(self.matrix, other.matrix))

    @property
    def rank(self) -> int:
        return rank(self.matrix, self.field)

    @property
    def is_injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def is_surjective(self) -> bool:
        return self.rank == self.target_dim

    def kernel(self) -> Subspace:
        return kernel_basis(self.matrix, self.field)


@dataclass
class ModuleAction:
    """A representation: one ``m x m`` operator per basis element of ``algebra``."""

    algebra: StructureTable
    operators: np.ndarray
    labels: list[str] | None = None

    def __post_init__(self):
        F = self.algebra.field
        self.operators = F.check_array(self.operators, ndim=3)
        if self.operators.shape[0] != self.algebra.dim:
            raise ValueError("one operator per algebra basis element required")

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def module_dim(self) -> int:
        return self.operators.shape[1]


@dataclass
class Grading:
    group_rank: int
    degrees: list[tuple[int, ...]]

    def __post_init__(self):
        self.degrees = [tuple(int(x) for x in d) for d in self.degrees]
        if any(len(d) != self.group_rank for d in self.degrees):
            raise ValueError("every degree must have length group_rank")


@dataclass
class CheckResult:
    """Outcome of an exhaustive check; ``witness`` is set whenever ``ok`` is false."""

    ok: bool
    witness: tuple | None = None
    detail: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _first_nonzero(F: Field, arr: np.ndarray):
    nz = F.nonzero(arr)
    idx = np.argwhere(nz)
    return None if idx.size == 0 else tuple(int(x) for x in idx[0])


def check_identity(A: StructureTable, identity: str) -> CheckResult:
    """Exhaustive check of ``anticommutative``, ``jacobi`` or ``malcev`` on basis tuples.

    The Jacobi and Malcev tests read the table as the product ``xy``.  Malcev
    is checked in its fully linearised form
    ``J(x,y,wz) + J(w,y,xz) = J(x,y,z)w + J(w,y,z)x``, which is equivalent
    to ``J(x,y,xz) = J(x,y,z)x`` away from characteristic 2.
    """
    F = A.field
    c = A.constants
    n = A.dim
    if identity == "anticommutative":
        sym = F.reduce(c + c.transpose(1, 0, 2))
        diag = c[np.arange(n), np.arange(n)]
        w = _first_nonzero(F, diag)
        if w is not None:
            return CheckResult(False, (w[0], w[0]), {"value": F.render_array(diag[w[0]])})
        w = _first_nonzero(F, sym)
        if w is not None:
            return CheckResult(False, w[:2], {"value": F.render_array(sym[w[0], w[1]])})
        return CheckResult(True)
    if identity == "jacobi":
        J = _jacobian_tensor(A)
        w = _first_nonzero(F, J)
        if w is not None:
            i, j, l = w[:3]
            return CheckResult(False, (i, j, l), {"value": F.render_array(J[i, j, l]),
                                                  "labels": [A.labels[i], A.labels[j], A.labels[l]]})
        return CheckResult(True)
    if identity == "malcev":
        J = _jacobian_tensor(A)
        lhs = F.reduce(einsum(F, "wzm,xymk->xywzk", c, J) + einsum(F, "xzm,wymk->xywzk", c, J))
        rhs = F.reduce(einsum(F, "xyzm,mwk->xywzk", J, c) + einsum(F, "wyzm,mxk->xywzk", J, c))
        diff = F.reduce(lhs - rhs)
        w = _first_nonzero(F, diff)
        if w is not None:
            return CheckResult(False, w[:4], {"value": F.render_array(diff[w[:4]])})
        return CheckResult(True)
    raise ValueError(f"unknown identity {identity!r}")


def _jacobian_tensor(A: StructureTable) -> np.ndarray:
    """``J[i,j,l] = (b_i b_j) b_l + (b_j b_l) b_i + (b_l b_i) b_j``."""
    F = A.field
    c = A.constants
    return F.reduce(
        einsum(F, "ijm,mlk->ijlk", c, c)
        + einsum(F, "jlm,mik->ijlk", c, c)
        + einsum(F, "lim,mjk->ijlk", c, c)
    )


def jacobian(A: StructureTable, x, y, z) -> np.ndarray:
    F = A.field
    m = A.multiply
    return F.reduce(m(m(x, y), z) + m(m(y, z), x) + m(m(z, x), y))


# ---------------------------------------------------------------------------
# Lie algebras of matrices
# ---------------------------------------------------------------------------

class LinearLieAlgebra:
    """A Lie algebra of ``n x n`` matrices under the commutator.

    ``space`` is a subspace of the flattened ``n^2``-dimensional matrix
    space and ``table`` records the bracket on its RREF basis.
    """

    def __init__(self, field: Field, n: int, space: Subspace, labels=None):
        self.field = field
        self.n = n
        self.space = space
        d = space.dim
        mats = space.basis.reshape(d, n, n)
        F = field
        if d:
            prod = einsum(F, "aij,bjk->abik", mats, mats)
            br = F.reduce(prod - prod.transpose(1, 0, 2, 3)).reshape(d * d, n * n)
            if not space.contains(br):
                raise ValueError("matrix space is not closed under the commutator")
            coords = space.coordinates(br).reshape(d, d, d)
        else:
            coords = F.zeros((0, 0, 0))
        self.table = StructureTable(F, coords, labels or [f"D{i}" for i in range(d)])

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def matrices(self) -> np.ndarray:
        return self.space.basis.reshape(self.dim, self.n, self.n)

    def element(self, coords) -> np.ndarray:
        F = self.field
        return F.matmul(F.asarray(coords)[None, :], self.space.basis)[0].reshape(self.n, self.n)

    def coordinates(self, matrix) -> np.ndarray:
        m = self.field.asarray(matrix)
        if m.ndim == 3:
            return self.space.coordinates(m.reshape(m.shape[0], -1))
        return self.space.coordinates(m.reshape(-1))

    def contains(self, matrix) -> bool:
        m = self.field.asarray(matrix)
        return self.space.contains(m.reshape(-1, self.n * self.n))

    def subspace_of(self, matrices) -> Subspace:
        """Span of ``matrices`` in this algebra's coordinates."""
        m = self.field.asarray(matrices)
        return Subspace.span(self.field, self.dim, self.coordinates(m.reshape(-1, self.n, self.n)))


def linear_lie_algebra(F: Field, n: int, matrices, labels=None) -> LinearLieAlgebra:
    mats = F.asarray(matrices).reshape(-1, n * n)
    return LinearLieAlgebra(F, n, Subspace.span(F, n * n, mats), labels)


def gl_table(F: Field, n: int) -> StructureTable:
    """``gl_n`` on the matrix units ``E_ij`` (index ``i*n + j``)."""
    c = F.zeros((n * n, n * n, n * n))
    one = F.one_value
    # [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    a, b = i * n + j, k * n + l
                    if j == k:
                        c[a, b, i * n + l] = F.reduce(c[a, b, i * n + l] + one)
                    if l == i:
                        c[a, b, k * n + j] = F.reduce(c[a, b, k * n + j] - one)
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return StructureTable(F, c, labels)


def _derivation_system(A: StructureTable) -> np.ndarray:
    F = A.field
    n = A.dim
    c = A.constants
    I = F.eye(n)
    E = (
        einsum(F, "ka,ijb->ijkab", I, c)
        - einsum(F, "bi,ajk->ijkab", I, c)
        - einsum(F, "bj,iak->ijkab", I, c)
    )
    return F.reduce(E).reshape(n ** 3, n * n)


def derivation_algebra(A: StructureTable) -> LinearLieAlgebra:
    """``Der(A)`` as the kernel of the Leibniz system (``n^3`` equations, ``n^2`` unknowns)."""
    K = kernel_basis(_derivation_system(A), A.field)
    return LinearLieAlgebra(A.field, A.dim, K)


def is_derivation(A: StructureTable, D) -> CheckResult:
    F = A.field
    D = F.check_array(D, ndim=2)
    c = A.constants
    lhs = einsum(F, "ijm,km->ijk", c, D)
    rhs = F.reduce(einsum(F, "ai,ajk->ijk", D, c) + einsum(F, "aj,iak->ijk", D, c))
    diff = F.reduce(lhs - rhs)
    w = _first_nonzero(F, diff)
    if w is not None:
        return CheckResult(False, w[:2])
    return CheckResult(True)


def inner_derivation(A: StructureTable, x, y) -> LinearMapRep:
    """``D_{x,y} = ad_[x,y] + [ad_x, ad_y]`` with ``ad_x(z) = xz - zx``."""
    F = A.field
    adx = A.ad_matrix(x)
    ady = A.ad_matrix(y)
    comm = F.reduce(F.matmul(adx, ady) - F.matmul(ady, adx))
    return LinearMapRep(F, F.reduce(A.ad_matrix(A.bracket(x, y)) + comm))


# ---------------------------------------------------------------------------
# ideals, series, quotients
# ---------------------------------------------------------------------------

def bracket_span(L: StructureTable, S: Subspace, T: Subspace) -> Subspace:
    F = L.field
    if not S.dim or not T.dim:
        return Subspace.zero(F, L.dim)
    prods = einsum(F, "ai,bj,ijk->abk", S.basis, T.basis, L.constants)
    return Subspace.span(F, L.dim, prods.reshape(-1, L.dim))


def derived_power(L: StructureTable, k: int) -> Subspace:
    S = Subspace.full(L.field, L.dim)
    for _ in range(k):
        S = bracket_span(L, S, S)
    return S


def derived_series(L: StructureTable, max_length: int = 64) -> list[Subspace]:
    """``[L^(0), L^(1), ...]`` up to and including the first repeated term."""
    series = [Subspace.full(L.field, L.dim)]
    for _ in range(max_length):
        nxt = bracket_span(L, series[-1], series[-1])
        series.append(nxt)
        if nxt.dim == series[-2].dim:
            break
    return series


def centralizer(L: StructureTable, S: Subspace) -> Subspace:
    """``{z : [s, z] = 0 for all s in S}``."""
    F = L.field
    n = L.dim
    if not S.dim:
        return Subspace.full(F, n)
    M = einsum(F, "si,ijk->skj", S.basis, L.constants).reshape(-1, n)
    return kernel_basis(M, F)


def center(L: StructureTable) -> Subspace:
    return centralizer(L, Subspace.full(L.field, L.dim))


def is_ideal(L: StructureTable, I: Subspace) -> bool:
    if not I.dim:
        return True
    F = L.field
    c = L.constants
    left = einsum(F, "ai,jik->ajk", I.basis, c).reshape(-1, L.dim)
    right = einsum(F, "ai,ijk->ajk", I.basis, c).reshape(-1, L.dim)
    return I.contains(left) and I.contains(right)


def ideal_closure(L: StructureTable, seed) -> Subspace:
    """Smallest two-sided ideal containing ``seed`` (vectors or a :class:`Subspace`)."""
    F = L.field
    n = L.dim
    c = L.constants
    S = seed if isinstance(seed, Subspace) else Subspace.span(F, n, F.asarray(seed).reshape(-1, n)
                                                               if len(seed) else F.zeros((0, n)))
    frontier = S.basis
    while frontier.shape[0] and S.dim < n:
        left = einsum(F, "ai,jik->ajk", frontier, c).reshape(-1, n)
        right = einsum(F, "ai,ijk->ajk", frontier, c).reshape(-1, n)
        new = S.reduce(np.concatenate([left, right], axis=0))
        fresh = Subspace.span(F, n, new)
        if not fresh.dim:
            break
        S = S + fresh
        frontier = fresh.basis
    return S


@dataclass
class SimplicityResult:
    """``simple`` is True, False, or None (undecided within the work bound)."""

    simple: bool | None
    witness: Subspace | None = None
    reason: str = ""
    points_checked: int = 0

    @property
    def status(self) -> str:
        return {True: "simple", False: "not simple", None: "undecided"}[self.simple]


def killing_form(L: StructureTable) -> np.ndarray:
    """``kappa(b_i, b_j) = tr(ad b_i ad b_j)``."""
    c = L.constants
    return einsum(L.field, "ilk,jkl->ij", c, c)


def is_simple(L: StructureTable, max_points: int = 10 ** 6) -> SimplicityResult:
    """Decide simplicity by spinning every projective point of a prime-field algebra.

    Non-simplicity is reported only with an explicit proper ideal (found from
    the center, the derived algebra, the radical of the Killing form, or a
    spin); simplicity only after every projective point has been spun to the
    whole algebra.  Over non-prime fields, or past ``max_points`` spins, the
    answer is ``None`` unless a witness turned up.
    """
    F = L.field
    n = L.dim
    if n == 0:
        return SimplicityResult(False, reason="zero algebra")
    if not F.nonzero(L.constants).any():
        w = Subspace.span(F, n, L.basis_vector(0)[None, :]) if n > 1 else None
        return SimplicityResult(False, w, reason="abelian")

    def proper(S: Subspace) -> bool:
        return 0 < S.dim < n

    Z = center(L)
    if proper(Z) and is_ideal(L, Z):
        return SimplicityResult(False, Z, reason="nonzero center")
    D = derived_power(L, 1)
    if proper(D):
        return SimplicityResult(False, D, reason="derived algebra is a proper ideal")
    rad = kernel_basis(killing_form(L), F)
    if proper(rad) and is_ideal(L, rad):
        return SimplicityResult(False, rad, reason="radical of the Killing form")
    checked = 0
    for i in range(n):
        S = ideal_closure(L, L.basis_vector(i)[None, :])
        checked += 1
        if proper(S):
            return SimplicityResult(False, S, reason=f"ideal generated by {L.labels[i]}", points_checked=checked)
    if not isinstance(F, PrimeField):
        return SimplicityResult(None, reason="exhaustive spinning needs a prime field", points_checked=checked)
    total = (F.p ** n - 1) // (F.p - 1)
    spun = 0
    for v in iter_projective_points(F, n):
        if spun >= max_points:
            return SimplicityResult(None, reason=f"work bound of {max_points} spins reached before all {total} points",
                                    points_checked=spun)
        S = ideal_closure(L, v[None, :])
        spun += 1
        if proper(S):
            return SimplicityResult(False, S, reason="ideal generated by a spun point", points_checked=spun)
    return SimplicityResult(True, reason=f"all {total} projective points generate the algebra", points_checked=spun)


def quotient(L: StructureTable, I: Subspace, labels=None) -> tuple[StructureTable, LinearMapRep]:
    """``L / I`` on the standard basis vectors outside the pivot set of ``I``."""
    if not is_ideal(L, I):
        raise ValueError("subspace is not an ideal")
    F = L.field
    C = I.complement_indices()
    n = L.dim
    c = L.constants
    sub = c[np.ix_(C, C)].reshape(-1, n)
    red = I.reduce(sub)[:, C].reshape(len(C), len(C), len(C))
    proj = I.reduce(F.eye(n))[:, C].T
    names = labels or [f"{L.labels[j]}+I" for j in C]
    return StructureTable(F, red, names), LinearMapRep(F, proj)


def subalgebra(L: StructureTable, S: Subspace, labels=None) -> StructureTable:
    """Table of the subalgebra ``S`` on its RREF basis; raises if ``S`` is not closed."""
    F = L.field
    prods = einsum(F, "ai,bj,ijk->abk", S.basis, S.basis, L.constants).reshape(-1, L.dim)
    coords = S.coordinates(prods).reshape(S.dim, S.dim, S.dim)
    names = labels or [combination_label(v, L.labels, F) for v in S.basis]
    return StructureTable(F, coords, names)


def inner_derivations(L: StructureTable) -> Subspace:
    """``ad(L)`` as a subspace of the flattened ``n x n`` matrices."""
    n = L.dim
    return Subspace.span(L.field, n * n, L.ad_matrices().reshape(n, n * n))


def unit_element(A: StructureTable):
    """The two-sided unit of ``A`` as a vector, or ``None``."""
    F = A.field
    n = A.dim
    c = A.constants
    left = c.transpose(1, 2, 0).reshape(n * n, n)   # (e b_j)_k
    right = c.transpose(0, 2, 1).reshape(n * n, n)  # (b_j e)_k, rows (j, k)
    rhs = F.eye(n).reshape(-1)
    M = np.concatenate([left, right], axis=0)
    b = np.concatenate([rhs, rhs])
    return solve(M, b, F)


# ---------------------------------------------------------------------------
# maps, representations, gradings
# ---------------------------------------------------------------------------

def check_homomorphism(f: LinearMapRep, A: StructureTable, B: StructureTable) -> CheckResult:
    """``f(b_i b_j) = f(b_i) f(b_j)`` on all basis pairs; reports rank and bijectivity."""
    F = A.field
    M = f.matrix
    if M.shape != (B.dim, A.dim):
        raise ValueError(f"map of shape {M.shape} cannot go from dim {A.dim} to dim {B.dim}")
    lhs = einsum(F, "ijk,lk->ijl", A.constants, M)
    rhs = einsum(F, "ai,bj,abl->ijl", M, M, B.constants)
    diff = F.reduce(lhs - rhs)
    r = f.rank
    detail = {"rank": r, "injective": r == A.dim, "surjective": r == B.dim}
    w = _first_nonzero(F, diff)
    if w is not None:
        return CheckResult(False, w[:2], detail)
    return CheckResult(True, None, detail)


def check_representation(act: ModuleAction) -> CheckResult:
    """``rho([b_i, b_j]) = [rho(b_i), rho(b_j)]`` on all basis pairs."""
    F = act.field
    R = act.operators
    prod = einsum(F, "iab,jbc->ijac", R, R)
    comm = F.reduce(prod - prod.transpose(1, 0, 2, 3))
    image = einsum(F, "ijk,kac->ijac", act.algebra.constants, R)
    diff = F.reduce(comm - image)
    w = _first_nonzero(F, diff)
    if w is not None:
        return CheckResult(False, w[:2])
    return CheckResult(True)


def matrix_power(F: Field, M, k: int) -> np.ndarray:
    M = F.asarray(M)
    result = F.eye(M.shape[0])
    base = M
    while k:
        if k & 1:
            result = F.matmul(result, base)
        base = F.matmul(base, base)
        k >>= 1
    return result


def verify_p_mapping(act: ModuleAction, pmap) -> CheckResult:
    """``rho(b_i)^p = rho(b_i^[p])`` with ``pmap[i]`` the coordinates of ``b_i^[p]``."""
    F = act.field
    p = F.characteristic
    pm = F.asarray(pmap)
    for i in range(act.algebra.dim):
        lhs = matrix_power(F, act.operators[i], p)
        rhs = einsum(F, "k,kab->ab", pm[i], act.operators)
        if not F.equal(lhs, rhs):
            return CheckResult(False, (i,))
    return CheckResult(True)


def verify_grading(L: StructureTable, g: Grading) -> CheckResult:
    """Check ``c_ijk != 0  =>  deg k = deg i + deg j``; ``detail['support']`` is supp."""
    if len(g.degrees) != L.dim:
        raise ValueError("one degree per basis element required")
    F = L.field
    deg = np.asarray(g.degrees, dtype=np.int64).reshape(L.dim, g.group_rank)
    for i, j, k in np.argwhere(F.nonzero(L.constants)):
        if not np.array_equal(deg[k], deg[i] + deg[j]):
            return CheckResult(False, (int(i), int(j), int(k)))
    support = sorted(set(g.degrees))
    return CheckResult(True, None, {"support": support})


def homogeneous_components(g: Grading) -> dict[tuple, list[int]]:
    comps: dict[tuple, list[int]] = {}
    for i, d in enumerate(g.degrees):
        comps.setdefault(d, []).append(i)
    return comps


def graded_derivations(L: StructureTable, g: Grading, alpha) -> Subspace:
    """Derivations of degree ``alpha`` (mapping ``L_beta`` into ``L_{beta+alpha}``)."""
    F = L.field
    n = L.dim
    alpha = np.asarray(alpha, dtype=np.int64)
    deg = np.asarray(g.degrees, dtype=np.int64)
    allowed = [a * n + b for a in range(n) for b in range(n) if np.array_equal(deg[a] - deg[b], alpha)]
    if not allowed:
        return Subspace.zero(F, n * n)
    E = _derivation_system(L)[:, allowed]
    K = kernel_basis(E, F)
    full = F.zeros((K.dim, n * n))
    full[:, allowed] = K.basis
    return Subspace.span(F, n * n, full)
