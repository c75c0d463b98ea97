"""Cayley algebras and their quadratic structure.

Norm, trace and polar form are never stored: they are read off the
multiplication from ``x^2 - t(x) x + q(x) 1 = 0``, which works uniformly in
every characteristic, including 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algkit import (
    CheckResult,
    LinearMapRep,
    StructureTable,
    check_homomorphism,
    combination_label,
    einsum,
    unit_element,
)
from .fields import Field, PrimeField
from .linalg import Subspace, kernel_basis, rank, solve

DEFAULT_SEED = 20240607

GOOD_BASIS = ["p1", "p2", "u1", "u2", "u3", "v1", "v2", "v3"]


def make_rng(seed: int | None = None) -> np.random.Generator:
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


@dataclass
class QuadraticData:
    """Trace and norm of the basis vectors plus the polar matrix ``b_q(b_i, b_j)``."""

    field: Field
    unit: np.ndarray
    trace: np.ndarray
    norm_values: np.ndarray
    polar: np.ndarray

    @cached_property
    def gram_upper(self) -> np.ndarray:
        """Upper-triangular ``G`` with ``q(x) = x^T G x``."""
        F = self.field
        n = self.trace.shape[0]
        G = F.zeros((n, n))
        for i in range(n):
            G[i, i] = self.norm_values[i]
            for j in range(i + 1, n):
                G[i, j] = self.polar[i, j]
        return G

    def t(self, x):
        F = self.field
        return F.reduce(F.matmul(F.asarray(x)[None, :], self.trace[:, None])[0, 0])

    def q(self, x):
        F = self.field
        x = F.asarray(x)
        return einsum(F, "i,ij,j->", x, self.gram_upper, x)[()]

    def norms(self, X) -> np.ndarray:
        """``q`` of each row of ``X``."""
        F = self.field
        X = F.asarray(X)
        return einsum(F, "mi,ij,mj->m", X, self.gram_upper, X)

    def b(self, x, y):
        F = self.field
        return einsum(F, "i,ij,j->", F.asarray(x), self.polar, F.asarray(y))[()]

    @property
    def polar_rank(self) -> int:
        return rank(self.polar, self.field)


class CayleyAlgebra:
    """An eight-dimensional unital composition table together with its origin."""

    def __init__(self, table: StructureTable, basis_kind: str = "good-basis"):
        if table.dim != 8:
            raise ValueError(f"a Cayley algebra has dimension 8, got {table.dim}")
        self.table = table
        self.basis_kind = basis_kind
        e = unit_element(table)
        if e is None:
            raise ValueError("table has no two-sided unit")
        self.unit = e

    @property
    def field(self) -> Field:
        return self.table.field

    @property
    def labels(self) -> list[str]:
        return self.table.labels

    def __repr__(self):
        return f"CayleyAlgebra({self.basis_kind}, {self.field!r})"

    def vector(self, coeffs: dict) -> np.ndarray:
        return self.table.vector(coeffs)

    def basis_vector(self, i) -> np.ndarray:
        if isinstance(i, str):
            i = self.labels.index(i)
        return self.table.basis_vector(i)

    def mul(self, x, y) -> np.ndarray:
        return self.table.multiply(x, y)

    @cached_property
    def quadratic(self) -> QuadraticData:
        return quadratic_data(self)


def _table1_entries():
    """``(row, column, [(coefficient, label)])`` for the nonzero products of the good-basis table."""
    e = []
    e.append(("p1", "p1", [(1, "p1")]))
    e.append(("p2", "p2", [(1, "p2")]))
    for i in (1, 2, 3):
        e.append(("p1", f"u{i}", [(1, f"u{i}")]))
        e.append((f"u{i}", "p2", [(1, f"u{i}")]))
        e.append(("p2", f"v{i}", [(1, f"v{i}")]))
        e.append((f"v{i}", "p1", [(1, f"v{i}")]))
        e.append((f"u{i}", f"v{i}", [(-1, "p1")]))
        e.append((f"v{i}", f"u{i}", [(-1, "p2")]))
    # u_i u_j = eps_ijk v_k and v_i v_j = eps_ijk u_k
    for (i, j, k) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        for a, b in (("u", "v"), ("v", "u")):
            e.append((f"{a}{i}", f"{a}{j}", [(1, f"{b}{k}")]))
            e.append((f"{a}{j}", f"{a}{i}", [(-1, f"{b}{k}")]))
    return e


def split_cayley(F: Field) -> CayleyAlgebra:
    """The split Cayley algebra on the good basis ``p1, p2, u1, u2, u3, v1, v2, v3``."""
    idx = {name: i for i, name in enumerate(GOOD_BASIS)}
    c = F.zeros((8, 8, 8))
    for row, col, terms in _table1_entries():
        for coef, lab in terms:
            c[idx[row], idx[col], idx[lab]] = F.from_int(coef)
    return CayleyAlgebra(StructureTable(F, c, GOOD_BASIS), "good-basis")


def quadratic_data(C: CayleyAlgebra) -> QuadraticData:
    """Trace, norm and polar form read off ``x^2 = t(x) x - q(x) 1`` on each basis vector."""
    F = C.field
    n = C.table.dim
    e = C.unit
    tr = F.zeros(n)
    nm = F.zeros(n)
    for i in range(n):
        x = C.table.basis_vector(i)
        x2 = C.mul(x, x)
        sol = solve(np.stack([x, e], axis=1), x2, F)
        if sol is None:
            raise ValueError(f"{C.labels[i]} is not a degree-2 algebra element: x^2 not in span(1, x)")
        if rank(np.stack([x, e]), F) == 2:
            tr[i] = sol[0]
            nm[i] = F.reduce(-sol[1])
        else:
            # x = lam * 1; then x^2 = lam x, t(x) = 2 lam, q(x) = lam^2
            lam = x[np.flatnonzero(F.nonzero(e))[0]] * F.inv(e[np.flatnonzero(F.nonzero(e))[0]])
            tr[i] = F.reduce(2 * lam)
            nm[i] = F.reduce(lam * lam)
    prod_trace = einsum(F, "ijk,k->ij", C.table.constants, tr)
    polar = F.reduce(einsum(F, "i,j->ij", tr, tr) - prod_trace)
    return QuadraticData(F, e, tr, nm, polar)


def conjugate(C: CayleyAlgebra, x) -> np.ndarray:
    """``x -> t(x) 1 - x``."""
    F = C.field
    x = F.asarray(x)
    return F.reduce(C.quadratic.t(x) * C.unit - x)


def conjugation_matrix(C: CayleyAlgebra) -> np.ndarray:
    F = C.field
    Q = C.quadratic
    return F.reduce(einsum(F, "a,b->ab", C.unit, Q.trace) - F.eye(8))


def trace_zero_subspace(C: CayleyAlgebra) -> Subspace:
    return kernel_basis(C.quadratic.trace[None, :], C.field)


def c0_bracket_algebra(C: CayleyAlgebra) -> StructureTable:
    """The commutator on the trace-zero subspace, in its RREF basis (characteristic not 2)."""
    F = C.field
    if F.characteristic == 2:
        raise ValueError("in characteristic 2 the unit is traceless; use c0_mod_unit")
    S = trace_zero_subspace(C)
    comm = C.table.commutator_table()
    prods = einsum(F, "ai,bj,ijk->abk", S.basis, S.basis, comm.constants).reshape(-1, 8)
    coords = S.coordinates(prods).reshape(S.dim, S.dim, S.dim)
    labels = [combination_label(v, C.labels, F) for v in S.basis]
    return StructureTable(F, coords, labels)


def c0_basis(C: CayleyAlgebra) -> np.ndarray:
    """Trace-zero RREF basis as rows (8-vectors)."""
    return trace_zero_subspace(C).basis


@dataclass
class ModUnitSpace:
    """``C^0 / F1`` in characteristic 2 with representatives and the induced form."""

    algebra: CayleyAlgebra
    c0: Subspace
    unit_line: Subspace  # in C^0 coordinates
    representatives: np.ndarray  # 6 x 8, rows are elements of C^0
    form: np.ndarray
    labels: list[str]

    @property
    def dim(self) -> int:
        return self.representatives.shape[0]

    def coordinates(self, v) -> np.ndarray:
        """Class of ``v`` (rows, elements of C^0) in the representative basis."""
        F = self.algebra.field
        v = F.asarray(v)
        single = v.ndim == 1
        c = self.c0.coordinates(v.reshape(-1, 8))
        red = self.unit_line.reduce(c)[:, self.unit_line.complement_indices()]
        return red[0] if single else red

    def induced(self, d) -> np.ndarray:
        """Matrix of the map ``C^0/F1 -> C^0/F1`` induced by an operator on ``C``."""
        F = self.algebra.field
        d = F.asarray(d)
        images = F.matmul(d, self.representatives.T).T  # rows d(w_j)
        return self.coordinates(images).T

    def in_sp(self, M) -> bool:
        F = self.algebra.field
        M = F.asarray(M)
        return F.is_zero_array(F.reduce(F.matmul(M.T, self.form) + F.matmul(self.form, M)))


def c0_mod_unit(C: CayleyAlgebra) -> ModUnitSpace:
    """The 6-dimensional space ``C^0/F1`` with the induced alternating form (characteristic 2)."""
    F = C.field
    if F.characteristic != 2:
        raise ValueError("c0_mod_unit is only meaningful in characteristic 2")
    c0 = trace_zero_subspace(C)
    if not c0.contains(C.unit):
        raise ValueError("unit is not traceless")
    ucoord = c0.coordinates(C.unit)
    line = Subspace.span(F, c0.dim, ucoord[None, :])
    idx = line.complement_indices()
    reps = c0.basis[idx]
    form = einsum(F, "ai,ij,bj->ab", reps, C.quadratic.polar, reps)
    if rank(form, F) != len(idx):
        raise RuntimeError("induced form on C^0/F1 is degenerate")
    labels = [combination_label(v, C.labels, F) for v in reps]
    return ModUnitSpace(C, c0, line, reps, form, labels)


def split_quaternions(F: Field) -> tuple[StructureTable, np.ndarray]:
    """``M_2(F)`` on ``E11, E12, E21, E22`` and the matrix of its adjugate involution."""
    names = ["E11", "E12", "E21", "E22"]
    c = F.zeros((4, 4, 4))
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    if j == k:
                        c[2 * i + j, 2 * k + l, 2 * i + l] = F.one_value
    inv = F.zeros((4, 4))
    inv[3, 0] = F.one_value
    inv[0, 3] = F.one_value
    inv[1, 1] = F.from_int(-1)
    inv[2, 2] = F.from_int(-1)
    return StructureTable(F, c, names), inv


def cayley_dickson_double(Q: StructureTable, involution, mu) -> CayleyAlgebra:
    """Double ``Q`` by ``(a,b)(c,d) = (ac + mu d'b, da + bc')`` with ``'`` the given involution."""
    F = Q.field
    mu = F.scalar_array(mu)
    if not F.nonzero(np.asarray([mu], dtype=F.dtype))[0]:
        raise ValueError("doubling parameter must be nonzero")
    if Q.dim != 4:
        raise ValueError("quaternion input must be 4-dimensional")
    J = F.asarray(involution)
    n = 4
    cq = Q.constants
    # bar(b_j) = sum_a J[a, j] b_a
    bar_prod = einsum(F, "aj,aik->jik", J, cq)  # bar(b_j) * b_i -> (j, i, k)
    prod_bar = einsum(F, "aj,iak->ijk", J, cq)  # b_i * bar(b_j)
    c = F.zeros((2 * n, 2 * n, 2 * n))
    for i in range(n):
        for j in range(n):
            # (q_i, 0)(q_j, 0) = (q_i q_j, 0)
            c[i, j, :n] = cq[i, j]
            # (q_i, 0)(0, q_j) = (0, q_j q_i)
            c[i, n + j, n:] = cq[j, i]
            # (0, q_i)(q_j, 0) = (0, q_i bar(q_j))
            c[n + i, j, n:] = prod_bar[i, j]
            # (0, q_i)(0, q_j) = (mu bar(q_j) q_i, 0)
            c[n + i, n + j, :n] = F.reduce(mu * bar_prod[j, i])
    labels = [f"({name},0)" for name in Q.labels] + [f"(0,{name})" for name in Q.labels]
    C = CayleyAlgebra(StructureTable(F, c, labels), "doubled")
    res = check_composition(C, samples=64)
    if not res.ok:
        raise ValueError(f"doubled table is not a composition algebra (witness {res.witness})")
    return C


def _pair_sums(F: Field, n: int) -> np.ndarray:
    rows = []
    for i in range(n):
        for j in range(i, n):
            v = F.zeros(n)
            v[i] = F.one_value
            v[j] = F.reduce(v[j] + F.one_value)
            rows.append(v)
    return np.stack(rows)


def check_composition(C: CayleyAlgebra, samples: int = 1000, seed: int | None = None) -> CheckResult:
    """``q(xy) = q(x)q(y)`` on all basis pairs, all pairs of basis-pair sums and random pairs."""
    F = C.field
    n = C.table.dim
    try:
        Q = quadratic_data(C)
    except ValueError as exc:
        return CheckResult(False, ("quadratic",), {"error": str(exc)})
    rng = make_rng(seed)
    used_seed = DEFAULT_SEED if seed is None else seed
    basis = F.eye(n)
    sums = _pair_sums(F, n)
    batches = [
        ("basis", np.repeat(basis, n, axis=0), np.tile(basis, (n, 1))),
        ("pair-sums", np.repeat(sums, len(sums), axis=0), np.tile(sums, (len(sums), 1))),
    ]
    if samples:
        batches.append(("random", F.random_array(rng, (samples, n)), F.random_array(rng, (samples, n))))
    total = 0
    for kind, X, Y in batches:
        XY = einsum(F, "mi,mj,ijk->mk", X, Y, C.table.constants)
        lhs = Q.norms(XY)
        rhs = F.reduce(Q.norms(X) * Q.norms(Y))
        bad = np.flatnonzero(F.nonzero(F.reduce(lhs - rhs)))
        total += X.shape[0]
        if bad.size:
            k = int(bad[0])
            return CheckResult(False, (kind, F.render_array(X[k]), F.render_array(Y[k])),
                               {"pairs_checked": total, "seed": used_seed})
    return CheckResult(True, None, {"pairs_checked": total, "seed": used_seed})


@dataclass
class IsotropicSearch:
    vector: np.ndarray | None
    exhaustive: bool
    searched: int

    @property
    def found(self) -> bool:
        return self.vector is not None


def find_isotropic_vector(C: CayleyAlgebra, max_degree: int = 1, chunk: int = 1 << 16) -> IsotropicSearch:
    """A nonzero ``x`` with ``q(x) = 0``.

    Basis vectors and sums ``b_i + c b_j`` are tried first.  Over a prime
    field the remaining vectors are then enumerated exhaustively; over
    GF(p)(t) only coordinates of degree at most ``max_degree`` are tried and
    a negative answer is inconclusive.
    """
    F = C.field
    Q = C.quadratic
    n = C.table.dim
    searched = 0
    for i in range(n):
        searched += 1
        if not F.nonzero(np.asarray([Q.norm_values[i]], dtype=F.dtype))[0]:
            return IsotropicSearch(C.table.basis_vector(i), False, searched)
    scalars = list(F.elements()) if isinstance(F, PrimeField) else list(F.elements(max_degree))
    scalars = [s for s in scalars if F.nonzero(np.asarray([s], dtype=F.dtype))[0]]
    for i in range(n):
        for j in range(i + 1, n):
            for s in scalars:
                v = F.zeros(n)
                v[i] = F.one_value
                v[j] = s
                searched += 1
                if not F.nonzero(np.asarray([Q.q(v)], dtype=F.dtype))[0]:
                    return IsotropicSearch(v, False, searched)
    if not isinstance(F, PrimeField):
        return IsotropicSearch(None, False, searched)
    p = F.p
    it = itertools.product(range(p), repeat=n)
    next(it)  # skip zero
    while True:
        block = np.array(list(itertools.islice(it, chunk)), dtype=np.int64)
        if not block.size:
            break
        vals = Q.norms(block)
        searched += block.shape[0]
        hit = np.flatnonzero(vals == 0)
        if hit.size:
            return IsotropicSearch(block[hit[0]], True, searched)
    return IsotropicSearch(None, True, searched)


def check_automorphism(C: CayleyAlgebra, phi) -> CheckResult:
    """``phi`` is a bijective algebra endomorphism of ``C``."""
    f = phi if isinstance(phi, LinearMapRep) else LinearMapRep(C.field, phi)
    res = check_homomorphism(f, C.table, C.table)
    if res.ok and not (res.detail["injective"] and res.detail["surjective"]):
        return CheckResult(False, ("not bijective",), res.detail)
    return res


def check_eq3(L: StructureTable, C: CayleyAlgebra, basis: np.ndarray) -> CheckResult:
    """``[[x,y],y] = 2 b_q(x,y) y - 2 b_q(y,y) x`` on all pairs of basis vectors of ``C^0``.

    ``L`` is the bracket on ``C^0`` whose basis rows (8-vectors) are ``basis``.
    """
    F = C.field
    d = L.dim
    B = einsum(F, "ai,ij,bj->ab", basis, C.quadratic.polar, basis)
    c = L.constants
    for i in range(d):
        for j in range(d):
            xy = c[i, j]
            lhs = einsum(F, "m,mk->k", xy, c[:, j, :])
            rhs = F.zeros(d)
            rhs[j] = F.reduce(rhs[j] + 2 * B[i, j])
            rhs[i] = F.reduce(rhs[i] - 2 * B[j, j])
            if not F.equal(lhs, rhs):
                return CheckResult(False, (i, j))
    return CheckResult(True, None, {"pairs": d * d})
