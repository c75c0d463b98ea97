"""Characteristic 3: ``C^0`` as a Lie algebra, the ideal structure of ``Der(C_s)`` and ``psl_3``."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algkit import (
    CheckResult,
    LinearMapRep,
    StructureTable,
    centralizer,
    center,
    check_homomorphism,
    check_identity,
    derivation_algebra,
    derived_series,
    einsum,
    gl_table,
    inner_derivations,
    is_ideal,
    is_simple,
    killing_form,
    quotient,
    subalgebra,
)
from .cayley import c0_bracket_algebra, c0_basis, check_eq3, split_cayley
from .fields import Field, PrimeField
from .linalg import Subspace, kernel_basis, rank


def _require_char3(F: Field):
    if F.characteristic != 3:
        raise ValueError(f"check requires characteristic 3, got {F.characteristic}")


def sl_table(F: Field, n: int) -> tuple[StructureTable, Subspace]:
    """``sl_n`` as a subalgebra of ``gl_n`` (returns the table and the subspace of ``gl_n``)."""
    gl = gl_table(F, n)
    tr = F.zeros((1, n * n))
    for i in range(n):
        tr[0, i * n + i] = F.one_value
    S = kernel_basis(tr, F)
    return subalgebra(gl, S, [_matrix_label(v, n, F) for v in S.basis]), S


def _matrix_label(v, n: int, F: Field) -> str:
    from .algkit import combination_label

    return combination_label(v, [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)], F)


def psl3(F: Field) -> StructureTable:
    """``sl_3 / F I`` (the identity is traceless in characteristic 3)."""
    _require_char3(F)
    sl, _ = sl_table(F, 3)
    Z = center(sl)
    if Z.dim != 1:
        raise RuntimeError(f"center of sl_3 has dimension {Z.dim}")
    table, _ = quotient(sl, Z)
    return table


def ad_c0_matrices(F: Field) -> np.ndarray:
    """``ad_x = L_x - R_x`` on ``C_s`` for the trace-zero basis ``x``."""
    C = split_cayley(F)
    return np.stack([C.table.ad_matrix(x) for x in c0_basis(C)])


@dataclass
class IdealStructureReport:
    der_dim: int
    ideal_dim: int
    ideal_is_ideal: bool
    ideal_simple: str
    ideal_points: int
    ad_isomorphism: CheckResult
    centralizer_dim: int
    quotient_dim: int
    quotient_simple: str
    quotient_points: int
    der_simple: str
    der_witness_dim: int | None
    unique: bool
    failures: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def ideal_structure_report(F: Field | None = None) -> IdealStructureReport:
    """Verify that ``ad(C^0)`` is the unique proper ideal of ``g = Der(C_s)``.

    Uniqueness follows from the lattice argument: a proper ideal ``j``
    meets the simple ideal ``i`` in 0 or ``i``; ``j`` meeting it in 0 lies
    in the centralizer of ``i`` (zero), otherwise ``j / i`` is an ideal of
    the simple quotient and so ``j = i``.
    """
    F = F or PrimeField(3)
    _require_char3(F)
    C = split_cayley(F)
    g = derivation_algebra(C.table)
    ads = ad_c0_matrices(F)
    I = g.subspace_of(ads)
    failures = []
    ok_ideal = is_ideal(g.table, I)
    if I.dim != 7 or not ok_ideal:
        failures.append("ad(C^0) is not a 7-dimensional ideal")
    i_table = subalgebra(g.table, I)
    s_i = is_simple(i_table)
    if s_i.simple is not True:
        failures.append("ad(C^0) is not simple")
    # ad: C^0 -> i, in C^0 RREF coordinates and the RREF coordinates of i
    L = c0_bracket_algebra(C)
    M = I.coordinates(g.coordinates(ads)).T
    iso = check_homomorphism(LinearMapRep(F, M), L, i_table)
    if not (iso.ok and iso.detail["injective"] and iso.detail["surjective"]):
        failures.append("ad: C^0 -> ad(C^0) is not an isomorphism")
    Z = centralizer(g.table, I)
    if Z.dim:
        failures.append("centralizer of ad(C^0) is nonzero")
    Q, _ = quotient(g.table, I)
    s_q = is_simple(Q)
    if Q.dim != 7 or s_q.simple is not True:
        failures.append("quotient is not simple of dimension 7")
    s_g = is_simple(g.table)
    if s_g.simple is not False:
        failures.append("Der(C_s) was not shown to be non-simple")
    unique = not failures
    return IdealStructureReport(
        der_dim=g.dim, ideal_dim=I.dim, ideal_is_ideal=ok_ideal,
        ideal_simple=s_i.status, ideal_points=s_i.points_checked, ad_isomorphism=iso,
        centralizer_dim=Z.dim, quotient_dim=Q.dim, quotient_simple=s_q.status,
        quotient_points=s_q.points_checked, der_simple=s_g.status,
        der_witness_dim=s_g.witness.dim if s_g.witness is not None else None,
        unique=unique, failures=failures,
    )


@dataclass
class InnerDerivationReport:
    der_dim: int
    inner_dim: int
    equal: bool


def derivations_are_inner(g: StructureTable | None = None) -> InnerDerivationReport:
    """Compare ``Der(g)`` with ``ad(g)`` as subspaces of ``n x n`` matrices."""
    if g is None:
        g = derivation_algebra(split_cayley(PrimeField(3)).table).table
    D = derivation_algebra(g)
    A = inner_derivations(g)
    return InnerDerivationReport(D.dim, A.dim, D.space == A)


@dataclass
class JacobiDichotomy:
    results: dict[int, CheckResult]
    example_jacobian: dict[int, list[str]]


def jacobi_dichotomy(primes=(3, 5, 7)) -> JacobiDichotomy:
    """Jacobi on ``(C_s^0, [,])`` for each prime, with ``J(u1, u2, u3)`` as a sample value."""
    from .algkit import jacobian

    results = {}
    samples = {}
    for p in primes:
        F = PrimeField(p)
        L = c0_bracket_algebra(split_cayley(F))
        results[p] = check_identity(L, "jacobi")
        e = F.eye(7)
        samples[p] = F.render_array(jacobian(L, e[1], e[2], e[3]))
    return JacobiDichotomy(results, samples)


def eq3_check(F: Field) -> CheckResult:
    C = split_cayley(F)
    return check_eq3(c0_bracket_algebra(C), C, c0_basis(C))


# ---------------------------------------------------------------------------
# fingerprints
# ---------------------------------------------------------------------------

ELEMENTWISE_LIMIT = 10 ** 5


@dataclass
class Fingerprint:
    dim: int
    simple: str
    killing_rank: int
    derived_dims: tuple[int, ...]
    der_dim: int
    nilpotent_kernels: tuple[tuple[int, int], ...]
    elementwise: bool
    flags: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "simple": self.simple,
            "killing_rank": self.killing_rank,
            "derived_dims": list(self.derived_dims),
            "der_dim": self.der_dim,
            "nilpotent_kernels": [list(x) for x in self.nilpotent_kernels],
            "elementwise": self.elementwise,
            "flags": list(self.flags),
        }

    def comparable(self) -> tuple:
        return (self.dim, self.simple, self.killing_rank, self.derived_dims, self.der_dim,
                self.nilpotent_kernels, self.elementwise)


def _ranks(M: np.ndarray, F: PrimeField) -> np.ndarray:
    return np.array([rank(x, F) for x in M], dtype=np.int64)


def nilpotent_kernel_multiset(L: StructureTable) -> tuple[tuple[tuple[int, int], ...], bool]:
    """Multiset of ``dim ker ad_x`` over ad-nilpotent ``x != 0``.

    All nonzero elements are used when ``p^n`` is at most ``ELEMENTWISE_LIMIT`` (a
    basis-independent invariant); otherwise only basis elements, flagged.
    """
    F = L.field
    n = L.dim
    if not isinstance(F, PrimeField):
        raise ValueError("fingerprints need a prime field")
    p = F.p
    elementwise = p ** n <= ELEMENTWISE_LIMIT
    if elementwise:
        import itertools

        X = np.array(list(itertools.product(range(p), repeat=n))[1:], dtype=np.int64)
    else:
        X = F.eye(n)
    ad = einsum(F, "xi,ijk->xkj", X, L.constants)
    P = ad.copy()
    for _ in range(n - 1):
        P = np.matmul(P, ad) % p
    nil = ~P.reshape(P.shape[0], -1).any(axis=1)
    ranks = _ranks(ad[nil], F)
    counts = Counter(int(n - r) for r in ranks)
    return tuple(sorted(counts.items())), elementwise


def invariant_fingerprint(L: StructureTable, max_points: int = 10 ** 6) -> Fingerprint:
    """Isomorphism invariants of a Lie algebra over a prime field (necessary conditions only)."""
    F = L.field
    flags = []
    s = is_simple(L, max_points=max_points)
    if s.simple is None:
        flags.append("simplicity undecided")
    kr = rank(killing_form(L), F)
    derived = tuple(S.dim for S in derived_series(L))
    der = derivation_algebra(L).dim
    kernels, elementwise = nilpotent_kernel_multiset(L)
    if not elementwise:
        flags.append("nilpotent kernels over basis elements only")
    return Fingerprint(L.dim, s.status, kr, derived, der, kernels, elementwise, tuple(flags))
