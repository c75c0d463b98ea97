"""Characteristic 2: symplectic algebras, ``psl_4 = sp_6^(2)``, ``Der(psl_4) = pgsp_6`` and ``Der(C) = psl_4``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algkit import (
    CheckResult,
    Grading,
    LinearLieAlgebra,
    LinearMapRep,
    StructureTable,
    check_homomorphism,
    derivation_algebra,
    derived_power,
    gl_table,
    graded_derivations,
    inner_derivations,
    is_derivation,
    is_simple,
    linear_lie_algebra,
    quotient,
    verify_grading,
)
from .cayley import CayleyAlgebra, c0_mod_unit, check_composition
from .fields import Field
from .linalg import Subspace, inverse, kernel_basis


def _require_char2(F: Field):
    if F.characteristic != 2:
        raise ValueError(f"check requires characteristic 2, got {F.characteristic}")


# ---------------------------------------------------------------------------
# symplectic spaces
# ---------------------------------------------------------------------------

@dataclass
class SymplecticSpace:
    """``F^dim`` with a nondegenerate alternating form (Gram matrix ``form``)."""

    field: Field
    form: np.ndarray
    labels: list[str] = dc_field(default_factory=list)

    def __post_init__(self):
        F = self.field
        self.form = F.asarray(self.form)
        n = self.form.shape[0]
        if self.form.shape != (n, n) or n % 2:
            raise ValueError("form must be a square matrix of even size")
        if not F.is_zero_array(F.reduce(self.form + self.form.T)) or F.nonzero(np.diagonal(self.form)).any():
            raise ValueError("form is not alternating")
        try:
            inverse(self.form, F)
        except ValueError:
            raise ValueError("degenerate form") from None
        if not self.labels:
            self.labels = [f"w{i + 1}" for i in range(n)]

    @property
    def dim(self) -> int:
        return self.form.shape[0]

    @classmethod
    def standard(cls, F: Field, n: int = 3) -> "SymplecticSpace":
        """Coordinate matrix ``[[0, I], [-I, 0]]`` on ``e1..en, f1..fn``."""
        B = F.zeros((2 * n, 2 * n))
        for i in range(n):
            B[i, n + i] = F.one_value
            B[n + i, i] = F.reduce(-F.one_value)
        return cls(F, B, [f"e{i + 1}" for i in range(n)] + [f"f{i + 1}" for i in range(n)])

    def b(self, x, y):
        F = self.field
        return F.matmul(F.matmul(F.asarray(x)[None, :], self.form), F.asarray(y)[:, None])[0, 0]


def _similarity_system(S: SymplecticSpace, with_lambda: bool) -> np.ndarray:
    # (f^T B + B f)[i, j] - lambda B[i, j], unknowns f[a, b] row-major then lambda
    F = S.field
    n = S.dim
    B = S.form
    I = F.eye(n)
    M = F.reduce(np.einsum("bi,aj->ijab", I, B) + np.einsum("ia,bj->ijab", B, I)).reshape(n * n, n * n)
    if with_lambda:
        M = np.concatenate([M, F.reduce(-B).reshape(n * n, 1)], axis=1)
    return M


def sp_linear(S: SymplecticSpace) -> LinearLieAlgebra:
    """``sp(V, b) = {f : b(f u, v) + b(u, f v) = 0}`` as a matrix Lie algebra."""
    F = S.field
    return LinearLieAlgebra(F, S.dim, kernel_basis(_similarity_system(S, False), F))


def sp_algebra(S: SymplecticSpace) -> StructureTable:
    return sp_linear(S).table


def gsp_linear(S: SymplecticSpace) -> LinearLieAlgebra:
    """Similarity algebra: ``f^T B + B f = lambda B`` for some scalar ``lambda``."""
    F = S.field
    n = S.dim
    K = kernel_basis(_similarity_system(S, True), F)
    mats = K.basis[:, : n * n]
    return linear_lie_algebra(F, n, mats)


def power_matrices(L: LinearLieAlgebra, k: int) -> LinearLieAlgebra:
    """The ``k``-th derived power of a matrix Lie algebra, again as matrices."""
    F = L.field
    P = derived_power(L.table, k)
    return linear_lie_algebra(F, L.n, F.matmul(P.basis, L.space.basis))


def _span(F: Field, n: int, mats) -> Subspace:
    return Subspace.span(F, n * n, F.asarray(mats).reshape(-1, n * n))


def _block_shape_space(F: Field, n: int, level: int) -> Subspace:
    """Block matrices ``[[a, b], [c, a^t]]`` with ``b, c`` symmetric (level 0),
    alternating (level 1), alternating with ``tr a = 0`` (level 2)."""
    N = 2 * n
    one = F.one_value
    mats = []

    def unit(*entries):
        m = F.zeros((N, N))
        for i, j in entries:
            m[i, j] = F.reduce(m[i, j] + one)
        return m

    for i in range(n):
        for j in range(n):
            if level == 2 and i == j:
                continue
            mats.append(unit((i, j), (n + j, n + i)))
    if level == 2:
        for i in range(1, n):
            mats.append(F.reduce(unit((0, 0), (n, n)) + unit((i, i), (n + i, n + i))))
    for i in range(n):
        for j in range(i if level == 0 else i + 1, n):
            pair = [(i, j), (j, i)] if i != j else [(i, i)]
            mats.append(unit(*[(a, n + b) for a, b in pair]))
            mats.append(unit(*[(n + a, b) for a, b in pair]))
    return _span(F, N, mats)


@dataclass
class SpDerivedReport:
    dims: tuple[int, int, int]
    block_shapes: tuple[bool, bool, bool]

    @property
    def ok(self) -> bool:
        return self.dims == (21, 15, 14) and all(self.block_shapes)


def sp_derived_report(F: Field, n: int = 3) -> SpDerivedReport:
    """Dimensions of ``sp_2n``, ``sp^(1)``, ``sp^(2)`` and their block shapes (standard form)."""
    _require_char2(F)
    sp = sp_linear(SymplecticSpace.standard(F, n))
    dims = []
    shapes = []
    for k in range(3):
        P = power_matrices(sp, k)
        dims.append(P.dim)
        shapes.append(P.space == _block_shape_space(F, n, k))
    return SpDerivedReport(tuple(dims), tuple(shapes))


@dataclass
class GspReport:
    gsp_dim: int
    pgsp_dim: int
    decomposition: bool
    derived_is_sp: bool

    @property
    def ok(self) -> bool:
        return self.gsp_dim == 22 and self.pgsp_dim == 21 and self.decomposition and self.derived_is_sp


def _identity_line(L: LinearLieAlgebra) -> Subspace:
    F = L.field
    return L.subspace_of(F.eye(L.n)[None])


def gsp_pgsp(F: Field, n: int = 3) -> tuple[StructureTable, StructureTable]:
    _require_char2(F)
    g = gsp_linear(SymplecticSpace.standard(F, n))
    return g.table, quotient(g.table, _identity_line(g))[0]


def gsp_report(F: Field, n: int = 3) -> GspReport:
    """``gsp = sp + F diag(I_n, 0)``, ``gsp^(1) = sp`` and ``dim pgsp``."""
    _require_char2(F)
    S = SymplecticSpace.standard(F, n)
    g = gsp_linear(S)
    sp = sp_linear(S)
    D = F.zeros((2 * n, 2 * n))
    for i in range(n):
        D[i, i] = F.one_value
    extra = _span(F, 2 * n, D[None])
    decomposition = (
        not sp.space.contains(D.reshape(1, -1)) and sp.space + extra == g.space
    )
    derived = power_matrices(g, 1).space == sp.space
    pgsp, _ = quotient(g.table, _identity_line(g))
    return GspReport(g.dim, pgsp.dim, decomposition, derived)


def symplectic_basis(S: SymplecticSpace) -> np.ndarray:
    """Columns ``e1..en, f1..fn`` with ``b(e_i, f_j) = delta_ij`` and all other pairings 0.

    Hyperbolic pairing: the first remaining vector is paired with the first
    remaining vector it meets nontrivially, then the rest is projected onto
    the orthogonal complement of the pair.
    """
    F = S.field
    N = S.dim
    rest = [v for v in F.eye(N)]
    es, fs = [], []
    while rest:
        e = rest.pop(0)
        if not F.nonzero(e).any():
            continue
        k = next((i for i, w in enumerate(rest) if F.nonzero(S.b(e, w))), None)
        if k is None:
            raise ValueError("degenerate form")
        w = rest.pop(k)
        f = F.reduce(w * F.inv(S.b(e, w)))
        nxt = []
        for w in rest:
            w = F.reduce(w - S.b(w, f) * e + S.b(w, e) * f)
            if F.nonzero(w).any():
                nxt.append(w)
        rest = nxt
        es.append(e)
        fs.append(f)
    return F.asarray(np.stack(es + fs, axis=1))


def congruence_to_standard(S: SymplecticSpace) -> np.ndarray:
    """``P`` with ``P^T B P`` the standard matrix; ``f -> P^{-1} f P`` maps ``sp(B)`` to ``sp_std``."""
    P = symplectic_basis(S)
    F = S.field
    std = SymplecticSpace.standard(F, S.dim // 2).form
    if not F.equal(F.matmul(F.matmul(P.T, S.form), P), std):
        raise RuntimeError("symplectic basis construction failed")
    return P


# ---------------------------------------------------------------------------
# psl_4 and the exterior square
# ---------------------------------------------------------------------------

WEDGE_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
WEDGE_LABELS = [f"e{i + 1}^e{j + 1}" for i, j in WEDGE_PAIRS]
OFF_DIAGONAL = [(i, j) for i in range(4) for j in range(4) if i != j]


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def wedge_space(F: Field) -> SymplecticSpace:
    """``Lambda^2 F^4`` with ``u ^ v = b(u, v) e1^e2^e3^e4``."""
    B = F.zeros((6, 6))
    for a, (i, j) in enumerate(WEDGE_PAIRS):
        for c, (k, l) in enumerate(WEDGE_PAIRS):
            if len({i, j, k, l}) == 4:
                B[a, c] = F.from_int(_perm_sign((i, j, k, l)))
    return SymplecticSpace(F, B, list(WEDGE_LABELS))


def _unit(F: Field, n: int, i: int, j: int) -> np.ndarray:
    m = F.zeros((n, n))
    m[i, j] = F.one_value
    return m


def matrix_table(F: Field, n: int, mats, labels, modulo=()) -> StructureTable:
    """Commutator table on the given matrices, computed modulo the span of ``modulo``."""
    mats = F.asarray(mats)
    d = len(mats)
    every = np.concatenate([mats, F.asarray(modulo).reshape(-1, n, n)]) if len(modulo) else mats
    flat = every.reshape(len(every), n * n)
    space = Subspace.span(F, n * n, flat)
    if space.dim != len(every):
        raise ValueError("matrices are linearly dependent")
    G = inverse(space.coordinates(flat), F)  # rref coordinates -> coordinates in ``every``
    prod = F.matmul(mats.reshape(d * n, n), np.concatenate(list(mats), axis=1)).reshape(d, n, d, n)
    prod = prod.transpose(0, 2, 1, 3)
    br = F.reduce(prod - prod.transpose(1, 0, 2, 3)).reshape(d * d, n * n)
    coords = F.matmul(space.coordinates(br), G)
    return StructureTable(F, coords[:, :d].reshape(d, d, d), labels)


def sl4_basis(F: Field) -> tuple[np.ndarray, list[str]]:
    """Off-diagonal ``E_ij`` followed by ``E_ii - E_{i+1,i+1}`` (i = 1, 2, 3)."""
    mats = [_unit(F, 4, i, j) for i, j in OFF_DIAGONAL]
    labels = [f"E{i + 1}{j + 1}" for i, j in OFF_DIAGONAL]
    for i in range(3):
        mats.append(F.reduce(_unit(F, 4, i, i) - _unit(F, 4, i + 1, i + 1)))
        labels.append(f"H{i + 1}")
    return np.stack(mats), labels


def sl4(F: Field) -> StructureTable:
    mats, labels = sl4_basis(F)
    return matrix_table(F, 4, mats, labels)


def psl4_representatives(F: Field) -> tuple[np.ndarray, list[str]]:
    """Representatives of ``psl_4``: off-diagonal units, ``H1 = E11+E22``, ``H2 = E22+E33``."""
    mats, labels = sl4_basis(F)
    return mats[:14], labels[:14]


def psl4(F: Field) -> StructureTable:
    """``sl_4 / F I_4`` on the classes of :func:`psl4_representatives`."""
    _require_char2(F)
    mats, labels = psl4_representatives(F)
    return matrix_table(F, 4, mats, labels, modulo=F.eye(4)[None])


def wedge_action(F: Field, A) -> np.ndarray:
    """Matrix of ``u ^ v -> Au ^ v + u ^ Av`` on the basis ``WEDGE_PAIRS``."""
    A = F.asarray(A)
    idx = {p: a for a, p in enumerate(WEDGE_PAIRS)}
    M = F.zeros((6, 6))

    def add(k, l, coef, col):
        if k == l:
            return
        sign = 1 if k < l else -1
        r = idx[(min(k, l), max(k, l))]
        M[r, col] = F.reduce(M[r, col] + coef * F.from_int(sign))

    for col, (i, j) in enumerate(WEDGE_PAIRS):
        for k in range(4):
            if F.nonzero(A[k, i]):
                add(k, j, A[k, i], col)
            if F.nonzero(A[k, j]):
                add(i, k, A[k, j], col)
    return M


def exterior_square_map(F: Field) -> LinearMapRep:
    """``sl_4 -> gl_6`` (flattened row-major) on the basis of :func:`sl4_basis`."""
    _require_char2(F)
    mats, _ = sl4_basis(F)
    cols = np.stack([wedge_action(F, m).reshape(-1) for m in mats], axis=1)
    return LinearMapRep(F, cols)


@dataclass
class Psl4IsoReport:
    kernel_is_identity: bool
    image_dim: int
    image_in_sp: bool
    brackets: CheckResult
    sp2_dim: int
    iso: CheckResult
    simple: str | None
    simple_points: int | None

    @property
    def ok(self) -> bool:
        return (
            self.kernel_is_identity and self.image_dim == 14 and self.image_in_sp
            and self.brackets.ok and self.iso.ok and self.iso.detail["injective"]
            and self.iso.detail["surjective"] and self.simple in (None, "simple")
        )


def sp2_wedge(F: Field) -> LinearLieAlgebra:
    return power_matrices(sp_linear(wedge_space(F)), 2)


def iso_psl4_sp6(F: Field, sp2: LinearLieAlgebra | None = None) -> LinearMapRep:
    """``psl_4 -> sp(Lambda^2 V, b)^(2)`` induced by the exterior square, in RREF coordinates of the target."""
    _require_char2(F)
    sp2 = sp2 or sp2_wedge(F)
    mats, _ = psl4_representatives(F)
    images = np.stack([wedge_action(F, m) for m in mats])
    return LinearMapRep(F, sp2.coordinates(images).T)


def psl4_iso_report(F: Field, check_simple: bool = True) -> Psl4IsoReport:
    _require_char2(F)
    ext = exterior_square_map(F)
    K = ext.kernel()
    # I_4 = H1 + H3 in characteristic 2
    v = F.zeros(15)
    v[12] = F.one_value
    v[14] = F.one_value
    ident = Subspace.span(F, 15, v[None, :])
    sp = sp_linear(wedge_space(F))
    image = Subspace.span(F, 36, ext.matrix.T)
    brackets = check_homomorphism(ext, sl4(F), gl_table(F, 6))
    sp2 = power_matrices(sp, 2)
    iso = check_homomorphism(iso_psl4_sp6(F, sp2), psl4(F), sp2.table)
    simple = points = None
    if check_simple:
        s = is_simple(psl4(F))
        simple, points = s.status, s.points_checked
    return Psl4IsoReport(
        kernel_is_identity=K == ident, image_dim=image.dim, image_in_sp=image.issubspace(sp.space),
        brackets=brackets, sp2_dim=sp2.dim, iso=iso, simple=simple, simple_points=points,
    )


# ---------------------------------------------------------------------------
# Der(psl_4) = pgsp_6
# ---------------------------------------------------------------------------

def restricted_ad(L: LinearLieAlgebra, A) -> np.ndarray:
    """Matrix of ``X -> [A, X]`` on ``L`` (``A`` must normalize ``L``)."""
    F = L.field
    A = F.asarray(A)
    br = F.reduce(np.stack([F.matmul(A, x) - F.matmul(x, A) for x in L.matrices]))
    return L.coordinates(br).T


@dataclass
class DerPsl4Report:
    der_dim: int
    inner_dim: int
    phi_kernel_is_identity: bool
    phi_image_dim: int
    pgsp_iso: CheckResult
    transport: CheckResult
    transported_equal: bool

    @property
    def ok(self) -> bool:
        return (
            self.der_dim == 21 and self.inner_dim == 14 and self.phi_kernel_is_identity
            and self.phi_image_dim == 21 and self.pgsp_iso.ok and self.pgsp_iso.detail["injective"]
            and self.pgsp_iso.detail["surjective"] and self.transport.ok and self.transported_equal
        )


def der_psl4_report(F: Field) -> DerPsl4Report:
    """``Der(psl_4)`` by the solver against ``pgsp_6`` acting on ``gsp_6^(3) = sp_6^(2)``."""
    _require_char2(F)
    g = psl4(F)
    D = derivation_algebra(g)
    inner = inner_derivations(g)
    if not inner.issubspace(D.space):
        raise RuntimeError("inner derivations are not derivations")

    S = SymplecticSpace.standard(F)
    gsp = gsp_linear(S)
    K = power_matrices(gsp, 3)
    DK = derivation_algebra(K.table)
    phi = np.stack([restricted_ad(K, A).reshape(-1) for A in gsp.matrices], axis=1)
    Phi = LinearMapRep(F, phi)
    ident = _identity_line(gsp)
    image = Subspace.span(F, K.dim ** 2, phi.T)
    if not image.issubspace(DK.space):
        raise RuntimeError("ad of gsp does not act by derivations")
    pgsp, _ = quotient(gsp.table, ident)
    keep = ident.complement_indices()
    to_der = LinearMapRep(F, DK.coordinates(phi.T[keep].reshape(-1, K.dim, K.dim)).T)
    pgsp_iso = check_homomorphism(to_der, pgsp, DK.table)

    # psl_4 -> sp(wedge)^(2) -> sp_std^(2)
    W = wedge_space(F)
    sp2w = sp2_wedge(F)
    P = congruence_to_standard(W)
    Pinv = inverse(P, F)
    conj = np.stack([F.matmul(F.matmul(Pinv, m), P) for m in sp2w.matrices])
    T = F.matmul(K.coordinates(conj).T, iso_psl4_sp6(F, sp2w).matrix)
    transport = check_homomorphism(LinearMapRep(F, T), g, K.table)
    Tinv = inverse(T, F)
    moved = np.stack([F.matmul(F.matmul(T, d), Tinv) for d in D.matrices])
    equal = Subspace.span(F, K.dim ** 2, moved.reshape(len(moved), -1)) == image
    return DerPsl4Report(
        der_dim=D.dim, inner_dim=inner.dim, phi_kernel_is_identity=Phi.kernel() == ident,
        phi_image_dim=image.dim, pgsp_iso=pgsp_iso, transport=transport, transported_equal=equal,
    )


# ---------------------------------------------------------------------------
# the Z^3 grading
# ---------------------------------------------------------------------------

WEIGHTS = [(1, 1, 1), (0, 1, 1), (0, 0, 1), (0, 0, 0)]
PRINTED_SUPPORT = sorted(
    [(0, 0, 0)]
    + [s for a in [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)]
       for s in (a, tuple(-x for x in a))]
)
X_SET = [(1, 0, 1), (-1, 0, -1), (1, 0, -1), (-1, 0, 1), (1, 2, 1), (-1, -2, -1)]
PRINTED_EIGENSPACES = {
    "h": ["H1", "H2"],
    "g1": ["E12", "E21", "E34", "E43"],
    "g2": ["E23", "E32", "E14", "E41"],
    "g3": ["E13", "E31", "E24", "E42"],
}


def psl4_grading(F: Field) -> Grading:
    """``deg E_ij = w_i - w_j``; the diagonal classes have degree 0."""
    _, labels = psl4_representatives(F)
    degrees = []
    for lab in labels:
        if lab.startswith("E"):
            i, j = int(lab[1]) - 1, int(lab[2]) - 1
            degrees.append(tuple(a - b for a, b in zip(WEIGHTS[i], WEIGHTS[j])))
        else:
            degrees.append((0, 0, 0))
    return Grading(3, degrees)


@dataclass
class GradingReport:
    grading: CheckResult
    support: list[tuple[int, int, int]]
    support_matches: bool
    h_labels: list[str]
    eigenspaces_match: bool
    der_dims: dict[tuple[int, int, int], int]
    der_total: int
    der_dim: int
    der0_kills_h: bool
    compatible: bool

    @property
    def der0(self) -> int:
        return self.der_dims.get((0, 0, 0), 0)

    @property
    def x_dims(self) -> dict[tuple[int, int, int], int]:
        return {a: self.der_dims.get(a, 0) for a in X_SET}

    @property
    def ok(self) -> bool:
        return (
            self.grading.ok and self.support_matches and self.h_labels == ["H1", "H2"]
            and self.eigenspaces_match and self.der0 <= 3
            and all(v <= 1 for v in self.x_dims.values())
            and self.der_total == self.der_dim and self.der0_kills_h and self.compatible
        )


def grading_bound_data(F: Field) -> GradingReport:
    """Grading of ``psl_4`` and the homogeneous pieces of ``Der(psl_4)``."""
    _require_char2(F)
    g = psl4(F)
    gr = psl4_grading(F)
    res = verify_grading(g, gr)
    support = res.detail.get("support", []) if res.ok else sorted(set(gr.degrees))
    deg = np.asarray(gr.degrees)
    h_idx = [i for i, d in enumerate(gr.degrees) if d == (0, 0, 0)]
    h_labels = [g.labels[i] for i in h_idx]

    # joint eigenspaces of ad H1, ad H2 (eigenvalues lie in the prime field)
    ads = [g.left_matrix(g.basis_vector(i)) for i in h_idx]
    found = []
    for a, b in itertools.product(range(2), repeat=2):
        rows = np.concatenate([F.reduce(ads[0] - F.from_int(a) * F.eye(g.dim)),
                               F.reduce(ads[1] - F.from_int(b) * F.eye(g.dim))])
        E = kernel_basis(rows, F)
        if E.dim:
            found.append(E)
    printed = [Subspace.span(F, g.dim, np.stack([g.basis_vector(g.labels.index(l)) for l in labs]))
               for labs in PRINTED_EIGENSPACES.values()]
    match = len(found) == len(printed) and all(any(E == P for P in printed) for E in found)

    D = derivation_algebra(g)
    alphas = sorted({tuple(int(x) for x in deg[a] - deg[b]) for a in range(g.dim) for b in range(g.dim)})
    dims = {}
    kills_h = True
    compatible = True
    for alpha in alphas:
        G = graded_derivations(g, gr, alpha)
        if not G.dim:
            continue
        dims[alpha] = G.dim
        for v in G.basis:
            d = v.reshape(g.dim, g.dim)
            compatible &= is_derivation(g, d).ok and G.issubspace(D.space)
            if alpha == (0, 0, 0):
                kills_h &= not F.nonzero(d[:, h_idx]).any()
    return GradingReport(
        grading=res, support=support, support_matches=support == PRINTED_SUPPORT,
        h_labels=h_labels, eigenspaces_match=match, der_dims=dims,
        der_total=sum(dims.values()), der_dim=D.dim, der0_kills_h=kills_h, compatible=compatible,
    )


# ---------------------------------------------------------------------------
# Der(C) = psl_4
# ---------------------------------------------------------------------------

@dataclass
class DerCayleyReport:
    composition: CheckResult | None
    der_dim: int
    images_in_sp: bool
    phi_rank: int
    sp_dim: int
    sp2_dim: int
    image_is_sp2: bool
    phi_hom: CheckResult
    to_psl4: CheckResult

    @property
    def ok(self) -> bool:
        def bij(r):
            return r.ok and r.detail["injective"] and r.detail["surjective"]

        return (
            (self.composition is None or self.composition.ok) and self.der_dim == 14
            and self.images_in_sp and self.phi_rank == 14 and self.image_is_sp2
            and bij(self.phi_hom) and bij(self.to_psl4)
        )


def der_cayley_char2_report(C: CayleyAlgebra, composition_samples: int | None = 1000,
                            seed: int | None = None) -> DerCayleyReport:
    """``Phi: Der(C) -> sp(C^0/F1, b~)`` and the composite ``Der(C) -> psl_4``.

    ``composition_samples=None`` skips the composition check (callers that ran it already).
    """
    F = C.field
    _require_char2(F)
    comp = None
    if composition_samples is not None:
        comp = check_composition(C, samples=composition_samples, seed=seed)
        if not comp.ok:
            raise ValueError("input is not a composition algebra")
    G = derivation_algebra(C.table)
    if G.dim != 14:
        raise RuntimeError(f"Der(C) has dimension {G.dim}, expected 14")
    M = c0_mod_unit(C)
    images = np.stack([M.induced(d) for d in G.matrices])
    in_sp = all(M.in_sp(x) for x in images)
    flat = images.reshape(G.dim, -1)
    phi_rank = Subspace.span(F, 36, flat).dim

    S = SymplecticSpace(F, M.form, list(M.labels))
    sp = sp_linear(S)
    sp2 = power_matrices(sp, 2)
    if sp2.dim != 14:
        raise RuntimeError(f"sp^(2) has dimension {sp2.dim}, expected 14")
    image_is_sp2 = Subspace.span(F, 36, flat) == sp2.space
    Phi = LinearMapRep(F, sp2.coordinates(images).T)
    phi_hom = check_homomorphism(Phi, G.table, sp2.table)

    # b~ -> wedge form: N^T b~ N = B_w, so f -> N^{-1} f N maps sp(b~) onto sp(B_w)
    W = wedge_space(F)
    N = F.matmul(congruence_to_standard(S), inverse(congruence_to_standard(W), F))
    Ninv = inverse(N, F)
    sp2w = sp2_wedge(F)
    moved = np.stack([F.matmul(F.matmul(Ninv, x), N) for x in images])
    iso = iso_psl4_sp6(F, sp2w).matrix
    comp_map = F.matmul(inverse(iso, F), sp2w.coordinates(moved).T)
    to_psl4 = check_homomorphism(LinearMapRep(F, comp_map), G.table, psl4(F))
    return DerCayleyReport(
        composition=comp, der_dim=G.dim, images_in_sp=in_sp, phi_rank=phi_rank,
        sp_dim=sp.dim, sp2_dim=sp2.dim, image_is_sp2=image_is_sp2, phi_hom=phi_hom, to_psl4=to_psl4,
    )
