"""Characteristic 7: transvectants, the Dixmier model, Witt algebras and their embeddings.

``m_i = x^(6-i) y^i`` spans ``V_6``.  Witt algebras use the basis
``e_{-1}, ..., e_{p-2}``, stored at indices ``0 .. p-1`` (``e_k`` at ``k + 1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from .algkit import (
    CheckResult,
    LinearMapRep,
    ModuleAction,
    StructureTable,
    check_homomorphism,
    check_representation,
    einsum,
    inner_derivation,
    is_derivation,
    killing_form,
    derivation_algebra,
    matrix_power,
    verify_p_mapping,
)
from .cayley import CayleyAlgebra, check_automorphism, make_rng, split_cayley, trace_zero_subspace
from .fields import Field, PrimeField
from .linalg import Subspace, inverse, kernel_basis, rank, solve

MAX_PRODUCT_UNKNOWNS = 10 ** 4

# the printed V6 product table: row i, column j -> (coefficient, index of m) or None for 0
TABLE2_PRINTED = [
    [None, None, None, (-1, 0), (3, 1), (-3, 2), (1, 3)],
    [None, None, (3, 0), (1, 1), None, (-1, 3), (-3, 4)],
    [None, (-3, 0), None, (1, 2), (-1, 3), None, (3, 5)],
    [(1, 0), (-1, 1), (-1, 2), None, (1, 4), (1, 5), (-1, 6)],
    [(-3, 1), None, (1, 3), (-1, 4), None, (3, 6), None],
    [(3, 2), (1, 3), None, (-1, 5), (-3, 6), None, None],
    [(-1, 3), (3, 4), (-3, 5), (1, 6), None, None, None],
]

# images of 1, m0..m6 in the good basis p1, p2, u1, u2, u3, v1, v2, v3
GOOD_BASIS_IMAGES = [
    {"p1": 1, "p2": 1},
    {"v3": -3},
    {"u2": 3},
    {"u1": 3},
    {"p1": -1, "p2": 1},
    {"v1": -3},
    {"v2": -3},
    {"u3": 3},
]

# Witt images as sums of inner derivations D_{x,y}: (coefficient, x, y)
WITT_DERIVATION_IMAGES = {
    -1: [(1, {"p1": 1, "p2": -1}, {"u1": 1}), (1, {"u2": 1}, {"v1": 1})],
    0: [(2, {"u3": 1}, {"v3": 1}), (3, {"u2": 1}, {"v2": 1})],
    1: [(1, {"p1": 1, "p2": -1}, {"v1": 1}), (1, {"u1": 1}, {"v2": 1})],
    2: [(3, {"u1": 1}, {"u3": 1})],
    3: [(-1, {"v1": 1}, {"v2": 1})],
    4: [(3, {"v1": 1}, {"u3": 1})],
    5: [(5, {"v2": 1}, {"u3": 1})],
}

# the alternative expressions given alongside e_2 and e_3
WITT_DERIVATION_ALTERNATIVES = {
    2: [(2, {"p1": 1, "p2": -1}, {"v2": 1})],
    3: [(4, {"p1": 1, "p2": -1}, {"u3": 1})],
}


def _require_char(F: Field, p: int):
    if F.characteristic != p:
        raise ValueError(f"requires characteristic {p}, got {F.characteristic}")


# ---------------------------------------------------------------------------
# binary forms and transvectants
# ---------------------------------------------------------------------------

@dataclass
class BinaryForm:
    """Homogeneous form of degree ``degree``; ``coeffs[i]`` multiplies ``x^(n-i) y^i``."""

    field: Field
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = self.field.check_array(self.coeffs, ndim=1)
        if self.coeffs.shape[0] != self.degree + 1:
            raise ValueError("a degree-n form has n+1 coefficients")

    @classmethod
    def monomial(cls, F: Field, n: int, i: int) -> "BinaryForm":
        c = F.zeros(n + 1)
        c[i] = F.one_value
        return cls(F, n, c)

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.degree == other.degree
                and self.field.equal(self.coeffs, other.coeffs))

    def __add__(self, other):
        return BinaryForm(self.field, self.degree, self.field.reduce(self.coeffs + other.coeffs))

    def __sub__(self, other):
        return BinaryForm(self.field, self.degree, self.field.reduce(self.coeffs - other.coeffs))

    def scale(self, s) -> "BinaryForm":
        return BinaryForm(self.field, self.degree, self.field.reduce(self.coeffs * s))

    def dx(self) -> "BinaryForm":
        n = self.degree
        F = self.field
        out = F.zeros(max(n, 0))
        for i in range(n):
            out[i] = F.reduce(self.coeffs[i] * (n - i))
        return BinaryForm(F, n - 1, out)

    def dy(self) -> "BinaryForm":
        n = self.degree
        F = self.field
        out = F.zeros(max(n, 0))
        for i in range(1, n + 1):
            out[i - 1] = F.reduce(self.coeffs[i] * i)
        return BinaryForm(F, n - 1, out)

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        F = self.field
        out = F.zeros(self.degree + other.degree + 1)
        for i in range(self.degree + 1):
            if not F.nonzero(np.asarray([self.coeffs[i]], dtype=F.dtype))[0]:
                continue
            for j in range(other.degree + 1):
                out[i + j] = F.reduce(out[i + j] + self.coeffs[i] * other.coeffs[j])
        return BinaryForm(F, self.degree + other.degree, out)


def transvectant(f: BinaryForm, g: BinaryForm, q: int) -> BinaryForm:
    """``(f, g)_q`` with the normalising factor ``(i-q)!/i! * (j-q)!/j!``."""
    F = f.field
    i, j = f.degree, g.degree
    p = F.characteristic
    if q < 0 or q > i or q > j:
        raise ValueError(f"need 0 <= q <= degrees, got q={q}, degrees {i}, {j}")
    if max(i, j) >= p:
        raise ValueError(f"degree {max(i, j)} >= characteristic {p}: factorials are not invertible")

    def partial(h: BinaryForm, a: int, b: int) -> BinaryForm:
        for _ in range(a):
            h = h.dx()
        for _ in range(b):
            h = h.dy()
        return h

    n = i + j - 2 * q
    total = BinaryForm(F, n, F.zeros(n + 1))
    for r in range(q + 1):
        term = partial(f, q - r, r) * partial(g, r, q - r)
        total = total + term.scale((-1) ** r * comb(q, r))
    num = factorial(i - q) * factorial(j - q)
    den = factorial(i) * factorial(j)
    factor = F.reduce(F.from_int(num) * F.inv(F.from_int(den)))
    return total.scale(factor)


def m(F: Field, i: int) -> BinaryForm:
    return BinaryForm.monomial(F, 6, i)


def form_from_vector(F: Field, v) -> BinaryForm:
    return BinaryForm(F, len(v) - 1, F.asarray(v))


def c_coeff(i: int, j: int, F: Field):
    """``c(i, j) = 2 (j - i)(4i + j - 1)(4j + i - 1)`` in ``F``."""
    return F.from_int(2 * (j - i) * (4 * i + j - 1) * (4 * j + i - 1))


def v6_product_table(F: Field, coeff=c_coeff) -> StructureTable:
    """``m_i . m_j = c(i, j) m_{i+j-3}`` (indices modulo 7)."""
    _require_char(F, 7)
    c = F.zeros((7, 7, 7))
    for i in range(7):
        for j in range(7):
            k = (i + j - 3) % 7
            c[i, j, k] = F.reduce(F.asarray([coeff(i, j, F)])[0] + c[i, j, k])
    return StructureTable(F, c, [f"m{i}" for i in range(7)])


def transvectant_table(F: Field, q: int = 3) -> StructureTable:
    """``(m_i, m_j)_3`` on ``V_6``."""
    if q != 3:
        raise ValueError("only the 3-transvectant lands in V_6")
    c = F.zeros((7, 7, 7))
    for i in range(7):
        for j in range(7):
            c[i, j] = transvectant(m(F, i), m(F, j), q).coeffs
    return StructureTable(F, c, [f"m{i}" for i in range(7)])


def printed_table2(F: Field) -> StructureTable:
    c = F.zeros((7, 7, 7))
    for i, row in enumerate(TABLE2_PRINTED):
        for j, entry in enumerate(row):
            if entry is not None:
                coef, k = entry
                c[i, j, k] = F.from_int(coef)
    return StructureTable(F, c, [f"m{i}" for i in range(7)])


def compare_tables(A: StructureTable, B: StructureTable) -> CheckResult:
    """Entrywise comparison of products ``b_i b_j``; witness is the first differing pair."""
    F = A.field
    diff = F.nonzero(F.reduce(A.constants - B.constants)).any(axis=2)
    bad = np.argwhere(diff)
    detail = {"entries": A.dim * A.dim}
    if bad.size:
        i, j = (int(x) for x in bad[0])
        return CheckResult(False, (i, j), detail)
    return CheckResult(True, None, detail)


def check_cij_recursion(F: Field, coeff=c_coeff) -> CheckResult:
    """``(i+j+4k+1) c(i,j) = (i+4k+4) c(i+k,j) + (j+4k+4) c(i,j+k)`` for all ``i, j, k`` in ``F_7``."""
    _require_char(F, 7)
    for i in range(7):
        for j in range(7):
            for k in range(7):
                lhs = F.from_int(i + j + 4 * k + 1) * coeff(i, j, F)
                rhs = (F.from_int(i + 4 * k + 4) * coeff((i + k) % 7, j, F)
                       + F.from_int(j + 4 * k + 4) * coeff(i, (j + k) % 7, F))
                if F.nonzero(F.reduce(np.asarray([lhs - rhs], dtype=F.dtype)))[0]:
                    return CheckResult(False, (i, j, k), {"triples": 343})
    return CheckResult(True, None, {"triples": 343})


# ---------------------------------------------------------------------------
# the Dixmier model of the split Cayley algebra
# ---------------------------------------------------------------------------

def dixmier_cayley(F: Field) -> CayleyAlgebra:
    """``F1 + V_6`` with ``(a1+f)(b1+g) = (ab - (f,g)_6/20) 1 + (ag + bf + (f,g)_3)``."""
    p = F.characteristic
    if p < 7:
        raise ValueError("the Dixmier model needs characteristic at least 7")
    scal = F.reduce(F.from_int(-1) * F.inv(F.from_int(20)))
    c = F.zeros((8, 8, 8))
    one = F.one_value
    c[0, 0, 0] = one
    for i in range(7):
        c[0, i + 1, i + 1] = one
        c[i + 1, 0, i + 1] = one
        for j in range(7):
            f, g = m(F, i), m(F, j)
            c[i + 1, j + 1, 0] = F.reduce(transvectant(f, g, 6).coeffs[0] * scal)
            c[i + 1, j + 1, 1:] = transvectant(f, g, 3).coeffs
    labels = ["1"] + [f"m{i}" for i in range(7)]
    return CayleyAlgebra(StructureTable(F, c, labels, unit_index=0), "dixmier")


def explicit_good_basis_iso(F: Field) -> LinearMapRep:
    """The linear map ``F1 + V_6 -> C_s`` sending ``1 -> p1+p2``, ``m0 -> -3v3``, ..."""
    _require_char(F, 7)
    C = split_cayley(F)
    M = F.zeros((8, 8))
    for col, img in enumerate(GOOD_BASIS_IMAGES):
        M[:, col] = C.vector(img)
    return LinearMapRep(F, M)


def verify_good_basis_iso(F: Field) -> CheckResult:
    res = check_homomorphism(explicit_good_basis_iso(F), dixmier_cayley(F).table, split_cayley(F).table)
    res.detail["products"] = 64
    if res.ok and not (res.detail["injective"] and res.detail["surjective"]):
        return CheckResult(False, ("not bijective",), res.detail)
    return res


def check_fgg_identity(F: Field, trials: int = 100, seed: int | None = None) -> CheckResult:
    """``((f,g)_3, g)_3 = ((f,g)_6 g - (g,g)_6 f) / 20`` on basis pairs and random pairs."""
    if F.characteristic < 7:
        raise ValueError("needs characteristic at least 7")
    inv20 = F.inv(F.from_int(20))

    def holds(f, g):
        lhs = transvectant(transvectant(f, g, 3), g, 3)
        fg6 = transvectant(f, g, 6).coeffs[0]
        gg6 = transvectant(g, g, 6).coeffs[0]
        rhs = (g.scale(fg6) - f.scale(gg6)).scale(inv20)
        return lhs == rhs

    for i in range(7):
        for j in range(7):
            if not holds(m(F, i), m(F, j)):
                return CheckResult(False, ("basis", i, j))
    rng = make_rng(seed)
    for t in range(trials):
        f = form_from_vector(F, F.random_array(rng, (7,)))
        g = form_from_vector(F, F.random_array(rng, (7,)))
        if not holds(f, g):
            return CheckResult(False, ("random", t))
    return CheckResult(True, None, {"pairs": 49 + trials})


# ---------------------------------------------------------------------------
# Witt algebras
# ---------------------------------------------------------------------------

@dataclass
class WittAlgebra:
    p: int
    field: Field
    table: StructureTable
    p_mapping: np.ndarray

    def index(self, k: int) -> int:
        return k + 1

    def e(self, k: int) -> np.ndarray:
        return self.table.basis_vector(k + 1)


def witt_algebra(p: int, F: Field | None = None) -> WittAlgebra:
    """``[e_i, e_j] = (j - i) e_{i+j}`` on ``e_{-1}..e_{p-2}``, zero outside that range."""
    F = F or PrimeField(p)
    _require_char(F, p)
    c = F.zeros((p, p, p))
    for i in range(-1, p - 1):
        for j in range(-1, p - 1):
            s = i + j
            if -1 <= s <= p - 2:
                c[i + 1, j + 1, s + 1] = F.from_int(j - i)
    table = StructureTable(F, c, [f"e{k}" for k in range(-1, p - 1)])
    pmap = F.zeros((p, p))
    pmap[1, 1] = F.one_value
    return WittAlgebra(p, F, table, pmap)


def sl2_inside(W: WittAlgebra) -> Subspace:
    F = W.field
    return Subspace.span(F, W.p, np.stack([W.e(-1), W.e(0), W.e(1)]))


def sl2_table(F: Field) -> StructureTable:
    """``span{e_{-1}, e_0, e_1}`` with the Witt bracket."""
    c = F.zeros((3, 3, 3))
    for i in (-1, 0, 1):
        for j in (-1, 0, 1):
            if -1 <= i + j <= 1:
                c[i + 1, j + 1, i + j + 1] = F.from_int(j - i)
    return StructureTable(F, c, ["e-1", "e0", "e1"])


def v6_operator(F: Field, k: int, variant: str = "polynomial") -> np.ndarray:
    """``e_k`` (polynomial) or ``f_k`` (circle, indices modulo 7) on ``m_0..m_6``."""
    M = F.zeros((7, 7))
    for i in range(7):
        t = i + k
        if variant == "polynomial":
            if not 0 <= t <= 6:
                continue
        elif variant == "circle":
            t %= 7
        else:
            raise ValueError(f"unknown variant {variant!r}")
        M[t, i] = F.from_int(i + 4 * k + 4)
    return M


def witt_action_on_v6(variant: str = "polynomial", F: Field | None = None) -> ModuleAction:
    F = F or PrimeField(7)
    _require_char(F, 7)
    ops = np.stack([v6_operator(F, k, variant) for k in range(-1, 6)])
    if variant == "polynomial":
        alg = witt_algebra(7, F).table
    else:
        alg = twisted_witt(F.one_value, F).table
    return ModuleAction(alg, ops, [f"m{i}" for i in range(7)])


def restrictedness(act: ModuleAction, pmap) -> CheckResult:
    return verify_p_mapping(act, pmap)


def operators_are_derivations(ops, table: StructureTable) -> CheckResult:
    for k, D in enumerate(ops):
        res = is_derivation(table, D)
        if not res.ok:
            return CheckResult(False, (k,) + tuple(res.witness))
    return CheckResult(True, None, {"operators": len(ops)})


def extend_to_dixmier(F: Field, ops) -> np.ndarray:
    """Extend operators on ``V_6`` to ``F1 + V_6`` by killing ``1``."""
    ops = F.asarray(ops)
    out = F.zeros((ops.shape[0], 8, 8))
    out[:, 1:, 1:] = ops
    return out


# ---------------------------------------------------------------------------
# twisted forms
# ---------------------------------------------------------------------------

@dataclass
class TwistedWitt:
    alpha: object
    field: Field
    table: StructureTable
    action: ModuleAction


def _wrap(F: Field, s: int, lo: int, hi: int, alpha, alpha_inv):
    """Bring index ``s`` into ``[lo, hi]`` using ``x_{s+7} = alpha x_s``; returns (index, factor)."""
    factor = F.one_value
    while s > hi:
        s -= 7
        factor = factor * alpha
    while s < lo:
        s += 7
        factor = factor * alpha_inv
    return s, factor


def twisted_witt(alpha, F: Field) -> TwistedWitt:
    """``W^alpha`` on ``f~_{-1}..f~_5`` with ``f~_{i+7} = alpha f~_i`` and its action on ``V_6``."""
    _require_char(F, 7)
    a = F.scalar_array(alpha)
    a = a[()] if isinstance(a, np.ndarray) else a
    if not F.nonzero(np.asarray([a], dtype=F.dtype))[0]:
        raise ValueError("alpha must be nonzero")
    a_inv = F.inv(a)
    c = F.zeros((7, 7, 7))
    for i in range(-1, 6):
        for j in range(-1, 6):
            s, fac = _wrap(F, i + j, -1, 5, a, a_inv)
            c[i + 1, j + 1, s + 1] = F.reduce(F.from_int(j - i) * fac)
    table = StructureTable(F, c, [f"f{k}" for k in range(-1, 6)])
    ops = F.zeros((7, 7, 7))
    for k in range(-1, 6):
        for i in range(7):
            t, fac = _wrap(F, i + k, 0, 6, a, a_inv)
            ops[k + 1, t, i] = F.reduce(F.from_int(i + 4 * k + 4) * fac)
    act = ModuleAction(table, ops, [f"m{i}" for i in range(7)])
    return TwistedWitt(a, F, table, act)


def circle_to_witt_basis(F: Field) -> np.ndarray:
    """Row ``k+1``: coordinates of ``e_k = (z-1)^(k+1) d/dz`` in ``f_{-1}..f_5``."""
    B = F.zeros((7, 7))
    for k in range(-1, 6):
        n = k + 1
        for j in range(n + 1):
            B[k + 1, j] = F.from_int(comb(n, j) * (-1) ** (n - j))
    return B


# ---------------------------------------------------------------------------
# Verma modules and invariant products
# ---------------------------------------------------------------------------

@dataclass
class VermaModule:
    p: int
    lam: int
    action: ModuleAction


def verma_module(p: int, lam: int, F: Field | None = None) -> VermaModule:
    """``e_k(m_j) = (j + (lam+1)(k+1)) m_{k+j}`` on ``m_0..m_{p-1}``."""
    if not 0 <= lam <= p - 1:
        raise ValueError("lambda must lie in 0..p-1")
    F = F or PrimeField(p)
    W = witt_algebra(p, F)
    ops = F.zeros((p, p, p))
    for k in range(-1, p - 1):
        for j in range(p):
            t = k + j
            if 0 <= t <= p - 1:
                ops[k + 1, t, j] = F.from_int(j + (lam + 1) * (k + 1))
    return VermaModule(p, lam, ModuleAction(W.table, ops, [f"m{i}" for i in range(p)]))


def quotient_l_pminus1(p: int, F: Field | None = None) -> ModuleAction:
    """``L(p-1) / <m_0>`` on the classes of ``m_1..m_{p-1}``."""
    L = verma_module(p, p - 1, F)
    ops = L.action.operators
    F = L.action.field
    if F.nonzero(ops[:, 1:, 0]).any():
        raise ValueError("<m0> is not a submodule")
    return ModuleAction(L.action.algebra, np.ascontiguousarray(ops[:, 1:, 1:]),
                        [f"m{i}" for i in range(1, p)])


@dataclass
class InvariantProducts:
    dim: int
    basis: np.ndarray  # (dim, m, m, m): basis[s, c, a, b] = coefficient of m_c in T(m_a, m_b)


def invariant_product_space(act: ModuleAction, order: list[int] | None = None) -> InvariantProducts:
    """Bilinear ``T: M x M -> M`` with ``x T(u,v) = T(xu, v) + T(u, xv)`` for every basis ``x``.

    The constraints are imposed one algebra element at a time, each time
    solving only for coordinates in the kernel found so far.
    """
    F = act.field
    d = act.algebra.dim
    mdim = act.module_dim
    n = mdim ** 3
    if n > MAX_PRODUCT_UNKNOWNS:
        raise ValueError(f"{n} unknowns exceed the bound of {MAX_PRODUCT_UNKNOWNS}")
    I_m = F.eye(mdim)
    I_mm = F.eye(mdim * mdim)
    basis = F.eye(n)  # rows: current kernel in full coordinates
    for x in (order if order is not None else range(d)):
        rho = act.operators[x]
        K = F.reduce(np.kron(rho, I_m) + np.kron(I_m, rho))
        A = F.reduce(np.kron(rho, I_mm) - np.kron(I_m, K.T))
        # rows of basis are vec(T); constraint A vec(T) = 0 restricted to span(basis)
        restricted = F.matmul(A, basis.T)
        ker = kernel_basis(restricted, F)
        basis = F.matmul(ker.basis, basis) if ker.dim else F.zeros((0, n))
        if not basis.shape[0]:
            break
    basis = Subspace.span(F, n, basis).basis if basis.shape[0] else basis
    return InvariantProducts(basis.shape[0], basis.reshape(-1, mdim, mdim, mdim))


def witt_module_action(p: int, lam: int) -> ModuleAction:
    return verma_module(p, lam).action


# ---------------------------------------------------------------------------
# embeddings into Der(C_s)
# ---------------------------------------------------------------------------

def _dsum(C: CayleyAlgebra, terms) -> np.ndarray:
    F = C.field
    total = F.zeros((8, 8))
    for coef, x, y in terms:
        D = inner_derivation(C.table, C.vector(x), C.vector(y)).matrix
        total = F.reduce(total + F.from_int(coef) * D)
    return total


def witt_embedding_der(F: Field) -> list[LinearMapRep]:
    """The inner-derivation images of ``e_{-1}, ..., e_5`` in ``Der(C_s)``, in that order."""
    _require_char(F, 7)
    C = split_cayley(F)
    return [LinearMapRep(F, _dsum(C, WITT_DERIVATION_IMAGES[k])) for k in range(-1, 6)]


def witt_embedding_alternatives(F: Field) -> dict[int, np.ndarray]:
    C = split_cayley(F)
    return {k: _dsum(C, terms) for k, terms in WITT_DERIVATION_ALTERNATIVES.items()}


def check_witt_brackets(ops, F: Field, table: StructureTable | None = None) -> CheckResult:
    """``[X_i, X_j] = sum_k c_ijk X_k`` for the operators ``X`` (default: Witt bracket)."""
    ops = F.asarray(ops)
    table = table or witt_algebra(7, F).table
    return check_representation(ModuleAction(table, ops))


@dataclass
class WittEmbeddingReport:
    images: list[LinearMapRep]
    brackets: CheckResult
    derivations: CheckResult
    span_dim: int
    restricted: CheckResult
    killing_block: np.ndarray
    killing_zero: bool
    alternatives: dict[int, bool]
    matches_dixmier_transport: bool
    scale_to_transport: int | None = None

    @property
    def ok(self) -> bool:
        return (self.brackets.ok and self.derivations.ok and self.span_dim == 8
                and self.restricted.ok and self.killing_zero)


def _proportionality(F: Field, A, B):
    """``c`` with ``A = c B`` (``B`` nonzero), or ``None``."""
    A, B = F.asarray(A), F.asarray(B)
    nz = np.argwhere(F.nonzero(B))
    if not len(nz):
        return None
    idx = tuple(nz[0])
    c = F.reduce(A[idx] * F.inv(B[idx]))
    return c if F.equal(A, F.reduce(c * B)) else None


def witt_embedding_report(F: Field) -> WittEmbeddingReport:
    _require_char(F, 7)
    C = split_cayley(F)
    images = witt_embedding_der(F)
    ops = np.stack([im.matrix for im in images])
    W = witt_algebra(7, F)
    brackets = check_witt_brackets(ops, F, W.table)
    derivs = operators_are_derivations(ops, C.table)
    span = Subspace.span(F, 64, ops.reshape(len(images), 64))
    restricted = verify_p_mapping(ModuleAction(W.table, ops), W.p_mapping)
    G = derivation_algebra(C.table)
    kappa = killing_form(G.table)
    coords = G.coordinates(ops)
    block = einsum(F, "ai,ij,bj->ab", coords, kappa, coords)
    alts = witt_embedding_alternatives(F)
    alt_ok = {k: F.equal(alts[k], images[k + 1].matrix) for k in alts}
    std = standard_witt_embedding(F)
    scale = _proportionality(F, ops, std)
    return WittEmbeddingReport(images, brackets, derivs, span.dim, restricted, block,
                               F.is_zero_array(block), alt_ok, F.equal(std, ops),
                               None if scale is None else int(scale))


def transport_operators(F: Field, ops_dixmier) -> np.ndarray:
    """Conjugate operators on ``F1 + V_6`` to the good basis through the explicit isomorphism."""
    psi = explicit_good_basis_iso(F).matrix
    psi_inv = inverse(psi, F)
    ops = F.asarray(ops_dixmier)
    return np.stack([F.matmul(F.matmul(psi, D), psi_inv) for D in ops])


def standard_witt_embedding(F: Field) -> np.ndarray:
    """Operators ``e_{-1}..e_5`` on ``C_s`` (good basis) from the polynomial action on ``V_6``."""
    ops = witt_action_on_v6("polynomial", F).operators
    return transport_operators(F, extend_to_dixmier(F, ops))


def circle_witt_embedding(F: Field) -> np.ndarray:
    """A Witt basis ``e~_{-1}..e~_5`` of the circle-action image in ``Der(C_s)`` (good basis)."""
    f_ops = witt_action_on_v6("circle", F).operators
    B = circle_to_witt_basis(F)
    e_ops = einsum(F, "kj,jab->kab", B, f_ops)
    return transport_operators(F, extend_to_dixmier(F, e_ops))


@dataclass
class ConjugatorResult:
    phi: LinearMapRep
    intertwiner_dim: int
    mu: object
    automorphism: CheckResult
    conjugates: bool


class NotAWittSubalgebra(ValueError):
    pass


def witt_conjugator(target, F: Field) -> ConjugatorResult:
    """Automorphism ``phi`` of ``C_s`` with ``phi S_k phi^-1 = target_k`` for the standard ``S``.

    ``target`` holds seven ``8 x 8`` operators on the good basis forming a
    Witt basis.  The intertwiners ``V_6 -> C_s^0`` are computed, the
    unique one (up to scalar) is rescaled so that ``[Tm_i, Tm_j]/2 =
    c(i,j) Tm_{i+j-3}``, and ``phi`` sends ``1 -> 1``, ``m_i -> Tm_i``
    (composed with the inverse of the explicit isomorphism).
    """
    _require_char(F, 7)
    target = F.asarray(target)
    C = split_cayley(F)
    C0 = trace_zero_subspace(C)
    rho = witt_action_on_v6("polynomial", F).operators
    # restrict target operators to C^0 in its RREF coordinates
    restricted = []
    for D in target:
        img = F.matmul(D, C0.basis.T).T
        if not C0.contains(img):
            raise NotAWittSubalgebra("operators do not preserve the trace-zero subspace")
        restricted.append(C0.coordinates(img).T)
    # unknown T (7x7, row-major): R_k T - T rho_k = 0
    I7 = F.eye(7)
    blocks = [F.reduce(np.kron(R, I7) - np.kron(I7, F.asarray(r).T)) for R, r in zip(restricted, rho)]
    ker = kernel_basis(np.concatenate(blocks, axis=0), F)
    if ker.dim != 1:
        raise NotAWittSubalgebra(f"intertwiner space has dimension {ker.dim}, expected 1")
    T = ker.basis[0].reshape(7, 7)
    tm = F.matmul(T.T, C0.basis)  # rows: T m_i as 8-vectors
    half = F.inv(F.from_int(2))
    mu = None
    for i in range(7):
        for j in range(7):
            br = F.reduce(C.table.bracket(tm[i], tm[j]) * half)
            cij = c_coeff(i, j, F)
            target_vec = tm[(i + j - 3) % 7]
            if not F.nonzero(np.asarray([cij], dtype=F.dtype))[0]:
                if F.nonzero(br).any():
                    raise NotAWittSubalgebra(f"bracket of images {i}, {j} should vanish")
                continue
            ref = F.reduce(target_vec * cij)
            sol = solve(ref[:, None], br, F)
            if sol is None:
                raise NotAWittSubalgebra(f"bracket of images {i}, {j} is not a multiple of the expected vector")
            if mu is None:
                mu = sol[0]
            elif not F.equal(np.asarray([sol[0]], dtype=F.dtype), np.asarray([mu], dtype=F.dtype)):
                raise NotAWittSubalgebra("scaling factor is not a single scalar")
    if mu is None or not F.nonzero(np.asarray([mu], dtype=F.dtype))[0]:
        raise NotAWittSubalgebra("intertwiner image has zero product")
    tm = F.reduce(tm * F.inv(mu))
    phi_dix = F.zeros((8, 8))
    phi_dix[:, 0] = C.unit
    phi_dix[:, 1:] = tm.T
    psi = explicit_good_basis_iso(F).matrix
    phi = F.matmul(phi_dix, inverse(psi, F))
    auto = check_automorphism(C, phi)
    std = standard_witt_embedding(F)
    ok = False
    if auto.ok:
        phi_inv = inverse(phi, F)
        ok = all(F.equal(F.matmul(F.matmul(phi, S), phi_inv), Tk) for S, Tk in zip(std, target))
    return ConjugatorResult(LinearMapRep(F, phi), ker.dim, mu, auto, ok)


def twisted_derivations_of_dixmier(alpha, F: Field) -> CheckResult:
    """The ``W^alpha`` operators, extended by ``1 -> 0``, are derivations of the Dixmier algebra."""
    tw = twisted_witt(alpha, F)
    D = dixmier_cayley(F)
    return operators_are_derivations(extend_to_dixmier(F, tw.action.operators), D.table)
