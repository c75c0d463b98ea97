from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest

from modular_g2.algkit import check_representation, is_derivation, ModuleAction
from modular_g2.cayley import check_automorphism, check_composition, split_cayley
from modular_g2.fields import PrimeField
from modular_g2.linalg import solve
from modular_g2.modular7 import (
    NotAWittSubalgebra,
    c_coeff,
    check_cij_recursion,
    check_fgg_identity,
    circle_witt_embedding,
    compare_tables,
    dixmier_cayley,
    invariant_product_space,
    printed_table2,
    quotient_l_pminus1,
    standard_witt_embedding,
    transvectant_table,
    twisted_derivations_of_dixmier,
    twisted_witt,
    v6_operator,
    v6_product_table,
    verify_good_basis_iso,
    verma_module,
    witt_action_on_v6,
    witt_algebra,
    witt_conjugator,
    witt_embedding_report,
)


# --- transvectant oracle over Q, polynomials as {(a, b): coeff} for x^a y^b ---

def _deriv(poly, var):
    out = {}
    for (a, b), c in poly.items():
        e = (a, b)[var]
        if e:
            key = (a - 1, b) if var == 0 else (a, b - 1)
            out[key] = out.get(key, 0) + c * e
    return out


def _mulp(f, g):
    out = {}
    for (a, b), c in f.items():
        for (d, e), k in g.items():
            out[(a + d, b + e)] = out.get((a + d, b + e), 0) + c * k
    return out


def rational_transvectant(i, j, q):
    """(x^(6-i) y^i, x^(6-j) y^j)_q over Q, as the coefficient vector of degree 12 - 2q."""
    f, g = {(6 - i, i): Fraction(1)}, {(6 - j, j): Fraction(1)}
    total = {}
    for r in range(q + 1):
        a, b = f, g
        for _ in range(q - r):
            a = _deriv(a, 0)
        for _ in range(r):
            a = _deriv(a, 1)
        for _ in range(r):
            b = _deriv(b, 0)
        for _ in range(q - r):
            b = _deriv(b, 1)
        for key, c in _mulp(a, b).items():
            total[key] = total.get(key, 0) + (-1) ** r * comb(q, r) * c
    scale = Fraction(factorial(6 - q) ** 2, factorial(6) ** 2)
    n = 12 - 2 * q
    return [total.get((n - k, k), 0) * scale for k in range(n + 1)]


def to_gf(F, x: Fraction):
    return F.reduce(F.from_int(x.numerator) * F.inv(F.from_int(x.denominator)))


# --- differential-operator oracle on F[y]/(y^7 - alpha) ---

def density_operator(F, a, weight, alpha, n=7):
    """Matrix of y^a d/dy + weight * a * y^(a-1) on 1, y, ..., y^(n-1) with y^n = alpha."""
    M = F.zeros((n, n))
    for i in range(n):
        coef = i + weight * a
        e = i + a - 1
        if coef % F.characteristic == 0:
            continue
        fac = F.one_value
        while e >= n:
            e -= n
            fac = fac * alpha
        assert e >= 0
        M[e, i] = F.reduce(M[e, i] + F.from_int(coef) * fac)
    return M


def oracle_structure(F, ops):
    """Structure constants from commutators of linearly independent operators."""
    d = len(ops)
    A = np.stack([o.reshape(-1) for o in ops], axis=1)
    c = F.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            comm = F.reduce(F.matmul(ops[i], ops[j]) - F.matmul(ops[j], ops[i]))
            sol = solve(A, comm.reshape(-1), F)
            assert sol is not None
            c[i, j] = sol
    return c


# ---------------------------------------------------------------------------


def test_transvectant_table_against_rational_oracle(gf7):
    T = transvectant_table(gf7)
    for i in range(7):
        for j in range(7):
            expected = np.array([to_gf(gf7, x) for x in rational_transvectant(i, j, 3)])
            assert np.array_equal(T.constants[i, j], expected)


def test_table2_three_ways(gf7):
    printed = printed_table2(gf7)
    assert compare_tables(v6_product_table(gf7), printed).ok
    assert compare_tables(transvectant_table(gf7), printed).ok
    res = compare_tables(v6_product_table(gf7), transvectant_table(gf7))
    assert res.ok and res.detail["entries"] == 49


def test_table2_spot_entries(gf7):
    T = v6_product_table(gf7)
    # m0 m4 = 3 m1, m4 m5 = 3 m6, m3 m6 = -m6
    assert T.constants[0, 4, 1] == 3
    assert T.constants[4, 5, 6] == 3
    assert T.constants[3, 6, 6] == 6


def test_table2_corruption_detected(gf7):
    printed = printed_table2(gf7)
    printed.constants[2, 6, 5] = 2
    res = compare_tables(v6_product_table(gf7), printed)
    assert not res.ok and res.witness == (2, 6)


def test_recursion_all_triples(gf7):
    res = check_cij_recursion(gf7)
    assert res.ok and res.detail["triples"] == 343


def test_recursion_detects_single_corruption(gf7):
    def bad(i, j, F):
        return c_coeff(i, j, F) + (1 if (i, j) == (0, 6) else 0)

    assert not check_cij_recursion(gf7, bad).ok


def test_dixmier_iso_and_composition(gf7):
    res = verify_good_basis_iso(gf7)
    assert res.ok and res.detail["injective"] and res.detail["surjective"]
    assert check_composition(dixmier_cayley(gf7), samples=200).ok


def test_dixmier_needs_char_at_least_7(gf3):
    with pytest.raises(ValueError):
        dixmier_cayley(gf3)


def test_fgg_identity(gf7):
    assert check_fgg_identity(gf7, trials=50).ok


@pytest.mark.parametrize("p", [5, 7, 11])
def test_witt_brackets_from_derivations_of_truncated_polynomials(p):
    F = PrimeField(p)
    ops = [density_operator(F, k + 1, 0, 0, n=p) for k in range(-1, p - 1)]
    assert np.array_equal(witt_algebra(p, F).table.constants, oracle_structure(F, ops))


@pytest.mark.parametrize("variant,alpha", [("polynomial", 0), ("circle", 1)])
def test_v6_operators_are_weight_4_densities(gf7, variant, alpha):
    for k in range(-1, 6):
        assert np.array_equal(v6_operator(gf7, k, variant), density_operator(gf7, k + 1, 4, alpha))


def test_circle_operator_example(gf7):
    # f5(m6) = (6 + 20 + 4) m_(11 mod 7) = 30 m4 = 2 m4
    M = v6_operator(gf7, 5, "circle")
    assert M[4, 6] == 2 and not np.delete(M[:, 6], 4).any()


@pytest.mark.parametrize("variant", ["polynomial", "circle"])
def test_v6_actions_are_representations_by_derivations(gf7, variant):
    act = witt_action_on_v6(variant, gf7)
    assert check_representation(act).ok
    T = v6_product_table(gf7)
    assert all(is_derivation(T, D).ok for D in act.operators)


@pytest.mark.parametrize("alpha", [1, 3, 6])
def test_twisted_witt_prime_field(gf7, alpha):
    tw = twisted_witt(alpha, gf7)
    ops = [density_operator(gf7, k + 1, 0, alpha) for k in range(-1, 6)]
    assert np.array_equal(tw.table.constants, oracle_structure(gf7, ops))
    for k in range(-1, 6):
        assert np.array_equal(tw.action.operators[k + 1], density_operator(gf7, k + 1, 4, alpha))
    assert check_representation(tw.action).ok
    assert twisted_derivations_of_dixmier(alpha, gf7).ok


def test_twisted_witt_over_function_field(gf7t):
    t = gf7t.t
    tw = twisted_witt(t, gf7t)
    ops = [density_operator(gf7t, k + 1, 0, t) for k in range(-1, 6)]
    assert gf7t.equal(tw.table.constants, oracle_structure(gf7t, ops))
    # [f3, f5] = 2 f8 = 2t f1
    br = tw.table.multiply(tw.table.basis_vector(4), tw.table.basis_vector(6))
    expected = gf7t.zeros(7)
    expected[2] = gf7t.reduce(gf7t.from_int(2) * t)
    assert gf7t.equal(br, expected)
    assert check_representation(tw.action).ok
    T = v6_product_table(gf7t)
    assert all(is_derivation(T, D).ok for D in tw.action.operators)
    assert twisted_derivations_of_dixmier(t, gf7t).ok


def test_twisted_rejects_zero_alpha(gf7):
    with pytest.raises(ValueError):
        twisted_witt(0, gf7)


@pytest.mark.parametrize("p,lam", [(5, 1), (7, 3), (7, 6), (11, 4)])
def test_verma_module_is_density_module(p, lam):
    F = PrimeField(p)
    V = verma_module(p, lam, F)
    for k in range(-1, p - 1):
        assert np.array_equal(V.action.operators[k + 1], density_operator(F, k + 1, lam + 1, 0, n=p))
    assert check_representation(V.action).ok


def test_verma_rejects_bad_lambda():
    with pytest.raises(ValueError):
        verma_module(7, 7)


@pytest.mark.parametrize("p,lam,expected", [(5, 1, 0), (5, 2, 0), (7, 1, 0), (7, 2, 0), (7, 3, 1), (7, 4, 0)])
def test_invariant_product_dimensions(p, lam, expected):
    assert invariant_product_space(verma_module(p, lam).action).dim == expected


@pytest.mark.parametrize("p", [5, 7])
def test_adjoint_and_quotient(p):
    assert invariant_product_space(verma_module(p, p - 2).action).dim >= 1
    assert invariant_product_space(quotient_l_pminus1(p)).dim == 0


def test_l3_product_is_the_v6_product(gf7):
    inv = invariant_product_space(verma_module(7, 3).action)
    T = inv.basis[0]  # T[c, a, b]
    V = v6_product_table(gf7).constants.transpose(2, 0, 1)
    nz = np.argwhere(V)[0]
    scale = gf7.reduce(T[tuple(nz)] * gf7.inv(V[tuple(nz)]))
    assert np.array_equal(T, gf7.reduce(scale * V))


def test_invariant_products_are_invariant(gf7):
    act = verma_module(7, 5).action
    inv = invariant_product_space(act)
    for T in inv.basis:
        for rho in act.operators:
            lhs = np.einsum("ca,abk->cbk", rho, T)
            rhs = np.einsum("cab,ai->cib", T, rho) + np.einsum("cab,bi->cai", T, rho)
            assert np.array_equal(lhs % 7, rhs % 7)


def test_witt_embedding_report(gf7):
    rep = witt_embedding_report(gf7)
    assert len(rep.images) == 7
    assert rep.derivations.ok
    assert rep.restricted.ok
    assert rep.killing_zero
    assert all(rep.alternatives.values())
    assert rep.span_dim == 7
    # the listed images are four times the transported polynomial action
    assert rep.scale_to_transport == 4
    assert not rep.brackets.ok


def test_rescaled_embedding_satisfies_witt_brackets(gf7):
    rep = witt_embedding_report(gf7)
    W = witt_algebra(7, gf7)
    ops = np.stack([gf7.reduce(im.matrix * gf7.inv(4)) for im in rep.images])
    assert check_representation(ModuleAction(W.table, ops)).ok


def test_conjugator_circle_to_standard(gf7):
    C = split_cayley(gf7)
    target = circle_witt_embedding(gf7)
    res = witt_conjugator(target, gf7)
    assert res.intertwiner_dim == 1
    assert res.automorphism.ok and res.conjugates
    phi = res.phi.matrix
    assert check_automorphism(C, phi).ok


def test_conjugator_identity_on_standard(gf7):
    res = witt_conjugator(standard_witt_embedding(gf7), gf7)
    assert res.conjugates
    assert np.array_equal(res.phi.matrix, gf7.eye(8))


def test_conjugator_rejects_non_witt(gf7):
    bogus = np.stack([gf7.eye(8)] * 7)
    with pytest.raises(NotAWittSubalgebra):
        witt_conjugator(bogus, gf7)
