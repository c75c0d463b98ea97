import pytest

from modular_g2.algkit import StructureTable, is_simple
from modular_g2.cayley import c0_bracket_algebra, split_cayley
from modular_g2.fields import PrimeField
from modular_g2.modular3 import (
    derivations_are_inner,
    eq3_check,
    ideal_structure_report,
    invariant_fingerprint,
    jacobi_dichotomy,
    nilpotent_kernel_multiset,
    psl3,
    sl_table,
)
from modular_g2.modular7 import sl2_table


def test_sl3_and_psl3_dimensions(gf3):
    sl, S = sl_table(gf3, 3)
    assert sl.dim == 8 and S.dim == 8
    P = psl3(gf3)
    assert P.dim == 7
    assert is_simple(P).simple is True


def test_psl3_requires_char3(gf7):
    with pytest.raises(ValueError):
        psl3(gf7)


def test_ideal_structure(gf3):
    rep = ideal_structure_report(gf3)
    assert rep.ok, rep.failures
    assert rep.der_dim == 14
    assert rep.ideal_dim == 7 and rep.ideal_is_ideal
    assert rep.ideal_simple == "simple"
    assert rep.centralizer_dim == 0
    assert rep.quotient_dim == 7 and rep.quotient_simple == "simple"
    assert rep.der_simple == "not simple" and rep.der_witness_dim is not None
    assert rep.unique


def test_ideal_structure_rejects_other_characteristic(gf7):
    with pytest.raises(ValueError):
        ideal_structure_report(gf7)


def test_der_of_der_is_inner(gf3):
    rep = derivations_are_inner()
    assert (rep.der_dim, rep.inner_dim, rep.equal) == (14, 14, True)


def test_sl2_derivations_inner_char5():
    rep = derivations_are_inner(sl2_table(PrimeField(5)))
    assert (rep.der_dim, rep.inner_dim, rep.equal) == (3, 3, True)


def test_jacobi_dichotomy():
    res = jacobi_dichotomy((3, 5, 7))
    assert res.results[3].ok
    assert not res.results[5].ok and not res.results[7].ok
    # J(u1,u2,u3) = 6(p1 - p2): 0 mod 3, 1 mod 5, 6 mod 7
    assert res.example_jacobian[3] == ["0"] * 7
    assert res.example_jacobian[5] == ["1"] + ["0"] * 6
    assert res.example_jacobian[7] == ["6"] + ["0"] * 6


def test_jacobi_witness_gf7():
    # h = p1 - p2: [h,u1] = 2u1, [h,u2] = 2u2, [u1,u2] = 2v3, [h,v3] = -2v3,
    # so J(h,u1,u2) = 4v3 + 4v3 + 4v3 = 12 v3 = 5 v3
    res = jacobi_dichotomy((7,)).results[7]
    assert res.witness == (0, 1, 2)
    assert res.detail["value"] == ["0"] * 6 + ["5"]
    assert res.detail["labels"] == ["p1 - p2", "u1", "u2"]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_eq3(p):
    res = eq3_check(PrimeField(p))
    assert res.ok


def test_nilpotent_kernels_sl2_gf5():
    # the nilpotent cone of sl2 over GF(5) has 25 points; each nonzero x has centralizer F x
    kernels, elementwise = nilpotent_kernel_multiset(sl2_table(PrimeField(5)))
    assert elementwise
    assert kernels == ((1, 24),)


def test_abelian_nilpotent_kernels(gf3):
    T = StructureTable(gf3, gf3.zeros((2, 2, 2)))
    assert nilpotent_kernel_multiset(T) == (((2, 8),), True)


def test_fingerprints_c0_and_psl3_agree(gf3):
    a = invariant_fingerprint(c0_bracket_algebra(split_cayley(gf3)))
    b = invariant_fingerprint(psl3(gf3))
    assert a.comparable() == b.comparable()
    assert not a.flags and not b.flags
    assert a.dim == 7 and a.simple == "simple"
    assert a.der_dim == 14


def test_fingerprint_distinguishes_sl2_from_abelian(gf3):
    a = invariant_fingerprint(sl2_table(gf3))
    b = invariant_fingerprint(StructureTable(gf3, gf3.zeros((3, 3, 3))))
    assert a.comparable() != b.comparable()


def test_fingerprint_needs_prime_field(gf7t):
    T = StructureTable(gf7t, gf7t.zeros((2, 2, 2)))
    with pytest.raises(ValueError):
        nilpotent_kernel_multiset(T)
