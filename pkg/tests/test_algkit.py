import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modular_g2.algkit import (
    Grading,
    LinearMapRep,
    StructureTable,
    center,
    check_homomorphism,
    check_identity,
    derivation_algebra,
    derived_series,
    gl_table,
    graded_derivations,
    ideal_closure,
    inner_derivations,
    is_derivation,
    is_ideal,
    is_simple,
    killing_form,
    quotient,
    subalgebra,
    unit_element,
    verify_grading,
)
from modular_g2.fields import PrimeField, RationalFunctionField
from modular_g2.linalg import Subspace


def table_from_brackets(F, n, brackets, labels=None):
    """Antisymmetric table from ``{(i, j): {k: c}}`` with ``i < j``."""
    c = F.zeros((n, n, n))
    for (i, j), terms in brackets.items():
        for k, v in terms.items():
            c[i, j, k] = F.from_int(v)
            c[j, i, k] = F.from_int(-v)
    return StructureTable(F, c, labels)


def sl2(F):
    # e, h, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h
    return table_from_brackets(F, 3, {(0, 1): {0: -2}, (1, 2): {2: -2}, (0, 2): {1: 1}}, ["e", "h", "f"])


def heisenberg(F):
    return table_from_brackets(F, 3, {(0, 1): {2: 1}}, ["x", "y", "z"])


def nonabelian2(F):
    return table_from_brackets(F, 2, {(0, 1): {1: 1}}, ["a", "b"])


def witt3(F):
    # W1 for p = 3: e_{-1}, e_0, e_1
    return table_from_brackets(F, 3, {(0, 1): {0: 1}, (0, 2): {1: 2}, (1, 2): {2: 1}})


# ---------------------------------------------------------------------------
# brute-force oracle: enumerate every subspace and test two-sidedness
# ---------------------------------------------------------------------------

def all_subspaces(p, n):
    zero = (0,) * n
    seen = {frozenset([zero])}
    frontier = list(seen)
    vectors = list(itertools.product(range(p), repeat=n))
    while frontier:
        nxt = []
        for S in frontier:
            for v in vectors:
                if v in S:
                    continue
                T = frozenset(tuple((a + c * b) % p for a, b in zip(s, v)) for s in S for c in range(p))
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return seen


def brute_simple(L):
    p = L.field.p
    n = L.dim
    c = np.asarray(L.constants) % p
    if not c.any():
        return False
    for S in all_subspaces(p, n):
        if len(S) in (1, p ** n):
            continue
        ok = True
        for s in S:
            sv = np.array(s)
            for j in range(n):
                left = tuple(int(x) for x in np.einsum("i,ik->k", sv, c[:, j, :]) % p)
                right = tuple(int(x) for x in np.einsum("i,ik->k", sv, c[j, :, :]) % p)
                if left not in S or right not in S:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return False
    return True


@pytest.mark.parametrize("build,p", [
    (sl2, 3), (sl2, 5), (sl2, 2), (heisenberg, 3), (nonabelian2, 2), (witt3, 3),
    (lambda F: gl_table(F, 2), 3), (lambda F: gl_table(F, 2), 2),
])
def test_is_simple_matches_subspace_enumeration(build, p):
    L = build(PrimeField(p))
    res = is_simple(L)
    assert res.simple is brute_simple(L)
    if res.simple is False and res.witness is not None:
        assert is_ideal(L, res.witness) and 0 < res.witness.dim < L.dim


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3), st.data())
def test_is_simple_random_algebras_gf2(n, data):
    F = PrimeField(2)
    bits = data.draw(st.lists(st.integers(0, 1), min_size=n ** 3, max_size=n ** 3))
    L = StructureTable(F, np.array(bits, dtype=np.int64).reshape(n, n, n))
    res = is_simple(L)
    assert res.simple is brute_simple(L)


def test_is_simple_undecided_past_bound():
    L = sl2(PrimeField(5))
    # center / derived / Killing / basis spins do not decide sl2, so a tiny bound is reported
    res = is_simple(L, max_points=1)
    assert res.simple is None and res.points_checked == 1


def test_is_simple_over_function_field_is_undecided():
    assert is_simple(sl2(RationalFunctionField(5))).simple is None


# ---------------------------------------------------------------------------
# identities, derivations, quotients
# ---------------------------------------------------------------------------

def test_jacobi_and_anticommutativity_of_gl():
    L = gl_table(PrimeField(3), 3)
    assert check_identity(L, "anticommutative").ok
    assert check_identity(L, "jacobi").ok


def test_jacobi_failure_has_witness():
    F = PrimeField(5)
    # antisymmetric but not Lie: [x,y] = z, [y,z] = x, [x,z] = x
    L = table_from_brackets(F, 3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
    res = check_identity(L, "jacobi")
    assert not res.ok and len(res.witness) == 3


def test_derivations_of_one_dimensional_idempotent():
    for p in (2, 3, 7):
        F = PrimeField(p)
        L = StructureTable(F, F.asarray([[[1]]]))
        assert derivation_algebra(L).dim == 0


def test_derivations_of_abelian_algebra_are_gl():
    F = PrimeField(3)
    assert derivation_algebra(StructureTable(F, F.zeros((3, 3, 3)))).dim == 9


def test_derivations_of_sl2_are_inner_in_char_5():
    F = PrimeField(5)
    L = sl2(F)
    D = derivation_algebra(L)
    assert D.dim == 3
    assert inner_derivations(L) == D.space
    for m in D.matrices:
        assert is_derivation(L, m).ok


def test_heisenberg_derivations():
    # Der(h3) has dimension 6 in every characteristic: gl2 on (x, y) twisted by trace on z, plus 2 maps into z
    for p in (2, 3, 5):
        assert derivation_algebra(heisenberg(PrimeField(p))).dim == 6


def test_center_and_derived_series():
    F = PrimeField(3)
    H = heisenberg(F)
    assert center(H).dim == 1
    assert [S.dim for S in derived_series(H)] == [3, 1, 0, 0]


def test_quotient_by_center():
    F = PrimeField(3)
    G = gl_table(F, 2)
    Z = center(G)
    assert Z.dim == 1
    Q, proj = quotient(G, Z)
    assert Q.dim == 3
    assert check_homomorphism(proj, G, Q).ok
    with pytest.raises(ValueError):
        quotient(G, Subspace.span(F, 4, G.basis_vector(1)[None, :]))


def test_subalgebra_and_ideal_closure():
    F = PrimeField(3)
    G = gl_table(F, 2)
    S = ideal_closure(G, G.basis_vector(1)[None, :])  # E12 generates sl2
    assert S.dim == 3
    assert check_identity(subalgebra(G, S), "jacobi").ok


def test_killing_form_of_sl2():
    F = PrimeField(7)
    K = killing_form(sl2(F))
    # kappa(h, h) = 8, kappa(e, f) = 4
    assert K[1, 1] == 8 % 7 and K[0, 2] == 4 and K[0, 0] == 0


def test_homomorphism_witness():
    F = PrimeField(5)
    L = sl2(F)
    bad = LinearMapRep(F, F.asarray(np.diag([1, 1, 2])))
    res = check_homomorphism(bad, L, L)
    assert not res.ok and len(res.witness) == 2


def test_unit_element():
    F = PrimeField(3)
    c = F.zeros((2, 2, 2))
    c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1  # F[x]/(x^2)
    assert np.array_equal(unit_element(StructureTable(F, c)), F.asarray([1, 0]))
    assert unit_element(heisenberg(F)) is None


def test_grading_and_homogeneous_derivations():
    F = PrimeField(5)
    L = sl2(F)
    g = Grading(1, [(1,), (0,), (-1,)])
    assert verify_grading(L, g).ok
    assert verify_grading(L, g).detail["support"] == [(-1,), (0,), (1,)]
    assert graded_derivations(L, g, (0,)).dim == 1
    assert graded_derivations(L, g, (1,)).dim == 1
    assert graded_derivations(L, g, (2,)).dim == 0
    assert not verify_grading(L, Grading(1, [(1,), (1,), (-1,)])).ok


def test_json_roundtrip():
    for F in (PrimeField(7), RationalFunctionField(3)):
        L = sl2(F)
        back = StructureTable.from_json(L.to_json())
        assert back.field == F and F.equal(back.constants, L.constants) and back.labels == L.labels
