import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modular_g2.fields import PrimeField, RationalFunctionField
from modular_g2.linalg import Subspace, inverse, kernel_basis, rank, rref, solve


def brute_kernel_size(A, p):
    n = A.shape[1]
    return sum(1 for x in itertools.product(range(p), repeat=n) if not (A @ np.array(x) % p).any())


def small_matrices(p, max_rows=4, max_cols=4):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda s: st.lists(st.integers(0, p - 1), min_size=s[0] * s[1], max_size=s[0] * s[1]).map(
            lambda v: np.array(v, dtype=np.int64).reshape(s)))


@settings(max_examples=80)
@given(st.sampled_from([2, 3]).flatmap(lambda p: st.tuples(st.just(p), small_matrices(p))))
def test_kernel_matches_enumeration(data):
    p, A = data
    F = PrimeField(p)
    K = kernel_basis(A, F)
    assert p ** K.dim == brute_kernel_size(A, p)
    assert not (A @ K.basis.T % p).any()
    assert rank(A, F) + K.dim == A.shape[1]


@settings(max_examples=50)
@given(small_matrices(5, 5, 5))
def test_rref_is_canonical_under_row_operations(A):
    F = PrimeField(5)
    rng = np.random.default_rng(int(A.sum()))
    m = A.shape[0]
    while True:
        P = F.random_array(rng, (m, m))
        if rank(P, F) == m:
            break
    R1, r1 = rref(A, F)
    R2, r2 = rref(F.matmul(P, A), F)
    assert r1 == r2
    assert np.array_equal(R1, R2)


def test_solve_and_inconsistent():
    F = PrimeField(7)
    A = F.asarray([[1, 2], [2, 4]])
    assert solve(A, F.asarray([1, 3]), F) is None
    x = solve(A, F.asarray([3, 6]), F)
    assert np.array_equal(F.matmul(A, x[:, None])[:, 0], F.asarray([3, 6]))


def test_inverse_and_singular():
    F = PrimeField(11)
    A = F.asarray([[2, 1, 0], [0, 3, 1], [1, 0, 5]])
    assert np.array_equal(F.matmul(A, inverse(A, F)), F.eye(3))
    with pytest.raises(ValueError):
        inverse(F.asarray([[1, 2], [2, 4]]), F)


def test_large_batched_system_matches_rank():
    F = PrimeField(7)
    rng = np.random.default_rng(1)
    B = F.random_array(rng, (40, 30))
    A = F.matmul(F.random_array(rng, (900, 40)), B)  # rank <= 30, many rows exercise batching
    assert rank(A, F) == rank(B, F)
    assert kernel_basis(A, F) == kernel_basis(B, F)


@settings(max_examples=40)
@given(st.lists(st.integers(0, 2), min_size=12, max_size=12), st.lists(st.integers(0, 2), min_size=12, max_size=12))
def test_dimension_formula(a, b):
    F = PrimeField(3)
    U = Subspace.span(F, 4, np.array(a).reshape(3, 4))
    W = Subspace.span(F, 4, np.array(b).reshape(3, 4))
    S, I = U + W, U.intersect(W)
    assert S.dim + I.dim == U.dim + W.dim
    assert I.issubspace(U) and I.issubspace(W)
    assert U.issubspace(S) and W.issubspace(S)
    # membership oracle by enumeration
    for x in itertools.product(range(3), repeat=4):
        assert I.contains(np.array(x)) == (U.contains(np.array(x)) and W.contains(np.array(x)))


def test_coordinates_and_outside_vector():
    F = PrimeField(5)
    S = Subspace.span(F, 3, [[1, 2, 0], [0, 1, 1]])
    v = F.asarray([2, 2, 3])  # 2*(1,2,0) + 3*(0,1,1) mod 5
    c = S.coordinates(v)
    assert np.array_equal(F.matmul(c[None, :], S.basis)[0], v)
    with pytest.raises(ValueError):
        S.coordinates(F.asarray([0, 0, 1]))


def test_function_field_kernel():
    F = RationalFunctionField(2)
    t = F.t
    A = F.asarray([[F.one_value, t, t * t], [t, t * t, t * t * t]])
    K = kernel_basis(A, F)
    assert K.dim == 2
    assert F.is_zero_array(F.matmul(A, K.basis.T))


def test_subspace_equality_is_basis_independent():
    F = PrimeField(3)
    U = Subspace.span(F, 3, [[1, 1, 0], [0, 1, 1]])
    W = Subspace.span(F, 3, [[1, 2, 1], [1, 0, 2]])
    assert U == W
