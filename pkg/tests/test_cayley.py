import json
from pathlib import Path

import numpy as np
import pytest

from modular_g2.algkit import StructureTable, check_identity, derivation_algebra, jacobian
from modular_g2.cayley import (
    GOOD_BASIS,
    c0_basis,
    c0_bracket_algebra,
    c0_mod_unit,
    cayley_dickson_double,
    check_automorphism,
    check_composition,
    check_eq3,
    conjugate,
    find_isotropic_vector,
    split_cayley,
    split_quaternions,
    trace_zero_subspace,
)
from modular_g2.fields import PrimeField, RationalFunctionField

FIXTURES = Path(__file__).parent / "fixtures"

# the printed good-basis table: rows x, columns y, entry x*y
PRINTED_TABLE1 = """
p1: p1 0 u1 u2 u3 0 0 0
p2: 0 p2 0 0 0 v1 v2 v3
u1: 0 u1 0 v3 -v2 -p1 0 0
u2: 0 u2 -v3 0 v1 0 -p1 0
u3: 0 u3 v2 -v1 0 0 0 -p1
v1: v1 0 -p2 0 0 0 u3 -u2
v2: v2 0 0 -p2 0 -u3 0 u1
v3: v3 0 0 0 -p2 u2 -u1 0
"""


def printed_constants(F):
    idx = {lab: i for i, lab in enumerate(GOOD_BASIS)}
    c = F.zeros((8, 8, 8))
    for line in PRINTED_TABLE1.strip().splitlines():
        row, entries = line.split(":")
        for j, e in enumerate(entries.split()):
            if e == "0":
                continue
            sign = -1 if e.startswith("-") else 1
            c[idx[row], j, idx[e.lstrip("-")]] = F.from_int(sign)
    return c


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_split_cayley_matches_printed_table(p):
    F = PrimeField(p)
    assert np.array_equal(split_cayley(F).table.constants, printed_constants(F))


@pytest.mark.parametrize("p", [2, 3, 7])
def test_golden_fixture_is_table1(p):
    F = PrimeField(p)
    T = StructureTable.from_json((FIXTURES / f"table1_gf{p}.json").read_text())
    assert T.labels == GOOD_BASIS
    assert np.array_equal(T.constants, printed_constants(F))


def test_unit_and_quadratic_data(gf7):
    C = split_cayley(gf7)
    assert np.array_equal(C.unit, C.vector({"p1": 1, "p2": 1}))
    Q = C.quadratic
    # basis vectors are isotropic; x = u1 + v1 has x^2 = -1 and t(x) = 0, so q(x) = 1
    assert not gf7.nonzero(Q.norms(gf7.eye(8))).any()
    assert Q.b(C.vector({"p1": 1}), C.vector({"p2": 1})) == 1
    assert Q.b(C.vector({"u1": 1}), C.vector({"v1": 1})) == 1
    assert Q.t(C.unit) == 2
    assert Q.polar_rank == 8


@pytest.mark.parametrize("p", [2, 3, 7])
def test_conjugation_is_involution(p):
    F = PrimeField(p)
    C = split_cayley(F)
    rng = np.random.default_rng(p)
    for _ in range(20):
        x, y = F.random_array(rng, (8,)), F.random_array(rng, (8,))
        assert np.array_equal(conjugate(C, conjugate(C, x)), x)
        assert np.array_equal(conjugate(C, C.mul(x, y)), C.mul(conjugate(C, y), conjugate(C, x)))


def test_trace_zero_subspace_dimensions(gf2, gf7):
    assert trace_zero_subspace(split_cayley(gf7)).dim == 7
    C2 = split_cayley(gf2)
    S = trace_zero_subspace(C2)
    assert S.dim == 7 and S.contains(C2.unit)


def test_c0_bracket_rejects_char2(gf2):
    with pytest.raises(ValueError):
        c0_bracket_algebra(split_cayley(gf2))


def test_c0_labels(gf7):
    L = c0_bracket_algebra(split_cayley(gf7))
    assert L.labels == ["p1 - p2", "u1", "u2", "u3", "v1", "v2", "v3"]


def test_jacobian_of_u1_u2_u3_over_gf7(gf7):
    C = split_cayley(gf7)
    L = c0_bracket_algebra(C)
    e = gf7.eye(7)
    J = jacobian(L, e[1], e[2], e[3])
    # [u1,u2] = 2 v3 and [2 v3, u3] = 2(p1 - p2); the three cyclic terms agree, total 6(p1 - p2)
    assert gf7.render_array(J) == ["6", "0", "0", "0", "0", "0", "0"]
    assert not check_identity(L, "jacobi").ok


@pytest.mark.parametrize("p", [5, 7])
def test_malcev_identity(p):
    L = c0_bracket_algebra(split_cayley(PrimeField(p)))
    assert check_identity(L, "anticommutative").ok
    assert check_identity(L, "malcev").ok


@pytest.mark.parametrize("p", [3, 5, 7])
def test_eq3_bracket_identity(p):
    F = PrimeField(p)
    C = split_cayley(F)
    assert check_eq3(c0_bracket_algebra(C), C, c0_basis(C)).ok


@pytest.mark.parametrize("p", [2, 3, 7])
def test_composition_split(p):
    res = check_composition(split_cayley(PrimeField(p)), samples=300)
    assert res.ok and res.detail["seed"] == 20240607


def test_composition_detects_corruption(gf7):
    C = split_cayley(gf7)
    c = C.table.constants.copy()
    c[2, 3, 7] = 2  # u1 u2 = 2 v3
    from modular_g2.cayley import CayleyAlgebra

    bad = CayleyAlgebra(StructureTable(gf7, c, C.labels))
    assert not check_composition(bad, samples=100).ok


@pytest.mark.parametrize("p", [2, 3])
def test_composition_doubled(p):
    F = PrimeField(p)
    Q, J = split_quaternions(F)
    C = cayley_dickson_double(Q, J, 1)
    assert check_composition(C, samples=200).ok
    assert find_isotropic_vector(C).vector is not None


def test_doubling_rejects_zero(gf3):
    Q, J = split_quaternions(gf3)
    with pytest.raises(ValueError):
        cayley_dickson_double(Q, J, 0)


def test_doubled_over_function_field(gf2t):
    Q, J = split_quaternions(gf2t)
    C = cayley_dickson_double(Q, J, gf2t.t)
    assert check_composition(C, samples=20).ok


def test_derivations_of_split_cayley(gf7, gf3):
    assert derivation_algebra(split_cayley(gf7).table).dim == 14
    assert derivation_algebra(split_cayley(gf3).table).dim == 14


def test_mod_unit_space(gf2):
    M = c0_mod_unit(split_cayley(gf2))
    assert M.dim == 6
    assert M.labels == ["u1", "u2", "u3", "v1", "v2", "v3"]
    assert np.array_equal(M.form, np.block([[np.zeros((3, 3), int), np.eye(3, dtype=int)],
                                            [np.eye(3, dtype=int), np.zeros((3, 3), int)]]))


def test_automorphism_check(gf7):
    C = split_cayley(gf7)
    assert check_automorphism(C, gf7.eye(8)).ok
    assert not check_automorphism(C, gf7.reduce(2 * gf7.eye(8))).ok
