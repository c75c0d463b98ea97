"""Acceptance criteria 1-11, one PASS/FAIL line each (also runnable as a script)."""

import time

import numpy as np
import pytest

from modular_g2.algkit import check_identity, check_representation, is_derivation, is_simple
from modular_g2.cayley import (
    cayley_dickson_double,
    check_composition,
    split_cayley,
    split_quaternions,
)
from modular_g2.fields import PrimeField, RationalFunctionField
from modular_g2.modular2 import (
    PRINTED_SUPPORT,
    X_SET,
    der_cayley_char2_report,
    der_psl4_report,
    grading_bound_data,
    psl4,
    psl4_iso_report,
    sp_derived_report,
)
from modular_g2.modular3 import derivations_are_inner, ideal_structure_report, jacobi_dichotomy
from modular_g2.modular7 import (
    c_coeff,
    check_cij_recursion,
    circle_witt_embedding,
    compare_tables,
    dixmier_cayley,
    invariant_product_space,
    printed_table2,
    quotient_l_pminus1,
    transvectant_table,
    twisted_derivations_of_dixmier,
    twisted_witt,
    v6_product_table,
    verify_good_basis_iso,
    verma_module,
    witt_conjugator,
    witt_embedding_report,
)


@pytest.fixture
def emit(capsys):
    def _emit(n, outcomes, budget, elapsed):
        ok = all(outcomes.values()) and elapsed < budget
        failed = [k for k, v in outcomes.items() if not v]
        if elapsed >= budget:
            failed.append(f"runtime {elapsed:.1f}s >= {budget}s")
        line = f"{'PASS' if ok else 'FAIL'} criterion {n} ({elapsed:.2f}s)"
        if failed:
            line += "  failed: " + ", ".join(failed)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return _emit


def _bij(r):
    return r.ok and r.detail["injective"] and r.detail["surjective"]


def test_criterion_01_table2(emit):
    t0 = time.perf_counter()
    F = PrimeField(7)
    V = v6_product_table(F)
    eq_transvectant = compare_tables(V, transvectant_table(F))
    printed = compare_tables(V, printed_table2(F))
    emit(1, {"equals 3-transvectant": eq_transvectant.ok,
             "matches printed table": printed.ok and printed.detail["entries"] == 49},
         1.0, time.perf_counter() - t0)


def test_criterion_02_recursion(emit):
    t0 = time.perf_counter()
    F = PrimeField(7)
    res = check_cij_recursion(F)

    def corrupted(i, j, G):
        return c_coeff(i, j, G) + (1 if (i, j) == (0, 6) else 0)

    emit(2, {"343 triples": res.ok and res.detail["triples"] == 343,
             "corruption detected": not check_cij_recursion(F, corrupted).ok},
         1.0, time.perf_counter() - t0)


def test_criterion_03_dixmier_iso(emit):
    t0 = time.perf_counter()
    res = verify_good_basis_iso(PrimeField(7))
    emit(3, {"bijective homomorphism": _bij(res), "64 products": res.detail.get("products") == 64},
         1.0, time.perf_counter() - t0)


def test_criterion_04_witt_embedding(emit):
    t0 = time.perf_counter()
    rep = witt_embedding_report(PrimeField(7))
    emit(4, {"brackets": rep.brackets.ok, "derivations": rep.derivations.ok,
             "span dim 8": rep.span_dim == 8, "restricted": rep.restricted.ok,
             "Killing form zero": rep.killing_zero},
         5.0, time.perf_counter() - t0)


def test_criterion_05_invariant_products(emit):
    outcomes = {}
    slowest_small = 0.0
    t_all = time.perf_counter()
    for p in (5, 7, 11):
        t0 = time.perf_counter()
        dims = {lam: invariant_product_space(verma_module(p, lam).action).dim for lam in range(1, p - 1)}
        quot = invariant_product_space(quotient_l_pminus1(p)).dim
        elapsed = time.perf_counter() - t0
        if p == 5:
            outcomes["GF(5) L(1) = 0"] = dims[1] == 0
            outcomes["GF(5) quotient = 0"] = quot == 0
        elif p == 7:
            outcomes["GF(7) L(1),L(2),L(4) = 0"] = dims[1] == dims[2] == dims[4] == 0
            outcomes["GF(7) L(3) = 1"] = dims[3] == 1
            outcomes["GF(7) quotient = 0"] = quot == 0
            outcomes["GF(7) adjoint >= 1"] = dims[5] >= 1
        else:
            outcomes["GF(11) L(1..8) = 0"] = all(dims[lam] == 0 for lam in range(1, 9))
            outcomes["GF(11) adjoint >= 1"] = dims[9] >= 1
            outcomes["GF(11) under 2 min"] = elapsed < 120
        if p != 11:
            slowest_small = max(slowest_small, elapsed)
    outcomes["GF(5), GF(7) each under 10 s"] = slowest_small < 10
    emit(5, outcomes, 130.0, time.perf_counter() - t_all)


def test_criterion_06_conjugacy(emit):
    t0 = time.perf_counter()
    F = PrimeField(7)
    res = witt_conjugator(circle_witt_embedding(F), F)
    emit(6, {"automorphism": res.automorphism.ok, "conjugates elementwise": res.conjugates,
             "intertwiner dim 1": res.intertwiner_dim == 1},
         10.0, time.perf_counter() - t0)


def test_criterion_07_twisted(emit):
    t0 = time.perf_counter()
    F = RationalFunctionField(7)
    tw = twisted_witt(F.t, F)
    V = v6_product_table(F)
    emit(7, {"anticommutative": check_identity(tw.table, "anticommutative").ok,
             "Jacobi": check_identity(tw.table, "jacobi").ok,
             "V6 representation": check_representation(tw.action).ok,
             "Leibniz on V6": all(is_derivation(V, D).ok for D in tw.action.operators),
             "derivations of Dixmier": twisted_derivations_of_dixmier(F.t, F).ok},
         30.0, time.perf_counter() - t0)


def test_criterion_08_char3(emit):
    t0 = time.perf_counter()
    jac = jacobi_dichotomy((3, 7))
    ideal = ideal_structure_report(PrimeField(3))
    inner = derivations_are_inner()
    emit(8, {"Jacobi over GF(3)": jac.results[3].ok,
             "Jacobi fails over GF(7) at (p1-p2, u1, u2)":
                 not jac.results[7].ok and jac.results[7].witness == (0, 1, 2),
             "Der dim 14": ideal.der_dim == 14,
             "ideal dim 7 simple": ideal.ideal_dim == 7 and ideal.ideal_simple == "simple",
             "centralizer 0": ideal.centralizer_dim == 0,
             "quotient simple dim 7": ideal.quotient_dim == 7 and ideal.quotient_simple == "simple",
             "Der(Der) = ad(Der)": inner.equal and inner.der_dim == inner.inner_dim == 14},
         30.0, time.perf_counter() - t0)


def test_criterion_09_char2_chain(emit):
    t0 = time.perf_counter()
    F = PrimeField(2)
    sp = sp_derived_report(F)
    iso = psl4_iso_report(F, check_simple=False)
    simple = is_simple(psl4(F))
    der = der_psl4_report(F)
    gr = grading_bound_data(F)
    emit(9, {"sp6 derived dims (21,15,14)": sp.dims == (21, 15, 14),
             "psl4 simple (exhaustive)": simple.simple is True and simple.points_checked == 2 ** 14 - 1,
             "kernel <I4>": iso.kernel_is_identity,
             "psl4 = sp6^(2)": _bij(iso.iso) and iso.brackets.ok,
             "Der dims 21 / 14": der.der_dim == 21 and der.inner_dim == 14,
             "support = 13 printed tuples": gr.support == PRINTED_SUPPORT and len(gr.support) == 13,
             "Der_0 <= 3": gr.der0 <= 3,
             "Der_alpha <= 1 on X": all(gr.x_dims[a] <= 1 for a in X_SET)},
         60.0, time.perf_counter() - t0)


@pytest.mark.parametrize("kind", ["GF(2)", "GF(2)(t)"])
def test_criterion_10_der_cayley(emit, kind):
    t0 = time.perf_counter()
    F = PrimeField(2) if kind == "GF(2)" else RationalFunctionField(2)
    rep = der_cayley_char2_report(split_cayley(F), composition_samples=None)
    emit(f"10 [{kind}]", {f"{kind} Phi injective": rep.phi_rank == rep.der_dim == 14,
              f"{kind} image = sp^(2)": rep.image_is_sp2 and rep.sp2_dim == 14,
              f"{kind} Phi homomorphism": _bij(rep.phi_hom),
              f"{kind} composite to psl4": _bij(rep.to_psl4)},
         30.0 if kind == "GF(2)" else 300.0, time.perf_counter() - t0)


def test_criterion_11_composition(emit):
    t0 = time.perf_counter()
    algebras = {f"good basis GF({p})": split_cayley(PrimeField(p)) for p in (2, 3, 7)}
    algebras["Dixmier GF(7)"] = dixmier_cayley(PrimeField(7))
    for p in (2, 3):
        Q, J = split_quaternions(PrimeField(p))
        algebras[f"doubled GF({p})"] = cayley_dickson_double(Q, J, 1)
    outcomes = {}
    for name, C in algebras.items():
        res = check_composition(C, samples=1000)
        outcomes[name] = res.ok and res.detail["pairs_checked"] >= 1000
    emit(11, outcomes, 30.0, time.perf_counter() - t0)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
