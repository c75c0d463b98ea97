"""Command line harness: ``modular-g2 verify | dump | list-checks``.

Reports are JSON on stdout; a one-line human summary per check goes to
stderr.  Exit codes: 0 pass, 1 fail, 2 undecided or usage error.
"""

from __future__ import annotations

import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Callable

import click
import numpy as np

from . import cayley, modular2, modular3, modular7
from .algkit import CheckResult, check_identity, check_representation, derivation_algebra, quotient
from .fields import Field, PrimeField, RationalFunctionField, parse_field_spec

SEED_ENV = "MODULAR_G2_SEED"
EXIT = {"pass": 0, "fail": 1, "undecided": 2}


class CheckUsageError(click.UsageError):
    pass


@dataclass
class Context:
    field: Field
    field_spec: str
    seed: int
    alpha: str | None = None


@dataclass(frozen=True)
class Check:
    id: str
    characteristic: int | None
    default_field: str
    description: str
    runner: Callable[[Context], dict]
    function_field: bool = True


def seed_from_env() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return cayley.DEFAULT_SEED
    try:
        return int(raw, 10)
    except ValueError:
        raise CheckUsageError(f"{SEED_ENV} must be a decimal integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# helpers shared by the runners
# ---------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    return x


def _result(checks: dict[str, bool], payload: dict, witnesses: list) -> dict:
    failed = [name for name, ok in checks.items() if not ok]
    status = "fail" if failed else "pass"
    if failed and not witnesses:
        witnesses = [{"failed": name} for name in failed]
    return {"status": status, "checks": checks, "payload": payload, "witnesses": witnesses}


def _pair(labels, w):
    return [labels[int(i)] for i in w]


def _bij(r: CheckResult) -> bool:
    return bool(r.ok and r.detail.get("injective") and r.detail.get("surjective"))


def _witness_of(name: str, r: CheckResult, labels=None) -> list:
    if r.ok or r.witness is None:
        return []
    w = list(r.witness)
    if labels is not None and all(isinstance(i, (int, np.integer)) for i in w):
        w = _pair(labels, w)
    return [{name: _jsonable(w)}]


# ---------------------------------------------------------------------------
# characteristic 7
# ---------------------------------------------------------------------------

def run_table2(ctx: Context) -> dict:
    F = ctx.field
    A = modular7.v6_product_table(F)
    r1 = modular7.compare_tables(A, modular7.transvectant_table(F))
    r2 = modular7.compare_tables(A, modular7.printed_table2(F))
    return _result(
        {"transvectant": r1.ok, "printed": r2.ok},
        {"entries": r2.detail["entries"]},
        _witness_of("transvectant", r1, A.labels) + _witness_of("printed", r2, A.labels),
    )


def run_recursion(ctx: Context) -> dict:
    F = ctx.field
    r = modular7.check_cij_recursion(F)

    def corrupted(i, j, G):
        c = modular7.c_coeff(i, j, G)
        return G.reduce(c + G.one_value) if (i, j) == (0, 6) else c

    bad = modular7.check_cij_recursion(F, corrupted)
    payload = {"triples": r.detail.get("triples"), "corruption": "c(0,6) + 1",
               "corruption_witness": _jsonable(bad.witness)}
    return _result({"recursion": r.ok, "corruption_detected": not bad.ok}, payload,
                   _witness_of("recursion", r))


def run_dixmier_iso(ctx: Context) -> dict:
    F = ctx.field
    r = modular7.verify_good_basis_iso(F)
    fgg = modular7.check_fgg_identity(F, seed=ctx.seed)
    D = modular7.dixmier_cayley(F)
    return _result(
        {"homomorphism": r.ok, "bijective": _bij(r), "fgg_identity": fgg.ok},
        {"products": D.table.dim ** 2, "rank": r.detail.get("rank"), "fgg_pairs": fgg.detail.get("pairs")},
        _witness_of("homomorphism", r, D.labels) + _witness_of("fgg_identity", fgg),
    )


def run_witt_embed(ctx: Context) -> dict:
    F = ctx.field
    r = modular7.witt_embedding_report(F)
    labels = [f"e{k}" for k in range(-1, 6)]
    payload = {
        "images": len(r.images),
        "span_dim": r.span_dim,
        "killing_block_zero": r.killing_zero,
        "alternatives_agree": {str(k): v for k, v in r.alternatives.items()},
        "equals_polynomial_transport": r.matches_dixmier_transport,
        "scale_to_polynomial_transport": r.scale_to_transport,
    }
    checks = {
        "brackets": r.brackets.ok,
        "derivations": r.derivations.ok,
        "span_dim_8": r.span_dim == 8,
        "restricted": r.restricted.ok,
        "killing_zero": r.killing_zero,
    }
    return _result(checks, payload, _witness_of("brackets", r.brackets, labels))


def invariant_product_expectations(p: int) -> dict[str, tuple[str, int]]:
    """Expected dimensions: ``("eq", n)`` or ``("ge", n)`` keyed by module name."""
    exp = {f"L({lam})": ("eq", 1 if (p == 7 and lam == 3) else 0) for lam in range(1, p - 2)}
    exp[f"L({p - 2})"] = ("ge", 1)
    exp[f"L({p - 1})/<m0>"] = ("eq", 0)
    return exp


def run_invariant_products(ctx: Context) -> dict:
    F = ctx.field
    p = F.characteristic
    if not isinstance(F, PrimeField) or p < 5:
        raise CheckUsageError("invariant products need a prime field GF(p) with p >= 5")
    dims = {}
    for lam in range(1, p - 1):
        dims[f"L({lam})"] = modular7.invariant_product_space(modular7.verma_module(p, lam, F).action).dim
    dims[f"L({p - 1})/<m0>"] = modular7.invariant_product_space(modular7.quotient_l_pminus1(p, F)).dim
    checks = {}
    for name, (kind, n) in invariant_product_expectations(p).items():
        checks[name] = dims[name] == n if kind == "eq" else dims[name] >= n
    witnesses = [{"module": k, "dim": dims[k]} for k, ok in checks.items() if not ok]
    return _result(checks, {"p": p, "dims": dims, "adjoint": f"L({p - 2})"}, witnesses)


def run_conjugacy(ctx: Context) -> dict:
    F = ctx.field
    target = modular7.circle_witt_embedding(F)
    res = modular7.witt_conjugator(target, F)
    std = modular7.witt_conjugator(modular7.standard_witt_embedding(F), F)
    identity = F.equal(std.phi.matrix, F.eye(8))
    return _result(
        {"intertwiner_dim_1": res.intertwiner_dim == 1, "automorphism": res.automorphism.ok,
         "conjugates": res.conjugates, "standard_gives_identity": identity},
        {"intertwiner_dim": res.intertwiner_dim, "mu": F.render(res.mu)},
        _witness_of("automorphism", res.automorphism),
    )


def run_twisted(ctx: Context) -> dict:
    F = ctx.field
    text = ctx.alpha if ctx.alpha is not None else ("t" if isinstance(F, RationalFunctionField) else "1")
    try:
        alpha = F.parse(text)
    except Exception as exc:
        raise CheckUsageError(f"cannot parse alpha {text!r} over {ctx.field_spec}: {exc}") from None
    try:
        tw = modular7.twisted_witt(alpha, F)
    except ValueError as exc:
        raise CheckUsageError(str(exc)) from None
    labels = tw.table.labels
    anti = check_identity(tw.table, "anticommutative")
    jac = check_identity(tw.table, "jacobi")
    rep = check_representation(tw.action)
    leib = modular7.operators_are_derivations(tw.action.operators, modular7.v6_product_table(F))
    dix = modular7.twisted_derivations_of_dixmier(alpha, F)
    sample = F.render_array(tw.table.multiply(tw.table.basis_vector(4), tw.table.basis_vector(6)))
    return _result(
        {"anticommutative": anti.ok, "jacobi": jac.ok, "v6_representation": rep.ok,
         "leibniz_on_v6": leib.ok, "dixmier_derivations": dix.ok},
        {"alpha": F.render(alpha), "bracket_f3_f5": sample},
        _witness_of("jacobi", jac, labels) + _witness_of("v6_representation", rep, labels)
        + _witness_of("leibniz_on_v6", leib) + _witness_of("dixmier_derivations", dix),
    )


# ---------------------------------------------------------------------------
# characteristic 3
# ---------------------------------------------------------------------------

def run_ideal_structure(ctx: Context) -> dict:
    r = modular3.ideal_structure_report(ctx.field)
    return _result(
        {"ideal": r.ideal_dim == 7 and r.ideal_is_ideal, "ideal_simple": r.ideal_simple == "simple",
         "ad_isomorphism": _bij(r.ad_isomorphism), "centralizer_zero": r.centralizer_dim == 0,
         "quotient_simple": r.quotient_dim == 7 and r.quotient_simple == "simple", "unique": r.unique},
        {"der_dim": r.der_dim, "ideal_dim": r.ideal_dim, "centralizer_dim": r.centralizer_dim,
         "quotient_dim": r.quotient_dim, "ideal_points": r.ideal_points,
         "quotient_points": r.quotient_points, "der_simple": r.der_simple},
        [{"failed": f} for f in r.failures],
    )


def run_inner_derivations(ctx: Context) -> dict:
    g = derivation_algebra(cayley.split_cayley(ctx.field).table).table
    r = modular3.derivations_are_inner(g)
    return _result({"der_equals_ad": r.equal, "dim_14": r.der_dim == 14},
                   {"der_dim": r.der_dim, "inner_dim": r.inner_dim}, [])


def run_jacobi_dichotomy(ctx: Context) -> dict:
    r = modular3.jacobi_dichotomy((3, 5, 7))
    labels = cayley.c0_bracket_algebra(cayley.split_cayley(PrimeField(7))).labels
    checks = {"holds_gf3": r.results[3].ok, "fails_gf5": not r.results[5].ok, "fails_gf7": not r.results[7].ok}
    witnesses = []
    for p in (5, 7):
        w = r.results[p].witness
        if w is not None:
            witnesses.append({f"gf{p}": _pair(labels, w)})
    eq3 = modular3.eq3_check(ctx.field)
    checks["eq3_gf3"] = eq3.ok
    payload = {"J(u1,u2,u3)": {str(p): v for p, v in r.example_jacobian.items()}}
    return _result(checks, payload, witnesses + [{"failed": k} for k, v in checks.items() if not v])


def run_psl3_fingerprint(ctx: Context) -> dict:
    F = ctx.field
    C = cayley.split_cayley(F)
    c0 = modular3.invariant_fingerprint(cayley.c0_bracket_algebra(C))
    p3 = modular3.invariant_fingerprint(modular3.psl3(F))
    r = modular3.ideal_structure_report(F)
    g = derivation_algebra(C.table)
    Q, _ = quotient(g.table, g.subspace_of(modular3.ad_c0_matrices(F)))
    qf = modular3.invariant_fingerprint(Q)
    undecided = any(f.flags for f in (c0, p3, qf))
    checks = {"c0_vs_psl3": c0.comparable() == p3.comparable(),
              "quotient_vs_c0": qf.comparable() == c0.comparable(), "ideal_structure": r.ok}
    out = _result(checks, {"c0": c0.as_dict(), "psl3": p3.as_dict(), "quotient": qf.as_dict()}, [])
    if out["status"] == "pass" and undecided:
        out["status"] = "undecided"
    return out


# ---------------------------------------------------------------------------
# characteristic 2
# ---------------------------------------------------------------------------

def run_sp_derived(ctx: Context) -> dict:
    r = modular2.sp_derived_report(ctx.field)
    g = modular2.gsp_report(ctx.field)
    return _result(
        {"dims_21_15_14": r.dims == (21, 15, 14), "block_shapes": all(r.block_shapes),
         "gsp_decomposition": g.decomposition, "gsp_derived_is_sp": g.derived_is_sp,
         "pgsp_dim_21": g.pgsp_dim == 21},
        {"dims": list(r.dims), "block_shapes": list(r.block_shapes), "gsp_dim": g.gsp_dim, "pgsp_dim": g.pgsp_dim},
        [],
    )


def run_psl4_iso(ctx: Context) -> dict:
    r = modular2.psl4_iso_report(ctx.field, check_simple=isinstance(ctx.field, PrimeField))
    checks = {"kernel_is_identity": r.kernel_is_identity, "image_dim_14": r.image_dim == 14,
              "image_in_sp": r.image_in_sp, "brackets": r.brackets.ok, "isomorphism": _bij(r.iso)}
    if r.simple is not None:
        checks["psl4_simple"] = r.simple == "simple"
    return _result(checks, {"image_dim": r.image_dim, "sp2_dim": r.sp2_dim, "psl4_simple": r.simple,
                            "points_checked": r.simple_points},
                   _witness_of("brackets", r.brackets) + _witness_of("isomorphism", r.iso))


def run_der_psl4(ctx: Context) -> dict:
    if not isinstance(ctx.field, PrimeField):
        raise CheckUsageError("der-psl4 is computed over GF(2) only")
    r = modular2.der_psl4_report(ctx.field)
    return _result(
        {"der_dim_21": r.der_dim == 21, "inner_dim_14": r.inner_dim == 14,
         "phi_kernel_identity": r.phi_kernel_is_identity, "phi_image_21": r.phi_image_dim == 21,
         "pgsp_isomorphism": _bij(r.pgsp_iso), "transport": _bij(r.transport),
         "transported_equal": r.transported_equal},
        {"der": r.der_dim, "inner": r.inner_dim, "phi_image_dim": r.phi_image_dim},
        _witness_of("pgsp_isomorphism", r.pgsp_iso),
    )


def run_grading(ctx: Context) -> dict:
    r = modular2.grading_bound_data(ctx.field)
    return _result(
        {"grading": r.grading.ok, "support": r.support_matches, "h": r.h_labels == ["H1", "H2"],
         "eigenspaces": r.eigenspaces_match, "der0_le_3": r.der0 <= 3,
         "der_x_le_1": all(v <= 1 for v in r.x_dims.values()), "der0_kills_h": r.der0_kills_h,
         "components_sum": r.der_total == r.der_dim, "compatible": r.compatible},
        {"support": [list(a) for a in r.support], "der0": r.der0,
         "der_x": {str(list(a)): v for a, v in r.x_dims.items()},
         "der_components": {str(list(a)): v for a, v in sorted(r.der_dims.items())}, "der_dim": r.der_dim},
        _witness_of("grading", r.grading),
    )


def _char2_cayley_algebras(F: Field) -> list[tuple[str, cayley.CayleyAlgebra]]:
    Q, J = cayley.split_quaternions(F)
    out = [("table1", cayley.split_cayley(F)), ("doubled(mu=1)", cayley.cayley_dickson_double(Q, J, 1))]
    if isinstance(F, RationalFunctionField):
        out.append(("doubled(mu=t)", cayley.cayley_dickson_double(Q, J, F.t)))
    return out


def run_der_cayley(ctx: Context) -> dict:
    F = ctx.field
    checks = {}
    payload = {}
    for name, C in _char2_cayley_algebras(F):
        r = modular2.der_cayley_char2_report(C, seed=ctx.seed)
        checks[name] = r.ok
        payload[name] = {"der_dim": r.der_dim, "phi_rank": r.phi_rank, "sp_dim": r.sp_dim,
                         "sp2_dim": r.sp2_dim, "image_is_sp2": r.image_is_sp2,
                         "homomorphism": _bij(r.phi_hom), "to_psl4": _bij(r.to_psl4)}
    return _result(checks, payload, [])


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

def composition_algebras(F: Field) -> list[tuple[str, cayley.CayleyAlgebra]]:
    out = [("table1", cayley.split_cayley(F))]
    if F.characteristic == 7:
        out.append(("dixmier", modular7.dixmier_cayley(F)))
    Q, J = cayley.split_quaternions(F)
    out.append(("doubled(mu=1)", cayley.cayley_dickson_double(Q, J, 1)))
    if isinstance(F, RationalFunctionField):
        out.append(("doubled(mu=t)", cayley.cayley_dickson_double(Q, J, F.t)))
    return out


def run_composition(ctx: Context) -> dict:
    checks = {}
    payload = {}
    witnesses = []
    for name, C in composition_algebras(ctx.field):
        r = cayley.check_composition(C, samples=1000, seed=ctx.seed)
        checks[name] = r.ok
        payload[name] = {"pairs_checked": r.detail.get("pairs_checked")}
        if not r.ok:
            witnesses.append({name: _jsonable(r.witness)})
    return _result(checks, payload, witnesses)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

REGISTRY: dict[str, Check] = {c.id: c for c in [
    Check("char7:table2", 7, "p:7", "V6 product table vs 3-transvectant and printed table", run_table2),
    Check("char7:recursion", 7, "p:7", "recursion for c(i,j) over all 343 triples", run_recursion),
    Check("char7:dixmier-iso", 7, "p:7", "explicit isomorphism Dixmier -> good basis", run_dixmier_iso),
    Check("char7:witt-embed", 7, "p:7", "printed inner-derivation images of W1", run_witt_embed),
    Check("char7:invariant-products", None, "p:7", "invariant bilinear products on L(lambda)",
          run_invariant_products, function_field=False),
    Check("char7:conjugacy", 7, "p:7", "conjugator from the circle embedding to the standard one", run_conjugacy),
    Check("char7:twisted", 7, "fn:7", "twisted Witt algebra W^alpha", run_twisted),
    Check("char3:ideal-structure", 3, "p:3", "ideal structure of Der(C_s)", run_ideal_structure),
    Check("char3:inner-derivations", 3, "p:3", "Der(Der(C_s)) = ad(Der(C_s))", run_inner_derivations),
    Check("char3:jacobi-dichotomy", 3, "p:3", "Jacobi on C^0: GF(3) vs GF(5), GF(7)", run_jacobi_dichotomy),
    Check("char3:psl3-fingerprint", 3, "p:3", "fingerprints of C^0, psl3 and the quotient", run_psl3_fingerprint,
          function_field=False),
    Check("char2:sp-derived", 2, "p:2", "derived powers of sp6 and gsp6", run_sp_derived),
    Check("char2:psl4-iso", 2, "p:2", "exterior square and psl4 = sp6^(2)", run_psl4_iso),
    Check("char2:der-psl4", 2, "p:2", "Der(psl4) = pgsp6", run_der_psl4, function_field=False),
    Check("char2:grading", 2, "p:2", "Z^3 grading and homogeneous derivations", run_grading),
    Check("char2:der-cayley", 2, "p:2", "Der(C) = psl4 through sp(C^0/F1)", run_der_cayley),
    Check("cayley:composition", None, "p:7", "q(xy) = q(x) q(y) on constructed tables", run_composition),
]}

PROFILES: dict[str, list[tuple[str, str, dict]]] = {
    "quick": [
        ("char7:table2", "p:7", {}),
        ("char7:recursion", "p:7", {}),
        ("char7:dixmier-iso", "p:7", {}),
        ("char7:witt-embed", "p:7", {}),
        ("char7:invariant-products", "p:5", {}),
        ("char7:invariant-products", "p:7", {}),
        ("char7:conjugacy", "p:7", {}),
        ("char7:twisted", "p:7", {"alpha": "3"}),
        ("char3:ideal-structure", "p:3", {}),
        ("char3:inner-derivations", "p:3", {}),
        ("char3:jacobi-dichotomy", "p:3", {}),
        ("char3:psl3-fingerprint", "p:3", {}),
        ("char2:sp-derived", "p:2", {}),
        ("char2:psl4-iso", "p:2", {}),
        ("char2:der-psl4", "p:2", {}),
        ("char2:grading", "p:2", {}),
        ("char2:der-cayley", "p:2", {}),
        ("cayley:composition", "p:2", {}),
        ("cayley:composition", "p:3", {}),
        ("cayley:composition", "p:7", {}),
    ],
}
PROFILES["full"] = PROFILES["quick"] + [
    ("char7:invariant-products", "p:11", {}),
    ("char7:twisted", "fn:7", {"alpha": "t"}),
    ("char2:der-cayley", "fn:2", {}),
    ("cayley:composition", "fn:2", {}),
]


def _field_or_usage(spec: str) -> Field:
    try:
        return parse_field_spec(spec)
    except ValueError as exc:
        raise CheckUsageError(str(exc)) from None


def run(check_id: str, field_spec: str | None = None, alpha: str | None = None,
        seed: int | None = None, timing: bool = False) -> dict:
    """Run one registered check; raises :class:`CheckUsageError` for bad input."""
    if check_id not in REGISTRY:
        raise CheckUsageError(f"unknown check {check_id!r}; see list-checks")
    check = REGISTRY[check_id]
    spec = field_spec or check.default_field
    F = _field_or_usage(spec)
    if check.characteristic is not None and F.characteristic != check.characteristic:
        raise CheckUsageError(f"check requires characteristic {check.characteristic}")
    if not check.function_field and not isinstance(F, PrimeField):
        raise CheckUsageError(f"{check_id} needs a prime field")
    ctx = Context(F, spec, seed_from_env() if seed is None else seed, alpha)
    start = time.perf_counter()
    out = check.runner(ctx)
    elapsed = (time.perf_counter() - start) * 1000
    report = {"check": check_id, "field": F.descriptor(), "seed": ctx.seed}
    report.update(_jsonable(out))
    if timing:
        report["elapsed_ms"] = round(elapsed, 1)
    return report


def run_all(profile: str, seed: int | None = None, timing: bool = False):
    if profile not in PROFILES or not PROFILES[profile]:
        raise CheckUsageError(f"unknown or empty profile {profile!r}")
    for check_id, spec, opts in PROFILES[profile]:
        yield run(check_id, spec, opts.get("alpha"), seed=seed, timing=timing)


def aggregate_status(statuses) -> str:
    statuses = list(statuses)
    if "fail" in statuses:
        return "fail"
    if "undecided" in statuses:
        return "undecided"
    return "pass"


def _summary(report: dict) -> str:
    fd = report["field"]
    field = f"GF({fd['p']})" if fd["kind"] == "prime" else f"GF({fd['p']})(t)"
    line = f"{report['status'].upper():9s} {report['check']} over {field}"
    failed = [k for k, v in report.get("checks", {}).items() if not v]
    if failed:
        line += f"  failed: {', '.join(failed)}"
    if "elapsed_ms" in report:
        line += f"  ({report['elapsed_ms']:.0f} ms)"
    return line


def _emit(obj) -> None:
    click.echo(json.dumps(obj, indent=2))


# ---------------------------------------------------------------------------
# dump
# ---------------------------------------------------------------------------

DUMP_OBJECTS = ["cayley-split", "dixmier", "witt", "twisted-witt", "psl3", "psl4", "sp6", "gsp6"]


def dump_table(obj: str, F: Field, alpha: str | None = None):
    if obj.startswith("der-of:"):
        return derivation_algebra(dump_table(obj[len("der-of:"):], F, alpha)).table
    if obj == "cayley-split":
        return cayley.split_cayley(F).table
    if obj == "dixmier":
        return modular7.dixmier_cayley(F).table
    if obj == "witt":
        return modular7.witt_algebra(F.characteristic, F).table
    if obj == "twisted-witt":
        text = alpha if alpha is not None else ("t" if isinstance(F, RationalFunctionField) else "1")
        return modular7.twisted_witt(F.parse(text), F).table
    if obj == "psl3":
        return modular3.psl3(F)
    if obj == "psl4":
        return modular2.psl4(F)
    if obj == "sp6":
        return modular2.sp_algebra(modular2.SymplecticSpace.standard(F, 3))
    if obj == "gsp6":
        return modular2.gsp_linear(modular2.SymplecticSpace.standard(F, 3)).table
    raise CheckUsageError(f"unknown object {obj!r}; choose from {', '.join(DUMP_OBJECTS)} or der-of:<object>")


# ---------------------------------------------------------------------------
# click commands
# ---------------------------------------------------------------------------

@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact verification of the G2 / Witt / psl4 computations."""


@main.command()
@click.option("--check", "check_id", help="Check identifier (see list-checks).")
@click.option("--all", "run_every", is_flag=True, help="Run every check of a profile.")
@click.option("--profile", type=click.Choice(["quick", "full"]), default="quick", show_default=True)
@click.option("--field", "field_spec", help="Field: p:<prime> or fn:<prime>.")
@click.option("--alpha", help="Twisting parameter for char7:twisted (e.g. t, 1 + t).")
@click.option("--p", "prime", type=int, help="Prime for char7:invariant-products (same as --field p:N).")
@click.option("--timing", is_flag=True, help="Include elapsed_ms in the JSON (breaks byte-identity).")
def verify(check_id, run_every, profile, field_spec, alpha, prime, timing):
    """Run a check (or a profile) and print JSON reports."""
    if prime is not None:
        if field_spec is not None and field_spec != f"p:{prime}":
            raise CheckUsageError("--p and --field disagree")
        field_spec = f"p:{prime}"
    if run_every:
        if check_id:
            raise CheckUsageError("use either --check or --all")
        reports = []
        for rep in run_all(profile, timing=timing):
            click.echo(_summary(rep), err=True)
            reports.append(rep)
        status = aggregate_status(r["status"] for r in reports)
        _emit({"profile": profile, "status": status, "reports": reports})
        click.echo(f"{status.upper()}: {sum(r['status'] == 'pass' for r in reports)}/{len(reports)} passed", err=True)
        sys.exit(EXIT[status])
    if not check_id:
        raise CheckUsageError("missing --check (or --all)")
    rep = run(check_id, field_spec, alpha, timing=timing)
    _emit(rep)
    click.echo(_summary(rep), err=True)
    sys.exit(EXIT[rep["status"]])


@main.command()
@click.option("--algebra", "obj", required=True, help="Object id, e.g. cayley-split or der-of:psl4.")
@click.option("--field", "field_spec", required=True, help="Field: p:<prime> or fn:<prime>.")
@click.option("--alpha", help="Twisting parameter for twisted-witt.")
def dump(obj, field_spec, alpha):
    """Print a structure table as canonical JSON."""
    F = _field_or_usage(field_spec)
    try:
        table = dump_table(obj, F, alpha)
    except ValueError as exc:
        raise CheckUsageError(str(exc)) from None
    click.echo(table.to_json(indent=2))


@main.command("list-checks")
def list_checks():
    """List registered checks as JSON."""
    _emit([
        {"id": c.id, "characteristic": c.characteristic, "default_field": c.default_field,
         "description": c.description}
        for c in REGISTRY.values()
    ])


if __name__ == "__main__":  # pragma: no cover
    main()
