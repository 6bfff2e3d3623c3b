"""Verification suites run by the CLI, one VerificationReport per suite."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from .affine import (
    DSAlgebra,
    build_affine_gS_with_S_action,
    check_ds_consistency,
    fixed_point_comparison,
    verify_delta_identities,
    verify_theorem_pisomorphism,
)
from .covariant import GroupActionOnLie, covariant_algebra, phi_fixed_point_iso
from .group import Character, FinAbGroup
from .liealg import LinearMap, is_isomorphism
from .paperalg import (
    build_A_S_tau,
    build_g_S,
    build_gl_S,
    build_K_lie,
    check_a_s_basis,
    check_chi_form_well_defined,
    check_g_equality_criterion,
    check_gt_relations,
    check_pi,
    check_presentation,
    check_s_action,
    chi_form,
    ideal_I_and_blocks,
    minus_theta,
    pi_hom,
    s_action_on_gS,
    structure_checks,
)
from .report import Check, VerificationReport, skipped
from .twisted import identification_chain, psi_twisted_untwisted_iso

SUITES = ("gs", "covariant", "affine", "delta", "appendix")


def default_window(S: FinAbGroup) -> int:
    return 3 if S.order <= 5 else 2


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("COVLIE_THREADS", "1")))
    except ValueError:
        return 1


def gs_suite(S: FinAbGroup, chi: Optional[Character]) -> VerificationReport:
    rep = VerificationReport("gs", S.name, chi.k if chi else None, None)
    g = build_g_S(S)
    A = build_A_S_tau(S)
    dims = Check("dimensions", tuple_count=1, detail={
        "dim_K": g.witness["dim_K"], "dim_J": g.witness["dim_J"], "dim_g_S": g.algebra.dim,
        "dim_gl_S": A.gl.algebra.dim, "dim_A_S": A.a_s_dim, "dim_A_S_tau": A.algebra.dim})
    if g.algebra.dim == 0:
        dims.detail["note"] = "g_S = 0: every generator d(a,b) has 2a = 0"
    rep.add(dims)
    rep.add(check_presentation(g))
    rep.extend(structure_checks(g, chi))
    B = None
    if chi is not None:
        B = chi_form(g, chi)
        rep.add(check_chi_form_well_defined(g, chi, B))
    else:
        rep.add(skipped("chi-form", "group is not cyclic; no injective character"))
    rep.extend(check_s_action(g, s_action_on_gS(g), B))
    rep.add(check_a_s_basis(S))
    rep.add(check_gt_relations(A))
    rep.add(check_g_equality_criterion(S))
    rep.extend(check_pi(g, A, pi_hom(g, A), B))
    dec = ideal_I_and_blocks(g, A)
    rep.extend(dec.checks)
    return rep


def classification_record(S: FinAbGroup) -> dict:
    g = build_g_S(S)
    A = build_A_S_tau(S)
    dec = ideal_I_and_blocks(g, A)
    blocks = [b.to_dict() for b in dec.blocks]
    return {
        "group": S.name,
        "blocks": blocks,
        "ideal_I_dim": dec.ideal.rank,
        "quotient_dim": dec.quotient.dim,
        "checks_passed": all(c.status != "fail" for c in dec.checks),
    }


def covariant_suite(S: FinAbGroup, chi: Optional[Character], W: int) -> VerificationReport:
    rep = VerificationReport("covariant", S.name, chi.k if chi else None, W)
    K = build_K_lie(S)
    G = GroupActionOnLie(K, [minus_theta(K, S)])
    C = covariant_algebra(K, G, name=f"K_{S.name}/-theta")
    rep.extend(_named("K / <-theta>", C.checks))
    _, _, ch = phi_fixed_point_iso(C)
    rep.extend(_named("K / <-theta>", ch))
    g = build_g_S(S)
    n = S.order
    cols = []
    for c in C.complement:
        a, b = divmod(c, n)
        cols.append(g.vec(a, b))
    rep.add(is_isomorphism(LinearMap(C.algebra, g.algebra, cols, "F(a,b) -> d(a,b)"),
                           "K / <-theta>: F(a,b) + I -> d(a,b) isomorphism onto g_S"))

    gl = build_gl_S(S)
    Gt = GroupActionOnLie(gl.algebra, [gl.tau])
    Ct = covariant_algebra(gl.algebra, Gt, gl.form, name=f"gl_{S.name}/tau")
    rep.extend(_named("gl_S / <tau>", Ct.checks))
    _, _, ch = phi_fixed_point_iso(Ct)
    rep.extend(_named("gl_S / <tau>", ch))

    if chi is None:
        rep.add(skipped("affine g_S / S", "group is not cyclic; no injective character"))
        return rep
    ag = build_affine_gS_with_S_action(S, chi, W, g)
    checks, info = fixed_point_comparison(ag)
    rep.extend(_named("affine g_S / S", checks))
    scal = Check("affine g_S / S: phi(k) = |S| k", tuple_count=1, detail=info)
    expected = str(S.order if g.algebra.dim else 1)
    if info["phi_k_scalar"] != expected:
        scal.fail({"phi_k_scalar": info["phi_k_scalar"], "expected": expected})
    rep.add(scal)
    return rep


def affine_suite(S: FinAbGroup, chi: Character, W: int) -> VerificationReport:
    rep = verify_theorem_pisomorphism(S, chi, W)
    rep.extend(check_ds_consistency(DSAlgebra(S, chi, W)))
    control = verify_theorem_pisomorphism(S, chi, W, central=False, structural=False)
    neg = Check("negative control: sweep without the central term fails",
                tuple_count=sum(c.tuple_count for c in control.checks))
    has_central = bool(S.half_set)
    if control.passed and has_central:
        neg.fail({"reason": "sweep passed without the central term"})
    elif not has_central:
        neg = skipped(neg.name, "no central contributions for this group")
    rep.add(neg)
    return rep


def delta_suite(S: FinAbGroup, chi: Character, bound: int = 5) -> VerificationReport:
    return verify_delta_identities(S, chi, bound)


def appendix_suite(S: FinAbGroup, chi: Character, W: int, h: Optional[dict] = None,
                   search: bool = False) -> VerificationReport:
    rep = identification_chain(S, chi, W, h=h, search=search)
    if S.order % 2:
        A = build_A_S_tau(S)
        triv = psi_twisted_untwisted_iso(A.algebra, A.form(), {}, 1, W, S.name, jacobi=False)
        rep.extend(_named("trivial grading h = 0, T = 1", triv.checks))
    return rep


def _named(prefix: str, checks: list[Check]) -> list[Check]:
    for c in checks:
        c.name = f"{prefix}: {c.name}"
    return checks


def _run(name: str, S: FinAbGroup, chi, W: int, h, search: bool) -> VerificationReport:
    if name == "gs":
        return gs_suite(S, chi)
    if name == "covariant":
        return covariant_suite(S, chi, W)
    if name == "affine":
        return affine_suite(S, chi, W)
    if name == "delta":
        return delta_suite(S, chi)
    if name == "appendix":
        return appendix_suite(S, chi, W, h, search)
    raise ValueError(f"unknown suite {name!r}")


def run_suites(names: list[str], S: FinAbGroup, chi, W: int, h=None, search=False) -> list[VerificationReport]:
    """Run suites in the given order; COVLIE_THREADS > 1 runs them in worker processes."""
    workers = min(worker_count(), len(names))
    if workers <= 1:
        return [_run(n, S, chi, W, h, search) for n in names]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run, n, S, chi, W, h, search) for n in names]
        return [f.result() for f in futures]


def merge(reports: list[VerificationReport], S: FinAbGroup, chi, W: int) -> VerificationReport:
    out = VerificationReport("all", S.name, chi.k if chi else None, W)
    for r in reports:
        out.extend(_named(r.suite, r.checks))
    return out
