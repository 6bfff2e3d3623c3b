"""End-to-end acceptance criteria; each test prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` (or ``python tests/test_acceptance.py``).
"""

import math
import sys
import time
from contextlib import contextmanager

import pytest

from covlie.affine import verify_delta_identities, verify_theorem_pisomorphism
from covlie.cyclotomic import ONE, q_integer, zeta
from covlie.group import coset_decomposition_2S, make_character, parse_group
from covlie.liealg import check_jacobi, is_isomorphism
from covlie.paperalg import (
    build_A_S_tau,
    build_g_S,
    check_a_s_basis,
    check_pi,
    check_presentation,
    chi_form,
    ideal_I_and_blocks,
    pi_hom,
)
from covlie.suites import covariant_suite
from covlie.twisted import (
    find_grading_element,
    identification_chain,
    psi_twisted_untwisted_iso,
    shift_fixed_cartan,
)


@contextmanager
def criterion(capsys, number: int, title: str, limit: float | None = None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        status = "PASS"
    finally:
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {status}  {title}  ({time.perf_counter() - start:.1f}s)")


def test_criterion_01_jacobi_and_presentation(capsys):
    specs = [f"Z{n}" for n in range(2, 10)] + ["Z2xZ2"]
    with criterion(capsys, 1, "g_S Jacobi and presentation, Z2..Z9 and Z2xZ2", limit=10):
        for spec in specs:
            g = build_g_S(parse_group(spec))
            jac = check_jacobi(g.algebra)
            pres = check_presentation(g)
            assert jac, (spec, jac.witness)
            assert pres, (spec, pres.witness)


def test_criterion_02_dimension_laws(capsys):
    with criterion(capsys, 2, "dim g_S = l(2l+1) for odd order; dim A_S^tau = r k(k-1)/2"):
        for N, expected in [(3, 3), (5, 10), (7, 21), (9, 36)]:
            assert build_g_S(parse_group(f"Z{N}")).algebra.dim == expected
        for spec in ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z2xZ2", "Z2xZ4", "Z3xZ3"]:
            S = parse_group(spec)
            k, r, _ = coset_decomposition_2S(S)
            assert build_A_S_tau(S).algebra.dim == r * k * (k - 1) // 2, spec


def test_criterion_03_realization_iso_and_isometry(capsys):
    with criterion(capsys, 3, "pi: g_S -> A_S^tau is a Lie isomorphism and isometry, Z3 Z5 Z7"):
        for N in (3, 5, 7):
            S = parse_group(f"Z{N}")
            g, A = build_g_S(S), build_A_S_tau(S)
            pi = pi_hom(g, A)
            assert is_isomorphism(pi)
            checks = check_pi(g, A, pi, chi_form(g, make_character(S, 1)))
            assert all(c.status == "pass" for c in checks), [c.name for c in checks if c.status != "pass"]
            assert any("isometry" in c.name for c in checks)


def test_criterion_04_odd_order_types(capsys):
    with criterion(capsys, 4, "Z5 -> B2, Z7 -> B3; A_S = gl_S for odd order", limit=30):
        for N, label in [(5, "B2"), (7, "B3")]:
            S = parse_group(f"Z{N}")
            dec = ideal_I_and_blocks(build_g_S(S), build_A_S_tau(S))
            assert [b.to_dict()["type_label"] for b in dec.blocks] == [label]
        for N in (3, 5, 7, 9):
            S = parse_group(f"Z{N}")
            assert check_a_s_basis(S)
            assert build_A_S_tau(S).a_s_dim == N * N


def test_criterion_05_ideal_and_general_case(capsys):
    expected = {
        "Z6": (["B1", "B1"], None),
        "Z8": (["A1xA1", "A1xA1"], None),
        "Z4": (["abelian-dim-1", "abelian-dim-1"], [1, 1]),
    }
    with criterion(capsys, 5, "I is an ideal, g_S/I = A_S^tau, Z6 B1+B1, Z8 (A1xA1)+(A1xA1), Z4 abelian 1+1"):
        for spec, (labels, dims) in expected.items():
            S = parse_group(spec)
            A = build_A_S_tau(S)
            dec = ideal_I_and_blocks(build_g_S(S), A)
            assert all(c.status == "pass" for c in dec.checks), [c.name for c in dec.checks if not c]
            assert is_isomorphism(dec.pi_bar)
            assert dec.quotient.dim == A.algebra.dim
            assert [b.to_dict()["type_label"] for b in dec.blocks] == labels
            if dims:
                assert [b.algebra.dim for b in dec.blocks] == dims


def test_criterion_06_covariant_algebras(capsys):
    with criterion(capsys, 6, "covariant quotients: ideal, invariant induced form, phi iso (K/<-theta>, affine g_S/S)"):
        for N in (2, 3, 4, 5):
            S = parse_group(f"Z{N}")
            rep = covariant_suite(S, make_character(S, 1), 3)
            assert rep.passed, [(c.name, c.witness) for c in rep.checks if c.status == "fail"]
            names = [c.name for c in rep.checks if c.status == "pass"]
            for prefix in ("K / <-theta>", "affine g_S / S"):
                assert f"{prefix}: I_G two-sided ideal for averaged product" in names
                assert f"{prefix}: phi isomorphism" in names
            assert "affine g_S / S: averaged form invariant" in names
            assert "affine g_S / S: phi(k) = |S| k" in names


def test_criterion_07_bracket_sweep(capsys):
    with criterion(capsys, 7, "covariant affine g_S vs D_S bracket sweep, Z3/Z5 W=3, Z7 W=2, negative control", limit=60):
        for N, W in [(3, 3), (5, 3), (7, 2)]:
            S = parse_group(f"Z{N}")
            rep = verify_theorem_pisomorphism(S, make_character(S, 1), W)
            assert rep.passed, [(c.name, c.witness) for c in rep.checks if c.status == "fail"]
            sweep = next(c for c in rep.checks if c.name.startswith("bracket agreement"))
            assert sweep.tuple_count > 0
        S = parse_group("Z3")
        control = verify_theorem_pisomorphism(S, make_character(S, 1), 3, central=False, structural=False)
        assert not control.passed


def test_criterion_08_delta_identities(capsys):
    with criterion(capsys, 8, "delta-coefficient extraction, |m|,|n| <= 5, Z3 Z4 Z5 Z6"):
        for N in (3, 4, 5, 6):
            S = parse_group(f"Z{N}")
            rep = verify_delta_identities(S, make_character(S, 1), 5)
            assert rep.passed, [(c.name, c.witness) for c in rep.checks if c.status == "fail"]
            derivative = [c.detail["derivative_delta_terms"] for c in rep.checks if c.detail]
            assert derivative and all(n > 0 for n in derivative)


def test_criterion_09_twisted_untwisted(capsys):
    with criterion(capsys, 9, "psi iso for so(3) with searched h (T=3) and T=1; identification chain N=3, N=5 with given h"):
        S = parse_group("Z3")
        chi = make_character(S, 1)
        A = build_A_S_tau(S)
        h = find_grading_element(A.algebra, shift_fixed_cartan(A, chi), A.shift(chi.generator()), 3)
        assert psi_twisted_untwisted_iso(A.algebra, A.form(), h, 3, 3, "Z3").passed
        assert psi_twisted_untwisted_iso(A.algebra, A.form(), {}, 1, 3, "Z3").passed
        chain = identification_chain(S, chi, 3, h=h)
        assert chain.passed and not [c for c in chain.checks if c.status == "skipped"]

        S5 = parse_group("Z5")
        chi5 = make_character(S5, 1)
        A5 = build_A_S_tau(S5)
        h5 = find_grading_element(A5.algebra, shift_fixed_cartan(A5, chi5), A5.shift(chi5.generator()), 5)
        chain5 = identification_chain(S5, chi5, 2, h=h5)
        assert chain5.passed and not [c for c in chain5.checks if c.status == "skipped"]


def test_criterion_10_q_integer_identities(capsys):
    with criterion(capsys, 10, "q-integer identities, |m|,|n| <= 6, roots of unity of order <= 12"):
        cases = 0
        for M in range(1, 13):
            for k in range(M):
                if math.gcd(k, M) != 1:
                    continue
                q = zeta(M, k)
                for n in range(-6, 7):
                    qn = q_integer(n, q)
                    assert q_integer(-n, q) == -qn
                    assert q_integer(n, q.inverse()) == qn
                    for m in range(-6, 7):
                        assert q_integer(m, q ** n) * qn == q_integer(m * n, q), (M, k, m, n)
                        cases += 1
                if M in (1, 2):
                    s = 1 if M == 1 else -1
                    for n in range(1, 7):
                        assert q_integer(n, q) == ONE * (n * s ** (n - 1))
        assert cases == 169 * sum(1 for M in range(1, 13) for k in range(M) if math.gcd(k, M) == 1)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
