import cmath
import itertools

import pytest

from covlie.affine import (
    K_TO_C,
    AffineAlgebra,
    AffineElement,
    DSAlgebra,
    affine_bracket,
    build_affine_gS_with_S_action,
    check_ds_consistency,
    d_tilde_and_dab,
    ds_bracket,
    fixed_point_comparison,
    verify_delta_identities,
    verify_theorem_pisomorphism,
)
from covlie.cyclotomic import ONE, ZERO, CycNumber, zeta
from covlie.errors import WindowExceeded
from covlie.group import make_character, parse_group
from covlie.liealg import check_jacobi
from covlie.linalg import axpy, scale, vec_eq
from covlie.paperalg import build_g_S, chi_form


def setup(spec="Z5", k=1, W=3):
    S = parse_group(spec)
    chi = make_character(S, k)
    return S, chi, DSAlgebra(S, chi, W)


def test_affine_bracket_examples():
    S, chi, _ = setup()
    g = build_g_S(S)
    B = chi_form(g, chi)
    L = g.algebra
    a, b = 0, L.dim - 1
    x0 = affine_bracket(AffineElement.basis(a, 0), AffineElement.basis(b, 0), L, B, 3)
    assert x0.central == ZERO
    assert x0.terms == {(k, 0): c for k, c in L.bracket_basis(a, b).items()}
    i, j = g.index[(1, 0)], g.index[(1, 0)]
    x2 = affine_bracket(AffineElement.basis(i, 2), AffineElement.basis(j, -2), L, B, 3)
    assert x2.central == 2 * B.value(i, j) == CycNumber.rational(-2)
    assert affine_bracket(AffineElement.k(), AffineElement.basis(i, 1), L, B, 3).is_zero()
    with pytest.raises(WindowExceeded):
        affine_bracket(AffineElement.basis(i, 2), AffineElement.basis(j, 2), L, B, 3)


def test_affine_algebra_is_lie():
    S, chi, _ = setup("Z3")
    g = build_g_S(S)
    A = AffineAlgebra(g.algebra, chi_form(g, chi), 2)
    assert check_jacobi(A.lie)


def test_ds_bracket_examples():
    S, chi, D = setup()
    q = zeta(5)
    lhs = ds_bracket(D.vec(1, 1), D.vec(1, -1), D)
    assert vec_eq(lhs, scale(D.vec(2, 0), q ** -2 - q ** 2))
    lhs = ds_bracket(D.vec(1, -2), D.vec(1, 2), D)
    rhs = scale(D.vec(2, 0), q ** 4 - q ** -4)
    axpy(rhs, q ** 2 + q ** -2 - 2, D.c_vec())
    assert vec_eq(lhs, rhs)
    for a, n in itertools.product(range(5), range(-3, 4)):
        assert ds_bracket(D.vec(a, n), D.vec(a, n), D) == {}


def _oracle_bracket(S, k, a, p, b, qd):
    """Complex evaluation of [D^a(p), D^b(q)] as {(rep, degree) or 'c': value}."""
    N = S.order
    z = lambda x: cmath.exp(2j * cmath.pi * k * (x % N) / N)

    def qi(m, x):
        w = z(x)
        if abs(w - 1) < 1e-12:
            return m
        if abs(w + 1) < 1e-12:
            return m * (-1) ** (m - 1)
        return (w ** m - w ** -m) / (w - 1 / w)

    out = {}

    def put(e, coef):
        e %= N
        if (2 * e) % N == 0:
            return
        rep, sgn = (e, 1) if e <= N - e else (N - e, -1)
        out[(rep, p + qd)] = out.get((rep, p + qd), 0) + sgn * coef

    put(a + b, z(qd * a - p * b) - z(-qd * a + p * b))
    put(a - b, -(z(qd * a + p * b) - z(-qd * a - p * b)))
    if p + qd == 0:
        out["c"] = qi(qd, a + b) - qi(qd, a - b)
    return out


@pytest.mark.parametrize("spec,k", [("Z3", 1), ("Z4", 1), ("Z5", 2), ("Z6", 5), ("Z7", 3)])
def test_ds_bracket_matches_complex_oracle(spec, k):
    S, chi, D = setup(spec, k, 3)
    for a, b in itertools.product(range(S.order), repeat=2):
        for p, qd in itertools.product(range(-3, 4), repeat=2):
            if abs(p + qd) > 3:
                continue
            got = D.generator_bracket(a, p, b, qd)
            expected = _oracle_bracket(S, k, a, p, b, qd)
            want = {}
            for key, val in expected.items():
                idx = D.c_index if key == "c" else next(iter(D.vec(*key)))
                want[idx] = val
            for idx in set(want) | set(got):
                assert abs(got.get(idx, ZERO).to_complex() - want.get(idx, 0)) < 1e-9, (a, p, b, qd)


def test_d_tilde_examples():
    S, chi, D = setup()
    q = zeta(5)
    t, _ = d_tilde_and_dab(1, 0, 0, D)
    expected = dict(D.vec(1, 0))
    axpy(expected, (q - q ** -1).inverse(), D.c_vec())
    assert vec_eq(t, expected)
    _, dab = d_tilde_and_dab(1, 2, 3, D)
    assert vec_eq(dab, scale(D.d_tilde(1, 3), q ** 4))
    S4, chi4, D4 = setup("Z4")
    for n in range(-2, 3):
        assert D4.d_tilde(2, n) == D4.vec(2, n)


def test_affine_action_examples():
    S = parse_group("Z3")
    chi = make_character(S, 1)
    ag = build_affine_gS_with_S_action(S, chi, 2)
    assert ag.shifts[0].is_identity()
    img = ag.shifts[1](ag.affine.to_vector(ag.d(1, 0, 2)))
    assert vec_eq(img, scale(ag.affine.to_vector(ag.d(1, 1, 2)), chi(1) ** 2))


@pytest.mark.parametrize("spec", ["Z3", "Z4", "Z5", "Z6"])
def test_ds_consistency(spec):
    _, _, D = setup(spec, 1, 3)
    assert all(check_ds_consistency(D))


def test_bracket_sweep_and_negative_control_z3():
    S, chi, _ = setup("Z3")
    assert verify_theorem_pisomorphism(S, chi, 3).passed
    assert not verify_theorem_pisomorphism(S, chi, 3, central=False, structural=False).passed


def test_central_element_normalization():
    assert K_TO_C == -ONE


def test_delta_identities_branch_coverage():
    S, chi, _ = setup("Z3")
    rep = verify_delta_identities(S, chi, 5)
    assert rep.passed
    counts = [c.detail["derivative_delta_terms"] for c in rep.checks if c.detail]
    assert counts and all(n > 0 for n in counts)


def test_fixed_point_comparison_scalar():
    S, chi, _ = setup("Z3")
    checks, info = fixed_point_comparison(build_affine_gS_with_S_action(S, chi, 2))
    assert all(checks)
    assert info["phi_k_scalar"] == "3" and info["dim_covariant"] == info["dim_fixed"]
