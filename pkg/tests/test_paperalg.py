import math

import pytest

from covlie.cyclotomic import ONE, ZERO
from covlie.group import make_character, parse_group
from covlie.liealg import check_invariant_form, check_jacobi
from covlie.linalg import scale, vec_eq
from covlie.paperalg import (
    build_A_S_tau,
    build_g_S,
    build_gl_S,
    check_a_s_basis,
    check_chi_form_well_defined,
    check_g_equality_criterion,
    check_gt_relations,
    check_pi,
    check_presentation,
    check_s_action,
    chi_form,
    ideal_I_and_blocks,
    pi_hom,
    s_action_on_gS,
)

ALL = ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z2xZ2", "Z2xZ4", "Z3xZ3"]


def test_gl_examples():
    S = parse_group("Z3")
    gl = build_gl_S(S)
    assert gl.algebra.bracket({gl.e(1, 2): ONE}, {gl.e(2, 0): ONE}) == {gl.e(1, 0): ONE}
    assert gl.algebra.bracket({gl.e(1, 2): ONE}, {gl.e(1, 2): ONE}) == {}
    assert gl.tau({gl.e(1, 2): ONE}) == {gl.e(2, 1): -ONE}
    assert gl.tau.compose(gl.tau).is_identity()


def test_a_s_tau_example():
    A = build_A_S_tau(parse_group("Z5"))
    assert vec_eq(A.algebra.bracket(A.gt(1, 0), A.gt(2, 3)), scale(A.gt(3, 2), -ONE))


def test_g_s_example():
    g = build_g_S(parse_group("Z5"))
    assert vec_eq(g.algebra.bracket(g.vec(1, 0), g.vec(2, 3)), g.vec(3, 2))
    for a in range(5):
        for b in range(5):
            assert g.algebra.bracket(g.vec(a, b), g.vec(a, b)) == {}
            assert vec_eq(g.vec(5 - a if a else 0, b), scale(g.vec(a, b), -ONE))


def test_chi_form_examples():
    S = parse_group("Z5")
    g = build_g_S(S)
    B = chi_form(g, make_character(S, 1))
    assert B(g.vec(1, 0), g.vec(4, 0)) == ONE
    assert B(g.vec(1, 0), g.vec(1, 0)) == -ONE
    assert B(g.vec(1, 0), g.vec(2, 0)) == ZERO


def test_s_action_examples():
    g = build_g_S(parse_group("Z5"))
    maps = s_action_on_gS(g)
    assert maps[0].is_identity()
    assert maps[2](g.vec(1, 0)) == g.vec(1, 2)


def test_pi_sends_d_to_minus_gt():
    S = parse_group("Z7")
    g, A = build_g_S(S), build_A_S_tau(S)
    pi = pi_hom(g, A)
    for a in range(7):
        for b in range(7):
            assert vec_eq(pi(g.vec(a, b)), scale(A.gt(a, b), -ONE))
    assert all(pi(g.vec(0, b)) == {} for b in range(7))


@pytest.mark.parametrize("spec", ALL)
def test_structure_everywhere(spec):
    S = parse_group(spec)
    g, A = build_g_S(S), build_A_S_tau(S)
    assert check_jacobi(g.algebra)
    assert check_presentation(g)
    assert check_jacobi(A.algebra)
    assert check_gt_relations(A)
    assert check_invariant_form(A.gl.algebra, A.gl.form)
    assert all(check_s_action(g, s_action_on_gS(g)))
    assert all(check_pi(g, A, pi_hom(g, A)))


@pytest.mark.parametrize("spec", ["Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9"])
def test_chi_form_well_defined_and_invariant(spec):
    S = parse_group(spec)
    g = build_g_S(S)
    for k in range(1, S.order):
        if math.gcd(k, S.order) != 1:
            continue
        B = chi_form(g, make_character(S, k))
        assert check_chi_form_well_defined(g, make_character(S, k), B)
        assert check_invariant_form(g.algebra, B)
        assert all(check_s_action(g, s_action_on_gS(g), B))


@pytest.mark.parametrize("spec", ["Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z2xZ2", "Z2xZ4"])
def test_gt_equality_criterion(spec):
    assert check_g_equality_criterion(parse_group(spec))


@pytest.mark.parametrize("spec", ["Z3", "Z5", "Z7", "Z9"])
def test_a_s_is_gl_s_for_odd_order(spec):
    chk = check_a_s_basis(parse_group(spec))
    assert chk and build_A_S_tau(parse_group(spec)).a_s_dim == parse_group(spec).order ** 2


def test_exponent_two_groups_collapse():
    for spec in ["Z1", "Z2", "Z2xZ2"]:
        assert build_g_S(parse_group(spec)).algebra.dim == 0


@pytest.mark.parametrize("spec,labels,ideal_dim,quotient_dim", [
    ("Z5", ["B2"], 0, 10),
    ("Z7", ["B3"], 0, 21),
    ("Z4", ["abelian-dim-1", "abelian-dim-1"], 2, 2),
    ("Z6", ["B1", "B1"], 6, 6),
    ("Z8", ["A1xA1", "A1xA1"], 12, 12),
])
def test_ideal_and_blocks(spec, labels, ideal_dim, quotient_dim):
    S = parse_group(spec)
    dec = ideal_I_and_blocks(build_g_S(S), build_A_S_tau(S))
    assert all(dec.checks)
    assert [b.to_dict()["type_label"] for b in dec.blocks] == labels
    assert dec.ideal.rank == ideal_dim and dec.quotient.dim == quotient_dim
    assert sum(b.algebra.dim for b in dec.blocks) == quotient_dim
