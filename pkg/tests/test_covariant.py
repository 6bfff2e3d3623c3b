import pytest

from covlie.cyclotomic import ONE, ZERO
from covlie.errors import FormNotPreserved, NotAutomorphism
from covlie.group import make_character, parse_group
from covlie.liealg import BilinearForm, LinearMap, check_invariant_form, check_jacobi, is_isomorphism
from covlie.covariant import GroupActionOnLie, covariant_algebra, phi_fixed_point_iso
from covlie.affine import build_affine_gS_with_S_action
from covlie.paperalg import build_g_S, build_gl_S, build_K_lie, minus_theta


def test_trivial_group_gives_identity():
    gl = build_gl_S(parse_group("Z3"))
    C = covariant_algebra(gl.algebra, GroupActionOnLie(gl.algebra, []), gl.form)
    assert C.algebra.dim == gl.algebra.dim and C.projection.is_identity()
    phi, inc, checks = phi_fixed_point_iso(C)
    assert all(checks)
    assert inc.compose(phi).is_identity()


@pytest.mark.parametrize("spec", ["Z3", "Z4", "Z5", "Z6"])
def test_K_mod_minus_theta_is_g_S(spec):
    S = parse_group(spec)
    K = build_K_lie(S)
    assert check_jacobi(K)
    C = covariant_algebra(K, GroupActionOnLie(K, [minus_theta(K, S)]))
    assert all(C.checks)
    assert all(phi_fixed_point_iso(C)[2])
    g = build_g_S(S)
    n = S.order
    cols = [g.vec(*divmod(c, n)) for c in C.complement]
    assert is_isomorphism(LinearMap(C.algebra, g.algebra, cols))


def test_gl_mod_tau():
    gl = build_gl_S(parse_group("Z3"))
    G = GroupActionOnLie(gl.algebra, [gl.tau])
    assert G.order == 2
    C = covariant_algebra(gl.algebra, G, gl.form)
    assert all(C.checks)
    assert C.algebra.dim == 3
    assert check_invariant_form(C.algebra, C.form)
    phi, _, checks = phi_fixed_point_iso(C)
    assert all(checks)
    assert "I_G in radical of averaged form" in [c.name for c in C.checks]
    for v in C.ideal.basis():
        for j in range(gl.algebra.dim):
            assert not sum((gl.form(g(v), {j: ONE}) for g in G.elements), start=ZERO)


def test_minus_tau_is_rejected():
    gl = build_gl_S(parse_group("Z3"))
    neg = LinearMap(gl.algebra, gl.algebra, [{k: -c for k, c in col.items()} for col in gl.tau.columns])
    with pytest.raises(NotAutomorphism):
        GroupActionOnLie(gl.algebra, [neg])


def test_form_must_be_preserved():
    gl = build_gl_S(parse_group("Z3"))
    B = BilinearForm(gl.algebra.dim, {(1, 1): ONE})
    with pytest.raises(FormNotPreserved):
        covariant_algebra(gl.algebra, GroupActionOnLie(gl.algebra, [gl.tau]), B)


@pytest.mark.parametrize("spec,W", [("Z3", 2), ("Z4", 2), ("Z5", 1)])
def test_affine_action_dimensions(spec, W):
    S = parse_group(spec)
    ag = build_affine_gS_with_S_action(S, make_character(S, 1), W)
    assert ag.action.order == S.order
    C = covariant_algebra(ag.affine.lie, ag.action, name="cov")
    phi, inc, checks = phi_fixed_point_iso(C)
    assert all(C.checks) and all(checks)
    assert C.algebra.dim == ag.affine.dim - C.ideal.rank == inc.domain.dim
