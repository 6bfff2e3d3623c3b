import pytest

from covlie.cyclotomic import ONE
from covlie.errors import NotFound
from covlie.group import make_character, parse_group
from covlie.liealg import LinearMap
from covlie.paperalg import build_A_S_tau
from covlie.roots import root_decomposition
from covlie.twisted import (
    exp_ad,
    find_grading_element,
    grading_element_from_dict,
    grading_element_to_dict,
    identification_chain,
    psi_twisted_untwisted_iso,
    shift_fixed_cartan,
)


def so_setup(N, k=1):
    S = parse_group(f"Z{N}")
    chi = make_character(S, k)
    A = build_A_S_tau(S)
    return S, chi, A, shift_fixed_cartan(A, chi), A.shift(chi.generator())


def test_identity_gives_zero_h():
    _, _, A, H, _ = so_setup(3)
    assert find_grading_element(A.algebra, H, LinearMap.identity(A.algebra), 1) == {}


def test_shift_on_so3():
    _, _, A, H, sigma = so_setup(3)
    h = find_grading_element(A.algebra, H, sigma, 3)
    assert exp_ad(A.algebra, h, 3) == sigma
    data = root_decomposition(A.algebra, [h], unit=ONE)
    assert set(data.roots) <= {(-1,), (1,)} and data.zero_dim == 1


def test_order_mismatch_is_not_found():
    _, _, A, H, sigma = so_setup(3)
    with pytest.raises(NotFound):
        find_grading_element(A.algebra, H, sigma, 2)


@pytest.mark.parametrize("N,k", [(5, 1), (5, 2), (7, 1)])
def test_search_beyond_so3(N, k):
    _, _, A, H, sigma = so_setup(N, k)
    h = find_grading_element(A.algebra, H, sigma, N)
    assert exp_ad(A.algebra, h, N) == sigma


def test_grading_element_round_trip():
    _, _, A, H, sigma = so_setup(5)
    h = find_grading_element(A.algebra, H, sigma, 5)
    d = grading_element_to_dict(A.algebra, h)
    assert set(d) == {"order", "h"}
    assert grading_element_from_dict(A.algebra, d) == h
    with pytest.raises(ValueError):
        grading_element_from_dict(A.algebra, {"order": 4, "h": {"nope": "1"}})


def test_psi_trivial_grading():
    _, _, A, _, _ = so_setup(3)
    rep = psi_twisted_untwisted_iso(A.algebra, A.form(), {}, 1, 2, "Z3")
    assert rep.passed and all(c.status == "pass" for c in rep.checks)


def test_psi_so3():
    _, _, A, H, sigma = so_setup(3)
    h = find_grading_element(A.algebra, H, sigma, 3)
    rep = psi_twisted_untwisted_iso(A.algebra, A.form(), h, 3, 3, "Z3")
    assert rep.passed
    assert any("psi" in c.name and c.status == "pass" for c in rep.checks)


def test_chain_z3_with_search():
    S, chi, *_ = so_setup(3)
    rep = identification_chain(S, chi, 3, search=True)
    assert rep.passed
    assert not [c for c in rep.checks if c.status == "skipped"]


def test_chain_z5_with_supplied_h():
    S, chi, A, H, sigma = so_setup(5)
    h = find_grading_element(A.algebra, H, sigma, 5)
    rep = identification_chain(S, chi, 2, h=h)
    assert rep.passed
    assert not [c for c in rep.checks if c.status == "skipped"]


def test_chain_without_h_skips_last_links():
    S, chi, *_ = so_setup(5)
    rep = identification_chain(S, chi, 1, sweep=False)
    assert rep.passed
    assert [c for c in rep.checks if c.status == "skipped"]


def test_chain_even_order_is_skipped():
    S = parse_group("Z4")
    rep = identification_chain(S, make_character(S, 1), 1)
    assert rep.passed and all(c.status == "skipped" for c in rep.checks)
