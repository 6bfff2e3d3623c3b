import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from covlie.cyclotomic import ONE, zeta
from covlie.errors import GroupSpecError, NotCyclic, NotInjective
from covlie.group import coset_decomposition_2S, make_character, parse_group, subgroup_s0

SPECS = ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z2xZ2", "Z2xZ4", "Z3xZ3", "Z6xZ2"]


def test_s0_examples():
    assert subgroup_s0(parse_group("Z5")) == [(0,)]
    assert subgroup_s0(parse_group("Z6")) == [(0,), (3,)]
    assert len(subgroup_s0(parse_group("Z2xZ2"))) == 4


def test_coset_examples():
    assert coset_decomposition_2S(parse_group("Z7"))[:2] == (7, 1)
    assert len(coset_decomposition_2S(parse_group("Z7"))[2]) == 1
    assert coset_decomposition_2S(parse_group("Z6")) == (3, 2, [[0, 2, 4], [1, 3, 5]])
    assert coset_decomposition_2S(parse_group("Z8"))[:2] == (4, 2)


def test_character_examples():
    S = parse_group("Z5")
    chi = make_character(S, 1)
    assert [chi(a) for a in range(5)] == [zeta(5, a) for a in range(5)]
    with pytest.raises(NotInjective):
        make_character(parse_group("Z6"), 2)
    with pytest.raises(NotCyclic):
        make_character(parse_group("Z2xZ2"), 1)


@pytest.mark.parametrize("spec", ["Q5", "Z0", "Z5x", "", "5"])
def test_bad_specs(spec):
    with pytest.raises(GroupSpecError):
        parse_group(spec)


def test_cyclic_products_normalize():
    S = parse_group("Z2xZ3")
    assert S.is_cyclic and S.order == 6


@pytest.mark.parametrize("spec", SPECS)
def test_group_laws(spec):
    S = parse_group(spec)
    n = S.order
    for a, b in itertools.product(range(n), repeat=2):
        assert S.add(a, b) == S.add(b, a)
        assert S.sub(S.add(a, b), b) == a
    assert all(S.add(a, S.neg(a)) == 0 for a in range(n))
    k, r, cosets = coset_decomposition_2S(S)
    assert k * r == n
    assert sorted(x for c in cosets for x in c) == list(range(n))
    if n % 2:
        assert subgroup_s0(S) == [S.element(0)] and k == n


@pytest.mark.parametrize("spec", SPECS)
def test_half_set_and_normal_form(spec):
    S = parse_group(spec)
    half = set(S.half_set)
    for a in range(S.order):
        sign, rep = S.normal_form(a)
        if S.add(a, a) == 0:
            assert sign == 0
        else:
            assert rep in half and (rep == a) == (sign == 1) and (rep == S.neg(a)) == (sign == -1)
    assert len(half) * 2 + len(S.s0) == S.order


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 16), st.data())
def test_character_is_injective_homomorphism(N, data):
    k = data.draw(st.integers(1, N - 1).filter(lambda x: math.gcd(x, N) == 1))
    S = parse_group(f"Z{N}")
    chi = make_character(S, k)
    vals = [chi(a) for a in range(N)]
    assert len(set(vals)) == N
    assert chi(0) == ONE
    for a in range(N):
        for b in range(N):
            assert chi(S.add(a, b)) == vals[a] * vals[b]
    g = chi.generator()
    assert chi(g) == zeta(N)
    assert chi.power(g, 5) == zeta(N) ** 5
