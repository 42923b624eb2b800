from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from conftest import SMALL_CATALOG
from strongpar.character import TorusCharacter, _reflector, truncated_units
from strongpar.errors import CapExceeded, InputError
from strongpar.lattice import dot
from strongpar.root_datum import catalog_lookup
from strongpar.weyl import (from_word, group_order, orbit, parabolic_descriptor, simple_reflection,
                            stabilizer_is_standard_parabolic)


def _matrix_action(d):
    S = [simple_reflection(d, i).matrix for i in range(d.semisimple_rank)]

    def act(i, M):
        return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in zip(*M)) for row in S[i])

    return act


def _identity(r):
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def test_sl2_reflection_is_minus_one():
    assert simple_reflection(catalog_lookup("SL", 2), 0).matrix == ((-1,),)


def test_gl3_first_reflection_swaps():
    assert simple_reflection(catalog_lookup("GL", 3), 0).matrix == ((0, 1, 0), (1, 0, 0), (0, 0, 1))


def test_bad_simple_index():
    with pytest.raises(InputError):
        simple_reflection(catalog_lookup("GL", 3), 2)


def test_reflections_are_involutions_fixing_hyperplane(small_datum):
    d = small_datum
    for i in range(d.semisimple_rank):
        s = simple_reflection(d, i)
        assert (s * s).matrix == _identity(d.rank)
        a = d.simple_root(i)
        assert s.on_coweight(d.simple_coroot(i)) == tuple(-x for x in d.simple_coroot(i))
        for e in range(d.rank):
            lam = tuple(int(k == e) for k in range(d.rank))
            if dot(a, lam) == 0:
                assert s.on_coweight(lam) == lam


def test_weight_and_coweight_actions_are_dual(small_datum):
    d = small_datum
    w = from_word(d, [i % max(d.semisimple_rank, 1) for i in range(5)] if d.semisimple_rank else [])
    for chi in d.roots[:6]:
        for lam in d.coroots[:6]:
            assert dot(w.on_weight(chi, d), w.on_coweight(lam)) == dot(chi, lam)


def test_inverse():
    d = catalog_lookup("Sp", 6)
    w = from_word(d, (0, 1, 2, 1))
    assert (w * w.inverse(d)).matrix == _identity(d.rank)
    assert w.sign() == 1 and from_word(d, (0,)).sign() == -1


@pytest.mark.parametrize("N", range(2, 7))
def test_type_a_order(N):
    assert group_order(catalog_lookup("SL", N)) == factorial(N)


def test_known_orders():
    assert group_order(catalog_lookup("Sp", 4)) == 8
    assert group_order(catalog_lookup("E", 8)) == 696729600
    assert group_order(catalog_lookup("F", 4)) == 1152
    assert group_order(catalog_lookup("G", 2)) == 12
    assert group_order(catalog_lookup("GL", 1)) == 1


@pytest.mark.parametrize("N", range(2, 7))
def test_order_formula_matches_enumeration(N):
    d = catalog_lookup("GL", N)
    W = orbit(_identity(N), _matrix_action(d), list(range(N - 1)))
    assert len(W) == factorial(N) == group_order(d)


@pytest.mark.parametrize("pair", [("Sp", 6), ("SO", 7), ("SO", 8), ("G", 2), ("F", 4)])
def test_order_formula_matches_enumeration_other_types(pair):
    d = catalog_lookup(*pair)
    W = orbit(_identity(d.rank), _matrix_action(d), list(range(d.semisimple_rank)))
    assert len(W) == group_order(d)


def test_parabolic_descriptor():
    d = catalog_lookup("GL", 4)
    desc = parabolic_descriptor(d, [0, 2])
    assert desc.order == 4 and desc.types == ("A1", "A1")
    assert parabolic_descriptor(d, []).order == 1


def test_orbit_of_coordinate_vector():
    d = catalog_lookup("GL", 5)
    o = orbit((1, 0, 0, 0, 0), lambda i, v: simple_reflection(d, i).on_coweight(v), range(4))
    assert set(o.elements) == {tuple(int(k == j) for k in range(5)) for j in range(5)}
    for v, word in o.transversal():
        assert from_word(d, reversed(word)).on_coweight((1, 0, 0, 0, 0)) == v


def test_orbit_cap():
    d = catalog_lookup("GL", 5)
    with pytest.raises(CapExceeded):
        orbit((1, 2, 3, 4, 5), lambda i, v: simple_reflection(d, i).on_coweight(v), range(4), cap=10)


def test_invariant_character_has_singleton_orbit():
    d = catalog_lookup("GL", 3)
    mu = TorusCharacter.from_exponents(d, truncated_units(5, 1), ["1/4"] * 3)
    info = stabilizer_is_standard_parabolic(d, mu.values, _reflector(d, 4))
    assert info.orbit_size == 1 and info.parabolic and info.fixed_simple == (0, 1)


def test_sl3_cyclic_character_orbit_has_two_elements():
    d = catalog_lookup("SL", 3)
    mu = TorusCharacter.from_exponents(d, truncated_units(7, 1), ["1/3", "1/3"])
    info = stabilizer_is_standard_parabolic(d, mu.values, _reflector(d, 6))
    assert info.orbit_size == 2 and info.stabilizer_order == 3
    assert not info.parabolic and info.fixed_simple == ()


def test_regular_gl3_character_has_trivial_stabilizer():
    d = catalog_lookup("GL", 3)
    mu = TorusCharacter.from_exponents(d, truncated_units(7, 1), ["0", "1/6", "1/3"])
    act = _reflector(d, 6)
    assert all(act(i, mu.values) != mu.values for i in range(2))
    info = stabilizer_is_standard_parabolic(d, mu.values, act)
    assert info.parabolic and info.fixed_simple == () and info.orbit_size == 6


@pytest.mark.parametrize("pair", SMALL_CATALOG, ids=[f"{a}{b}" for a, b in SMALL_CATALOG])
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_orbit_stabilizer_properties(pair, data):
    d = catalog_lookup(*pair)
    n = truncated_units(7, 1).order
    vals = tuple(data.draw(st.lists(st.integers(0, n - 1), min_size=d.rank, max_size=d.rank)))
    act = _reflector(d, n)
    info = stabilizer_is_standard_parabolic(d, vals, act)
    assert group_order(d) % info.orbit_size == 0
    # W_{S'} fixes the seed, so it divides the stabilizer
    assert all(act(i, vals) == vals for i in info.fixed_simple)
    assert info.stabilizer_order % info.descriptor.order == 0
