from itertools import permutations, product

import pytest
import sympy

from strongpar.errors import InputError
from strongpar.root_datum import catalog_lookup
from strongpar.satake_target import (LatticeAlgebraElement, invariant_ring_summary, multiply_orbit_sums,
                                     orbit_sum, parabolic_generators)
from strongpar.weyl import from_word


def subgroup_permutations(n, kind):
    if kind == "trivial":
        return [tuple(range(n))]
    if kind == "s1":
        return [tuple(range(n)), (1, 0) + tuple(range(2, n))]
    return list(permutations(range(n)))


SUBSETS = {"trivial": [], "s1": [0], "full": None}


def oracle_product(lam, nu, n, kind):
    """Expand m_lam * m_nu as a sympy polynomial and read off c_kappa at each orbit representative."""
    xs = sympy.symbols(f"x0:{n}")
    perms = subgroup_permutations(n, kind)

    def orbit(v):
        return {tuple(v[s[i]] for i in range(n)) for s in perms}

    def poly(v):
        return sum(sympy.prod(x ** e for x, e in zip(xs, w)) for w in orbit(v))

    P = sympy.Poly(sympy.expand(poly(lam) * poly(nu)), *xs)
    coeffs = {tuple(m): int(c) for m, c in P.terms()}
    out, covered = [], set()
    for k in sorted(coeffs, reverse=True):
        if k in covered:
            continue
        orb = orbit(k)
        rep = max(orb)
        assert {coeffs.get(v) for v in orb} == {coeffs[rep]}
        covered |= orb
        out.append((rep, coeffs[rep]))
    return sorted(out, reverse=True)


def _gens(d, kind):
    subset = SUBSETS[kind]
    return parabolic_generators(d, range(d.semisimple_rank) if subset is None else subset)


def test_orbit_sum_examples():
    gl2 = catalog_lookup("GL", 2)
    W = _gens(gl2, "full")
    assert orbit_sum((0, 0), W).element == LatticeAlgebraElement.monomial((0, 0))
    assert orbit_sum((1, 0), W).element == LatticeAlgebraElement({(1, 0): 1, (0, 1): 1})
    assert orbit_sum((0, 1), W).representative == (1, 0)
    gl3 = catalog_lookup("GL", 3)
    assert orbit_sum((0, 0, 1), _gens(gl3, "s1")).orbit == ((0, 0, 1),)


def test_multiplication_examples():
    gl2 = catalog_lookup("GL", 2)
    W = _gens(gl2, "full")
    m10 = orbit_sum((1, 0), W)
    assert multiply_orbit_sums(m10, m10, W) == [((2, 0), 1), ((1, 1), 2)]
    assert multiply_orbit_sums(orbit_sum((0, 0), W), m10, W) == [((1, 0), 1)]
    gl3 = catalog_lookup("GL", 3)
    S = _gens(gl3, "s1")
    assert multiply_orbit_sums(orbit_sum((1, 0, 0), S), orbit_sum((0, 0, 1), S), S) == [((1, 0, 1), 1)]


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("kind", ["trivial", "s1", "full"])
def test_products_match_polynomial_oracle(n, kind):
    d = catalog_lookup("GL", n)
    gens = _gens(d, kind)
    reps = sorted({orbit_sum(v, gens).representative for v in product(range(3), repeat=n)})
    for i, a in enumerate(reps):
        for b in reps[i:]:
            got = multiply_orbit_sums(orbit_sum(a, gens), orbit_sum(b, gens), gens)
            assert got == oracle_product(a, b, n, kind)


def test_products_are_invariant_on_other_types():
    d = catalog_lookup("Sp", 4)
    W = _gens(d, "full")
    for a in [(1, 0), (1, 1), (2, -1)]:
        for b in [(1, 0), (0, 2)]:
            prod_elt = orbit_sum(a, W).element * orbit_sum(b, W).element
            assert prod_elt.is_invariant(W)
            re = LatticeAlgebraElement()
            for k, c in multiply_orbit_sums(orbit_sum(a, W), orbit_sum(b, W), W):
                re = re + orbit_sum(k, W).element.scale(c)
            assert re == prod_elt


def test_weyl_action_on_elements():
    d = catalog_lookup("GL", 3)
    w = from_word(d, (0, 1))
    e = LatticeAlgebraElement({(1, 0, 0): 2, (0, 0, 1): -1})
    assert e.act(w).act(w.inverse(d)) == e
    assert (e - e) == LatticeAlgebraElement() and not (e - e)


def test_ring_summary():
    d = catalog_lookup("GL", 2)
    s = invariant_ring_summary(d, [], 1)
    assert s.basis == [(0, 0), (0, 1), (1, 0), (1, 1)]
    s = invariant_ring_summary(d, [0], 1)
    assert s.basis == [(0, 0), (1, 0), (1, 1)]
    assert s.products[((1, 0), (1, 0))] == [((2, 0), 1), ((1, 1), 2)]
    assert ((1, 0), (1, 0)) in s.clipped
    out = s.to_dict()
    assert out["products"]["1,0|1,0"] == [[[2, 0], 1], [[1, 1], 2]]
    assert invariant_ring_summary(d, [0], 0).basis == [(0, 0)]
    with pytest.raises(InputError):
        invariant_ring_summary(d, [0], -1)


def _mul(x, y, reps, gens):
    """Bilinear extension to combinations {rep: coeff}."""
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for k, c in multiply_orbit_sums(reps(a), reps(b), gens):
                out[k] = out.get(k, 0) + ca * cb * c
    return out


@pytest.mark.parametrize("kind", ["trivial", "s1", "full"])
def test_commutative_and_associative(kind):
    d = catalog_lookup("GL", 3)
    gens = _gens(d, kind)
    s = invariant_ring_summary(d, range(2) if SUBSETS[kind] is None else SUBSETS[kind], 1)
    cache = {}

    def reps(v):
        if v not in cache:
            cache[v] = orbit_sum(v, gens)
        return cache[v]

    for a in s.basis:
        for b in s.basis:
            assert _mul({a: 1}, {b: 1}, reps, gens) == _mul({b: 1}, {a: 1}, reps, gens)
            for c in s.basis:
                left = _mul(_mul({a: 1}, {b: 1}, reps, gens), {c: 1}, reps, gens)
                right = _mul({a: 1}, _mul({b: 1}, {c: 1}, reps, gens), reps, gens)
                assert left == right
