from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from strongpar.errors import LatticeError
from strongpar.lattice import (Lattice, elementary_divisors, hermite, left_kernel, quotient_structure,
                               right_kernel, saturation, solve_left, xgcd)


def _det(M):
    n = len(M)
    if n == 0:
        return 1
    return sum((-1) ** j * M[0][j] * _det([r[:j] + r[j + 1:] for r in M[1:]]) for j in range(n))


def determinantal_divisors(rows, ncols):
    """Independent SNF oracle: d_k = gcd of k x k minors, invariants d_k / d_{k-1}."""
    out, prev = [], 1
    for k in range(1, min(len(rows), ncols) + 1):
        g = 0
        for R in combinations(range(len(rows)), k):
            for C in combinations(range(ncols), k):
                g = gcd(g, _det([[rows[i][j] for j in C] for i in R]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return sorted(out) + [0] * (ncols - len(out))


matrices = st.integers(1, 3).flatmap(
    lambda k: st.integers(1, 3).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=k, max_size=k)))


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_xgcd_bezout(a, b):
    g, s, t = xgcd(a, b)
    assert g == gcd(a, b) and s * a + t * b == g


@given(matrices)
@settings(max_examples=200)
def test_hermite_transform(A):
    n = len(A[0])
    H, U, pivots = hermite(A, n)
    assert abs(_det(U)) == 1
    assert [[sum(U[i][k] * A[k][j] for k in range(len(A))) for j in range(n)] for i in range(len(A))] == H
    for r, c in enumerate(pivots):
        assert H[r][c] > 0
        assert all(H[r][j] == 0 for j in range(c))
        assert all(0 <= H[i][c] < H[r][c] for i in range(r))


@given(matrices)
@settings(max_examples=200)
def test_smith_invariants_match_minors_oracle(A):
    n = len(A[0])
    assert elementary_divisors(A, n) == determinantal_divisors(A, n)


@given(matrices)
def test_kernels(A):
    n = len(A[0])
    for x in left_kernel(A, n):
        assert all(sum(x[i] * A[i][j] for i in range(len(A))) == 0 for j in range(n))
    for y in right_kernel(A, n):
        assert all(sum(r[j] * y[j] for j in range(n)) == 0 for r in A)


@given(matrices, st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_left_finds_combinations(A, coeffs):
    n = len(A[0])
    target = tuple(sum(c * A[i][j] for i, c in enumerate(coeffs[:len(A)])) for j in range(n))
    x = solve_left(A, target)
    assert x is not None
    assert tuple(sum(x[i] * A[i][j] for i in range(len(A))) for j in range(n)) == target


def test_solve_left_detects_non_membership():
    assert solve_left([[2]], (1,)) is None
    assert solve_left([[1, 1]], (1, 0)) is None


def test_quotient_of_lattice_by_itself_is_trivial():
    L = Lattice.span([(2, 1, 0), (0, 3, 1)], 3)
    assert quotient_structure(L, L).divisors == (1, 1)
    assert quotient_structure(L, L).trivial


def test_quotient_requires_containment():
    with pytest.raises(LatticeError):
        quotient_structure(Lattice.full(2), Lattice.span([(2, 0), (0, 1)], 2))


def test_saturation_of_2Z():
    assert saturation(Lattice.span([(2,)], 1)) == Lattice.full(1)


@given(matrices)
def test_saturation_idempotent_and_torsion_free(A):
    n = len(A[0])
    L = Lattice.span(A, n)
    S = saturation(L)
    assert L <= S
    assert saturation(S) == S
    assert quotient_structure(S, Lattice.full(n)).torsion_free
    assert S.rank == L.rank


@given(matrices, matrices)
def test_saturation_monotone(A, B):
    n = len(A[0])
    B = [r[:n] + [0] * (n - len(r)) for r in B]
    L = Lattice.span(A, n)
    M = L + Lattice.span(B, n)
    assert saturation(L) <= saturation(M)


def test_hnf_is_canonical():
    assert Lattice.span([(1, 2), (3, 4)], 2) == Lattice.span([(3, 4), (4, 6), (1, 2)], 2)
