"""Integer lattices in Z^r: Hermite normal forms, kernels, saturations, quotients.

Vectors are tuples of Python ints. A lattice is stored by the nonzero rows of
the row-style Hermite normal form of any generating set, so two lattices are
equal exactly when their stored bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .errors import LatticeError

Vector = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def transpose(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    return [[row[j] for row in rows] for j in range(ncols)]


def hermite(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Row-style Hermite normal form with unimodular transform.

    Returns ``(H, U, pivots)`` with ``U @ A == H``. The nonzero rows of ``H``
    come first, pivots are positive and entries above a pivot lie in
    ``[0, pivot)``.
    """
    A = [list(r) for r in rows]
    k = len(A)
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    pivots: list[int] = []
    p = 0
    for col in range(ncols):
        if p == k:
            break
        for i in range(p + 1, k):
            b = A[i][col]
            if b == 0:
                continue
            a = A[p][col]
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            for M in (A, U):
                rp, ri = M[p], M[i]
                M[p] = [s * x + t * y for x, y in zip(rp, ri)]
                M[i] = [-bg * x + ag * y for x, y in zip(rp, ri)]
        if A[p][col] == 0:
            continue
        if A[p][col] < 0:
            A[p] = [-x for x in A[p]]
            U[p] = [-x for x in U[p]]
        d = A[p][col]
        for i in range(p):
            q = A[i][col] // d
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[p])]
                U[i] = [x - q * y for x, y in zip(U[i], U[p])]
        pivots.append(col)
        p += 1
    return A, U, pivots


def hnf_basis(rows: Iterable[Sequence[int]], ncols: int) -> tuple[Vector, ...]:
    rows = list(rows)
    if not rows:
        return ()
    H, _, pivots = hermite(rows, ncols)
    return tuple(tuple(H[i]) for i in range(len(pivots)))


def left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Basis of {x in Z^k : x @ A = 0}; always a saturated sublattice."""
    if not rows:
        return []
    _, U, pivots = hermite(rows, ncols)
    return [tuple(U[i]) for i in range(len(pivots), len(rows))]


def right_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[Vector]:
    """Basis of {y in Z^ncols : A @ y = 0}."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    return left_kernel(transpose(rows, ncols), len(rows))


def solve_left(rows: Sequence[Sequence[int]], target: Sequence[int]) -> Vector | None:
    """Integer x with x @ A = target, or None when no integer solution exists."""
    ncols = len(target)
    if not rows:
        return () if not any(target) else None
    H, U, pivots = hermite(rows, ncols)
    residual = list(target)
    y = [0] * len(rows)
    for i, col in enumerate(pivots):
        q, r = divmod(residual[col], H[i][col])
        if r:
            return None
        y[i] = q
        if q:
            residual = [a - q * b for a, b in zip(residual, H[i])]
    if any(residual):
        return None
    n = len(rows)
    return tuple(sum(y[i] * U[i][j] for i in range(n)) for j in range(n))


def rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(hnf_basis(rows, ncols))


def elementary_divisors(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Smith invariants of the row space padded with zeros to length ``ncols``."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [0] * ncols
    inv = [int(abs(d)) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0]
    return sorted(inv) + [0] * (ncols - len(inv))


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^ambient_rank, stored by its canonical HNF basis."""

    ambient_rank: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, generators: Iterable[Sequence[int]], ambient_rank: int) -> "Lattice":
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            if len(g) != ambient_rank:
                raise LatticeError(f"generator {g} has wrong length for Z^{ambient_rank}")
        return cls(ambient_rank, hnf_basis(gens, ambient_rank))

    @classmethod
    def full(cls, r: int) -> "Lattice":
        return cls(r, tuple(tuple(int(i == j) for j in range(r)) for i in range(r)))

    @classmethod
    def zero(cls, r: int) -> "Lattice":
        return cls(r, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def coordinates(self, v: Sequence[int]) -> Vector | None:
        return solve_left(self.basis, tuple(v))

    def issubset(self, other: "Lattice") -> bool:
        return self.ambient_rank == other.ambient_rank and all(b in other for b in self.basis)

    def __le__(self, other: "Lattice") -> bool:
        return self.issubset(other)

    def scaled(self, k: int) -> "Lattice":
        return Lattice.span([[k * x for x in b] for b in self.basis], self.ambient_rank)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice.span(self.basis + other.basis, self.ambient_rank)


@dataclass(frozen=True)
class QuotientStructure:
    """Elementary divisors of ambient/sub; 0 marks a free factor."""

    divisors: tuple[int, ...]

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.divisors if d > 1)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.divisors if d == 0)

    @property
    def torsion_free(self) -> bool:
        return all(d in (0, 1) for d in self.divisors)

    @property
    def trivial(self) -> bool:
        return all(d == 1 for d in self.divisors)


def _coordinate_rows(sub: Lattice, ambient: Lattice) -> list[Vector]:
    if sub.ambient_rank != ambient.ambient_rank:
        raise LatticeError("lattices live in different ambient spaces")
    coords = []
    for b in sub.basis:
        c = ambient.coordinates(b)
        if c is None:
            raise LatticeError(f"{b} is not in the ambient lattice")
        coords.append(c)
    return coords


def quotient_structure(sub: Lattice, ambient: Lattice) -> QuotientStructure:
    coords = _coordinate_rows(sub, ambient)
    return QuotientStructure(tuple(elementary_divisors(coords, ambient.rank)))


def saturation(sub: Lattice, ambient: Lattice | None = None) -> Lattice:
    """Smallest sublattice of ``ambient`` containing ``sub`` with torsion-free quotient."""
    if ambient is None:
        ambient = Lattice.full(sub.ambient_rank)
    coords = _coordinate_rows(sub, ambient)
    d = ambient.rank
    annihilator = right_kernel(coords, d)
    sat_coords = right_kernel(annihilator, d)
    gens = [tuple(sum(c[i] * ambient.basis[i][j] for i in range(d)) for j in range(ambient.ambient_rank))
            for c in sat_coords]
    return Lattice.span(gens, ambient.ambient_rank)
