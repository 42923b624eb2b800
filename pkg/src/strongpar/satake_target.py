"""The invariant group algebra C[X^vee]^{W'} in its orbit-sum basis.

Elements are finite maps from cocharacter tuples to Fractions. W' is given by
generating WeylElements acting on X^vee (typically the simple reflections of
a standard parabolic).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .root_datum import RootDatum
from .weyl import DEFAULT_ORBIT_CAP, WeylElement, orbit, parabolic_descriptor, simple_reflection

Vec = tuple[int, ...]


class LatticeAlgebraElement:
    """Element of the group algebra Q[X^vee] with exact coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Vec, Fraction | int] | None = None):
        self.terms: dict[Vec, Fraction] = {}
        for k, v in (terms or {}).items():
            v = Fraction(v)
            if v:
                self.terms[tuple(k)] = v

    @classmethod
    def monomial(cls, lam: Sequence[int], coeff=1) -> "LatticeAlgebraElement":
        return cls({tuple(lam): coeff})

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticeAlgebraElement) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"LatticeAlgebraElement({self.terms})"

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "LatticeAlgebraElement") -> "LatticeAlgebraElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LatticeAlgebraElement(out)

    def scale(self, c) -> "LatticeAlgebraElement":
        return LatticeAlgebraElement({k: c * v for k, v in self.terms.items()})

    def __sub__(self, other: "LatticeAlgebraElement") -> "LatticeAlgebraElement":
        return self + other.scale(-1)

    def __mul__(self, other: "LatticeAlgebraElement") -> "LatticeAlgebraElement":
        out: dict[Vec, Fraction] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                k = tuple(i + j for i, j in zip(a, b))
                out[k] = out.get(k, 0) + x * y
        return LatticeAlgebraElement(out)

    def support(self) -> list[Vec]:
        return sorted(self.terms)

    def act(self, w: WeylElement) -> "LatticeAlgebraElement":
        return LatticeAlgebraElement({w.on_coweight(k): v for k, v in self.terms.items()})

    def is_invariant(self, generators: Iterable[WeylElement]) -> bool:
        return all(self.act(w) == self for w in generators)


@dataclass(frozen=True)
class OrbitSum:
    representative: Vec
    orbit: tuple[Vec, ...]

    @property
    def element(self) -> LatticeAlgebraElement:
        return LatticeAlgebraElement({v: 1 for v in self.orbit})


def _actions(generators: Sequence[WeylElement]):
    mats = [w.matrix for w in generators]

    def act(i: int, lam: Vec) -> Vec:
        return tuple(sum(a * b for a, b in zip(row, lam)) for row in mats[i])

    return act


def orbit_sum(lam: Sequence[int], generators: Sequence[WeylElement], cap: int = DEFAULT_ORBIT_CAP) -> OrbitSum:
    orb = orbit(tuple(lam), _actions(generators), list(range(len(generators))), cap)
    pts = tuple(sorted(orb.elements))
    return OrbitSum(max(pts), pts)


def multiply_orbit_sums(a: OrbitSum, b: OrbitSum, generators: Sequence[WeylElement],
                        cap: int = DEFAULT_ORBIT_CAP) -> list[tuple[Vec, int]]:
    """Expand m_a * m_b = sum c_k m_k by repeatedly removing the lexicographically largest term."""
    rest = a.element * b.element
    out = []
    while rest:
        top = max(rest.terms)
        c = rest.terms[top]
        m = orbit_sum(top, generators, cap)
        if m.representative != top:
            raise AssertionError("lexicographic maximum of an invariant element must be a representative")
        for v in m.orbit:
            if rest.terms.get(v) != c:
                raise AssertionError(f"product is not invariant: orbit of {top} has unequal coefficients")
        if c.denominator != 1 or c < 0:
            raise AssertionError(f"structure constant {c} is not a nonnegative integer")
        rest = rest - m.element.scale(c)
        out.append((top, int(c)))
    return sorted(out, reverse=True)


def parabolic_generators(datum: RootDatum, subset: Iterable[int]) -> list[WeylElement]:
    return [simple_reflection(datum, i) for i in sorted(set(subset))]


@dataclass
class RingSummary:
    group: str
    subgroup: tuple[int, ...]
    subgroup_type: tuple[str, ...]
    bound: int
    basis: list[Vec]
    products: dict[tuple[Vec, Vec], list[tuple[Vec, int]]]
    clipped: set[tuple[Vec, Vec]]

    def to_dict(self) -> dict:
        def key(v):
            return ",".join(map(str, v))
        return {
            "group": self.group,
            "subgroup": list(self.subgroup),
            "subgroup_type": list(self.subgroup_type),
            "bound": self.bound,
            "basis": [list(v) for v in self.basis],
            "products": {f"{key(a)}|{key(b)}": [[list(k), c] for k, c in terms]
                         for (a, b), terms in sorted(self.products.items())},
            "clipped": sorted(f"{key(a)}|{key(b)}" for a, b in self.clipped),
        }


def invariant_ring_summary(datum: RootDatum, subset: Iterable[int], bound: int,
                           cap: int = DEFAULT_ORBIT_CAP) -> RingSummary:
    """Orbit representatives of the box [0, bound]^r and all their pairwise products.

    A product is flagged as clipped when some term leaves the box.
    """
    if bound < 0:
        raise InputError("bound must be nonnegative")
    subset = tuple(sorted(set(subset)))
    gens = parabolic_generators(datum, subset)
    reps: dict[Vec, OrbitSum] = {}
    for pt in product(range(bound + 1), repeat=datum.rank):
        m = orbit_sum(pt, gens, cap)
        reps.setdefault(m.representative, m)
    basis = sorted(reps)
    products, clipped = {}, set()
    for i, a in enumerate(basis):
        for b in basis[i:]:
            terms = multiply_orbit_sums(reps[a], reps[b], gens, cap)
            products[(a, b)] = terms
            if any(not all(0 <= x <= bound for x in k) for k, _ in terms):
                clipped.add((a, b))
    desc = parabolic_descriptor(datum, subset)
    return RingSummary(datum.name, subset, desc.types, bound, basis, products, clipped)
