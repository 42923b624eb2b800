"""Exact characters of T(Z_p / p^m) and their parabolic / easy classification.

A character of ``T(O/p^m) = X^vee (x) (Z/p^m)^x`` is stored by its values on
``e_i (x) g`` for the canonical generator ``g``: integers ``c_i`` modulo
``phi = p^(m-1)(p-1)``, read as exponents ``c_i / phi`` in Q/Z.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from sympy import isprime, primitive_root
from sympy.ntheory import discrete_log

from .errors import InputError, NotEasyError
from .lattice import Lattice, dot, rank, right_kernel, solve_left
from .root_datum import RootDatum, catalog_lookup, levi_roots
from .weyl import (DEFAULT_ORBIT_CAP, WeylElement, conjugate_to_standard, group_order, orbit,
                   reflection_subgroup_order, stabilizer_is_standard_parabolic)

DLOG_TABLE_LIMIT = 10 ** 6


# ---------------------------------------------------------------------------
# Units of Z/p^m

class TruncatedUnits:
    """The cyclic group (Z/p^m)^x with a fixed generator and discrete logarithm."""

    def __init__(self, p: int, m: int):
        if not isinstance(p, int) or not isprime(p):
            raise InputError(f"p = {p!r} is not a prime")
        if p == 2:
            raise InputError("p = 2 is not supported: the unit group need not be cyclic")
        if not isinstance(m, int) or m < 1:
            raise InputError(f"level must be a positive integer, got {m!r}")
        self.p = p
        self.m = m
        self.modulus = p ** m
        self.order = p ** (m - 1) * (p - 1)
        g = int(primitive_root(p))
        if pow(g, p - 1, p * p) == 1:
            g += p
        self.generator = g
        self._table: dict[int, int] | None = None

    def __repr__(self) -> str:
        return f"TruncatedUnits(p={self.p}, m={self.m})"

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedUnits) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash((self.p, self.m))

    def power(self, k: int) -> int:
        return pow(self.generator, k % self.order, self.modulus)

    def is_unit(self, u: int) -> bool:
        return u % self.p != 0

    def dlog(self, u: int) -> int:
        u %= self.modulus
        if u % self.p == 0:
            raise InputError(f"{u} is not a unit mod {self.modulus}")
        if self.order <= DLOG_TABLE_LIMIT:
            if self._table is None:
                table, x = {}, 1
                for k in range(self.order):
                    table[x] = k
                    x = x * self.generator % self.modulus
                self._table = table
            return self._table[u]
        return int(discrete_log(self.modulus, u, self.generator))

    def principal_index(self, c: int) -> int:
        """Index of the image of 1 + p^c in the cyclic group (generated by g^this)."""
        if c <= 0:
            return 1
        if c >= self.m:
            return self.order
        return (self.p - 1) * self.p ** (c - 1)

    def elements(self) -> list[int]:
        return [u for u in range(1, self.modulus) if u % self.p]


@lru_cache(maxsize=None)
def truncated_units(p: int, m: int) -> TruncatedUnits:
    return TruncatedUnits(p, m)


def _to_residue(x, order: int) -> int:
    """Exponent in Q/Z (Fraction, int or 'a/b' string) -> integer mod order."""
    try:
        f = Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"cannot read {x!r} as an exact fraction") from None
    if (f * order).denominator != 1:
        raise InputError(f"exponent {f} has denominator not dividing phi = {order}")
    return int(f * order) % order


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicCharacter:
    """Character of (Z/p^m)^x sending the canonical generator to e(value/order)."""

    units: TruncatedUnits
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.units.order)

    @classmethod
    def from_exponent(cls, units: TruncatedUnits, exponent) -> "CyclicCharacter":
        return cls(units, _to_residue(exponent, units.order))

    @property
    def level(self) -> int:
        return self.units.m

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.value, self.units.order)

    def __call__(self, u: int) -> Fraction:
        return Fraction(self.value * self.units.dlog(u) % self.units.order, self.units.order)

    def is_trivial(self) -> bool:
        return self.value == 0

    def order(self) -> int:
        return self.exponent.denominator

    def __mul__(self, other: "CyclicCharacter") -> "CyclicCharacter":
        return CyclicCharacter(self.units, self.value + other.value)

    def __pow__(self, k: int) -> "CyclicCharacter":
        return CyclicCharacter(self.units, self.value * k)

    def inverse(self) -> "CyclicCharacter":
        return CyclicCharacter(self.units, -self.value)


def conductor(chi: CyclicCharacter) -> int:
    """Smallest c >= 0 with chi trivial on 1 + p^c (1 + p^0 meaning all units)."""
    return _conductor_of(chi.value, chi.units)


def _conductor_of(value: int, units: TruncatedUnits) -> int:
    value %= units.order
    if value == 0:
        return 0
    c = 1
    while value * units.principal_index(c) % units.order:
        c += 1
    return c


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorusCharacter:
    """Character of X^vee (x) units given by its values on e_i (x) generator."""

    datum: RootDatum
    units: TruncatedUnits
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.datum.rank:
            raise InputError(f"expected {self.datum.rank} exponents, got {len(self.values)}")
        n = self.units.order
        object.__setattr__(self, "values", tuple(int(v) % n for v in self.values))

    @classmethod
    def from_exponents(cls, datum: RootDatum, units: TruncatedUnits, exponents: Iterable) -> "TorusCharacter":
        return cls(datum, units, tuple(_to_residue(x, units.order) for x in exponents))

    @classmethod
    def trivial(cls, datum: RootDatum, units: TruncatedUnits) -> "TorusCharacter":
        return cls(datum, units, (0,) * datum.rank)

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        n = self.units.order
        return tuple(Fraction(v, n) for v in self.values)

    @property
    def components(self) -> tuple[CyclicCharacter, ...]:
        return tuple(CyclicCharacter(self.units, v) for v in self.values)

    def evaluate(self, lam: Sequence[int], u: int) -> Fraction:
        """Value on lam (x) u, as an element of Q/Z in [0, 1)."""
        n = self.units.order
        return Fraction(dot(self.values, lam) * self.units.dlog(u) % n, n)

    def on_cocharacter(self, lam: Sequence[int]) -> CyclicCharacter:
        return CyclicCharacter(self.units, dot(self.values, lam))

    def is_trivial(self) -> bool:
        return not any(self.values)

    def __mul__(self, other: "TorusCharacter") -> "TorusCharacter":
        return TorusCharacter(self.datum, self.units, tuple(a + b for a, b in zip(self.values, other.values)))

    def reflect(self, i: int) -> "TorusCharacter":
        return TorusCharacter(self.datum, self.units, _reflector(self.datum, self.units.order)(i, self.values))

    def to_dict(self) -> dict:
        return {"group": self.datum.name, "p": self.units.p, "level": self.units.m,
                "exponents": [str(e) for e in self.exponents]}


def _reflector(datum: RootDatum, n: int):
    """s_i on value vectors: c -> c - <alpha_i^vee, c> alpha_i (mod n)."""
    simple = [(datum.simple_root(i), datum.simple_coroot(i)) for i in range(datum.semisimple_rank)]

    def act(i: int, c: tuple[int, ...]) -> tuple[int, ...]:
        a, av = simple[i]
        t = dot(av, c) % n
        if t == 0:
            return c
        return tuple((x - t * y) % n for x, y in zip(c, a))

    return act


def restrict_along_coroot(mu: TorusCharacter, alpha: int) -> CyclicCharacter:
    """mu composed with the coroot of root index ``alpha``."""
    return mu.on_cocharacter(mu.datum.coroots[alpha])


def weyl_act(w: WeylElement, mu: TorusCharacter) -> TorusCharacter:
    """(w.mu)(lam (x) u) = mu(w^{-1} lam (x) u)."""
    act = _reflector(mu.datum, mu.units.order)
    c = mu.values
    # row vector c -> c w^{-1} = c s_ik ... s_i1
    for i in reversed(w.word):
        c = act(i, c)
    return TorusCharacter(mu.datum, mu.units, c)


def kernel_subsystem(mu: TorusCharacter) -> frozenset[int]:
    n = mu.units.order
    return frozenset(k for k, av in enumerate(mu.datum.coroots) if dot(mu.values, av) % n == 0)


def is_w_invariant(mu: TorusCharacter) -> bool:
    act = _reflector(mu.datum, mu.units.order)
    return all(act(i, mu.values) == mu.values for i in range(mu.datum.semisimple_rank))


def trivial_on(mu: TorusCharacter, lattice: Lattice) -> bool:
    n = mu.units.order
    return all(dot(mu.values, b) % n == 0 for b in lattice.basis)


# ---------------------------------------------------------------------------
# Rational characters and easy decompositions

def w_invariant_rational_characters(datum: RootDatum, subset: Iterable[int] | None = None) -> Lattice:
    """Basis of X^{W_L}: characters pairing to zero with every coroot of the Levi."""
    subset = range(datum.semisimple_rank) if subset is None else sorted(set(subset))
    rows = [datum.simple_coroot(i) for i in subset]
    lat = Lattice.span(right_kernel(rows, datum.rank), datum.rank)
    qv_rank = rank(rows, datum.rank) if rows else 0
    assert lat.rank == datum.rank - qv_rank
    assert lat.rank == datum.rank - datum.saturated_coroot_lattice(subset).rank
    return lat


@dataclass(frozen=True)
class EasyFactor:
    rational_character: tuple[int, ...]
    character: CyclicCharacter

    def to_dict(self) -> dict:
        return {"rational_character": list(self.rational_character), "exponent": str(self.character.exponent)}


def easy_decomposition(mu: TorusCharacter, subset: Iterable[int] | None = None) -> list[EasyFactor]:
    """Write mu as a product of chi_j o eta_j with eta_j a basis of X^{W_L}."""
    datum = mu.datum
    etas = w_invariant_rational_characters(datum, subset).basis
    if not etas:
        if not mu.is_trivial():
            raise NotEasyError("character is nontrivial but the Levi has no rational characters")
        return []
    dual = []
    k = len(etas)
    cols = [[eta[p] for eta in etas] for p in range(datum.rank)]
    for j in range(k):
        lam = solve_left(cols, tuple(int(i == j) for i in range(k)))
        assert lam is not None, "X^{W_L} is saturated, so a dual family exists"
        dual.append(lam)
    n = mu.units.order
    coeffs = [dot(mu.values, lam) % n for lam in dual]
    recomposed = tuple(sum(a * eta[p] for a, eta in zip(coeffs, etas)) % n for p in range(datum.rank))
    if recomposed != mu.values:
        raise NotEasyError("character is not trivial on the saturated coroot lattice of the Levi")
    return [EasyFactor(eta, CyclicCharacter(mu.units, a)) for eta, a in zip(etas, coeffs)]


def recompose(datum: RootDatum, units: TruncatedUnits, factors: Sequence[EasyFactor]) -> TorusCharacter:
    vals = [0] * datum.rank
    for f in factors:
        for p, x in enumerate(f.rational_character):
            vals[p] += f.character.value * x
    return TorusCharacter(datum, units, tuple(vals))


# ---------------------------------------------------------------------------
# Classification

@dataclass
class ClassificationReport:
    group: str
    p: int
    level: int
    exponents: tuple[Fraction, ...]
    conductors: tuple[int, ...]
    kernel_subsystem: tuple[int, ...]
    w_invariant: bool
    squares_trivial: bool
    fixed_simple: tuple[int, ...]
    orbit_size: int
    stabilizer_order: int
    weyl_order: int
    parabolic: bool
    strongly_parabolic: bool
    easy: bool
    easy_for_group: bool
    extendable: bool
    levi_subset: tuple[int, ...] | None
    decomposition: list[EasyFactor] | None
    warnings: list[str] = field(default_factory=list)

    def check_implications(self) -> list[str]:
        """Names of violated implications (empty when all hold)."""
        bad = []
        if self.easy_for_group and not self.extendable:
            bad.append("easy_for_group => extendable")
        if self.extendable and not self.w_invariant:
            bad.append("extendable => w_invariant")
        if self.w_invariant and not self.squares_trivial:
            bad.append("w_invariant => squares_trivial")
        if self.easy and not self.strongly_parabolic:
            bad.append("easy => strongly_parabolic")
        if self.strongly_parabolic and not self.parabolic:
            bad.append("strongly_parabolic => parabolic")
        return bad

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "p": self.p,
            "level": self.level,
            "exponents": [str(e) for e in self.exponents],
            "conductors": list(self.conductors),
            "kernel_subsystem": list(self.kernel_subsystem),
            "w_invariant": self.w_invariant,
            "squares_trivial": self.squares_trivial,
            "fixed_simple": list(self.fixed_simple),
            "orbit_size": self.orbit_size,
            "stabilizer_order": self.stabilizer_order,
            "weyl_order": self.weyl_order,
            "parabolic": self.parabolic,
            "strongly_parabolic": self.strongly_parabolic,
            "easy": self.easy,
            "easy_for_group": self.easy_for_group,
            "extendable": self.extendable,
            "levi_subset": None if self.levi_subset is None else list(self.levi_subset),
            "easy_decomposition": None if self.decomposition is None else [f.to_dict() for f in self.decomposition],
            "warnings": list(self.warnings),
        }


def classify(mu: TorusCharacter, cap: int = DEFAULT_ORBIT_CAP) -> ClassificationReport:
    datum, units = mu.datum, mu.units
    n = units.order
    restr = [dot(mu.values, av) % n for av in datum.coroots]
    conds = tuple(_conductor_of(t, units) for t in restr)
    kernel = frozenset(k for k, t in enumerate(restr) if t == 0)
    squares = all(2 * t % n == 0 for t in restr)

    act = _reflector(datum, n)
    stab = stabilizer_is_standard_parabolic(datum, mu.values, act, cap)
    w_inv = stab.orbit_size == 1
    extendable = w_inv and len(kernel) == datum.n_roots
    easy_G = trivial_on(mu, datum.saturated_coroot_lattice())

    warnings = []
    if units.p in datum.excluded_primes:
        warnings.append(f"p = {units.p} is an excluded prime for {datum.name}")

    strongly = easy = False
    levi = decomposition = None
    if stab.parabolic:
        levi = stab.fixed_simple
        strongly = levi_roots(datum, levi) <= kernel
        easy = trivial_on(mu, datum.saturated_coroot_lattice(levi))
        if easy:
            decomposition = easy_decomposition(mu, levi)
            assert recompose(datum, units, decomposition).values == mu.values

    report = ClassificationReport(
        group=datum.name, p=units.p, level=units.m, exponents=mu.exponents,
        conductors=conds, kernel_subsystem=tuple(sorted(kernel)), w_invariant=w_inv,
        squares_trivial=squares, fixed_simple=stab.fixed_simple, orbit_size=stab.orbit_size,
        stabilizer_order=stab.stabilizer_order, weyl_order=stab.group_order,
        parabolic=stab.parabolic, strongly_parabolic=strongly, easy=easy,
        easy_for_group=easy_G, extendable=extendable, levi_subset=levi,
        decomposition=decomposition, warnings=warnings,
    )
    violated = report.check_implications()
    assert not violated, f"implication chain violated: {violated}"
    return report


# ---------------------------------------------------------------------------
# Conjugacy-relaxed test (experimental)

@dataclass(frozen=True)
class RelaxedParabolicResult:
    parabolic_up_to_conjugacy: bool
    reflection_roots: tuple[int, ...]
    word: tuple[int, ...] | None
    levi_subset: tuple[int, ...] | None
    conjugate: TorusCharacter | None


def reflection_fixed_roots(mu: TorusCharacter) -> frozenset[int]:
    """Roots alpha whose reflection fixes mu: <alpha^vee, mu> alpha = 0."""
    n = mu.units.order
    out = set()
    for k in range(mu.datum.n_roots):
        t = dot(mu.values, mu.datum.coroots[k]) % n
        if all(t * x % n == 0 for x in mu.datum.roots[k]):
            out.add(k)
    return frozenset(out)


def parabolic_up_to_conjugacy(mu: TorusCharacter, cap: int = DEFAULT_ORBIT_CAP) -> RelaxedParabolicResult:
    """Is Stab_W(mu) conjugate to a standard parabolic subgroup?

    When it is, returns simple reflections (applied in order) moving mu to a
    character whose stabilizer is W_S with S the returned subset.
    """
    datum = mu.datum
    R = reflection_fixed_roots(mu)
    orb = orbit(mu.values, _reflector(datum, mu.units.order), list(range(datum.semisimple_rank)), cap)
    if len(orb) * reflection_subgroup_order(datum, R) != group_order(datum):
        return RelaxedParabolicResult(False, tuple(sorted(R)), None, None, None)
    found = conjugate_to_standard(datum, R)
    if found is None:
        return RelaxedParabolicResult(False, tuple(sorted(R)), None, None, None)
    applied, S = found
    nu = mu
    for i in applied:
        nu = nu.reflect(i)
    return RelaxedParabolicResult(True, tuple(sorted(R)), applied, S, nu)


# ---------------------------------------------------------------------------
# Sampling and input

def random_character(datum: RootDatum, units: TruncatedUnits, rng: random.Random,
                     mode: str = "uniform") -> TorusCharacter:
    """Uniform exponents, or (``structured``) a Levi-easy character times a random 2-torsion twist.

    The structured mode reaches parabolic characters with nontrivial Levi
    subgroups, which uniform sampling almost never produces.
    """
    n = units.order
    if mode == "uniform":
        return TorusCharacter(datum, units, tuple(rng.randrange(n) for _ in range(datum.rank)))
    if mode != "structured":
        raise InputError(f"unknown sampling mode {mode!r}")
    subset = [i for i in range(datum.semisimple_rank) if rng.random() < 0.5]
    vals = [0] * datum.rank
    for eta in w_invariant_rational_characters(datum, subset).basis:
        a = rng.randrange(n)
        for p, x in enumerate(eta):
            vals[p] += a * x
    if rng.random() < 0.5:
        for p in range(datum.rank):
            vals[p] += (n // 2) * rng.randrange(2)
    return TorusCharacter(datum, units, tuple(vals))


def parse_character(obj: dict) -> TorusCharacter:
    """Read {"group", "n", "p", "level", "exponents"} into a character."""
    if not isinstance(obj, dict):
        raise InputError("character input must be a JSON object")
    for key in ("group", "p", "level", "exponents"):
        if key not in obj:
            raise InputError(f"character input is missing {key!r}")
    datum = catalog_lookup(obj["group"], obj.get("n"))
    units = truncated_units(obj["p"], obj["level"])
    exps = obj["exponents"]
    if not isinstance(exps, list):
        raise InputError("exponents must be a list")
    return TorusCharacter.from_exponents(datum, units, exps)


__all__ = [
    "TruncatedUnits", "truncated_units", "CyclicCharacter", "TorusCharacter", "conductor",
    "restrict_along_coroot", "weyl_act", "kernel_subsystem", "is_w_invariant", "classify",
    "ClassificationReport", "easy_decomposition", "EasyFactor", "recompose",
    "w_invariant_rational_characters", "parabolic_up_to_conjugacy", "reflection_fixed_roots",
    "random_character", "parse_character",
]
