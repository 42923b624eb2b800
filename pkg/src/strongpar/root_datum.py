"""Split root data with X and X^vee both realized as Z^r and a group catalog.

Coordinates: a root is a vector in X = Z^r, a coroot a vector in X^vee = Z^r,
and the pairing is the dot product. Every datum is generated from its simple
roots and coroots by closing under simple reflections, which fixes the root
order: positive roots by height, then the negatives in matching order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CatalogError, InputError
from .lattice import Lattice, Vector, dot, quotient_structure, saturation, solve_left

CLASSICAL_CAP = 12
EXCEPTIONAL_RANK_CAP = 8


# ---------------------------------------------------------------------------
# Cartan matrices, A[i][j] = <alpha_i^vee, alpha_j>, Bourbaki numbering.

def cartan_matrix(letter: str, n: int) -> list[list[int]]:
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        A[i][j], A[j][i] = aij, aji

    if letter == "A":
        for i in range(n - 1):
            bond(i, i + 1)
    elif letter in ("B", "C"):
        for i in range(n - 2):
            bond(i, i + 1)
        if n >= 2:
            # B: last node short, C: last node long
            if letter == "B":
                bond(n - 1, n - 2, -2, -1)
            else:
                bond(n - 1, n - 2, -1, -2)
    elif letter == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        if n >= 3:
            bond(n - 1, n - 3)
    elif letter == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]:
            if j < n:
                bond(i, j)
    elif letter == "F":
        bond(0, 1)
        bond(2, 1, -2, -1)
        bond(2, 3)
    elif letter == "G":
        bond(0, 1, -3, -1)
    else:
        raise CatalogError(f"unknown Cartan type {letter}{n}")
    return A


_DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: [2 * k for k in range(1, n + 1)],
    "C": lambda n: [2 * k for k in range(1, n + 1)],
    "D": lambda n: [2 * k for k in range(1, n)] + [n],
    "E": lambda n: {6: [2, 5, 6, 8, 9, 12], 7: [2, 6, 8, 10, 12, 14, 18],
                    8: [2, 8, 12, 14, 18, 20, 24, 30]}[n],
    "F": lambda n: [2, 6, 8, 12],
    "G": lambda n: [2, 6],
}


def weyl_degrees(letter: str, n: int) -> list[int]:
    return _DEGREES[letter](n)


def classify_diagram(A: Sequence[Sequence[int]], nodes: Iterable[int] | None = None) -> list[tuple[str, int, tuple[int, ...]]]:
    """Connected components of the Dynkin diagram on ``nodes`` with their types.

    B2 is reported as C2. Returns ``(letter, rank, nodes)`` triples sorted by
    smallest node.
    """
    nodes = sorted(range(len(A)) if nodes is None else nodes)
    pending = set(nodes)
    comps = []
    while pending:
        start = min(pending)
        stack, comp = [start], {start}
        pending.discard(start)
        while stack:
            u = stack.pop()
            for v in list(pending):
                if A[u][v] != 0:
                    pending.discard(v)
                    comp.add(v)
                    stack.append(v)
        comps.append(tuple(sorted(comp)))

    out = []
    for comp in comps:
        out.append((*_component_type(A, comp), comp))
    return sorted(out, key=lambda t: t[2][0])


def _component_type(A, comp) -> tuple[str, int]:
    k = len(comp)
    if k == 1:
        return "A", 1
    nbrs = {u: [v for v in comp if v != u and A[u][v] != 0] for u in comp}
    bonds = {(u, v): A[u][v] * A[v][u] for u in comp for v in nbrs[u]}
    if 3 in bonds.values():
        return "G", 2
    branch = [u for u in comp if len(nbrs[u]) == 3]
    if branch:
        b = branch[0]
        arms = []
        for start in nbrs[b]:
            length, prev, cur = 1, b, start
            while True:
                nxt = [v for v in nbrs[cur] if v != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return "D", k
        return "E", k
    doubles = [(u, v) for (u, v), m in bonds.items() if m == 2]
    if doubles:
        if k == 2:
            return "C", 2
        ends = [u for u in comp if len(nbrs[u]) == 1]
        for u, v in doubles:
            if u in ends:
                # |<alpha_u^vee, alpha_v>| = 2 means alpha_u is short
                return ("B" if A[u][v] == -2 else "C"), k
        return "F", 4
    return "A", k


_EXCLUDED = {"A": frozenset(), "B": frozenset({2}), "C": frozenset({2}), "D": frozenset({2}),
             "F": frozenset({2, 3}), "G": frozenset({2, 3}), "E": None}


def excluded_primes_for(types: Iterable[tuple[str, int]]) -> frozenset[int]:
    out: set[int] = set()
    for letter, n in types:
        if letter == "E":
            out |= {2, 3, 5} if n == 8 else {2, 3}
        else:
            out |= _EXCLUDED[letter]
    return frozenset(out)


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootDatum:
    """Reduced split root datum; ``coroots[k]`` is the coroot of ``roots[k]``.

    The first ``len(simple)`` roots are the simple roots in Bourbaki order,
    roots ``[0, n_positive)`` are positive and ``roots[k + n_positive]`` is
    ``-roots[k]``.
    """

    rank: int
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    simple: tuple[int, ...]
    coefficients: tuple[Vector, ...] = field(repr=False)
    name: str = field(default="", compare=False)
    excluded_primes: frozenset[int] = field(default=frozenset(), compare=False)

    # -- construction -------------------------------------------------------
    @classmethod
    def from_simple(cls, rank: int, simple_roots: Sequence[Sequence[int]],
                    simple_coroots: Sequence[Sequence[int]], name: str = "",
                    excluded_primes: frozenset[int] | None = None) -> "RootDatum":
        sr = [tuple(a) for a in simple_roots]
        sc = [tuple(a) for a in simple_coroots]
        l = len(sr)
        if len(sc) != l or any(len(v) != rank for v in sr + sc):
            raise InputError("simple roots/coroots have inconsistent shapes")
        for a, av in zip(sr, sc):
            if dot(a, av) != 2:
                raise InputError(f"<{av}, {a}> != 2")
        unit = [tuple(int(i == j) for j in range(l)) for i in range(l)]
        found: dict[Vector, tuple[Vector, Vector]] = {}
        frontier = []
        for a, av, c in zip(sr, sc, unit):
            found[a] = (av, c)
            frontier.append(a)
        while frontier:
            nxt = []
            for b in frontier:
                bv, c = found[b]
                for i in range(l):
                    k = dot(sc[i], b)
                    if k == 0:
                        continue
                    b2 = tuple(x - k * y for x, y in zip(b, sr[i]))
                    if b2 in found:
                        continue
                    kv = dot(bv, sr[i])
                    bv2 = tuple(x - kv * y for x, y in zip(bv, sc[i]))
                    c2 = tuple(x - k * (j == i) for j, x in enumerate(c))
                    found[b2] = (bv2, c2)
                    nxt.append(b2)
            frontier = nxt
        pos = []
        for b, (bv, c) in found.items():
            if all(x >= 0 for x in c):
                pos.append((sum(c), tuple(-x for x in c), b))
            elif not all(x <= 0 for x in c):
                raise InputError(f"root {b} is neither positive nor negative")
        pos.sort()
        proots = [b for _, _, b in pos]
        roots = proots + [tuple(-x for x in b) for b in proots]
        coroots = [found[b][0] for b in roots]
        coeffs = [found[b][1] for b in roots]
        rootset = set(roots)
        for b in roots:
            if tuple(2 * x for x in b) in rootset:
                raise InputError("non-reduced root system")
        if excluded_primes is None:
            A = [[dot(sc[i], sr[j]) for j in range(l)] for i in range(l)]
            excluded_primes = excluded_primes_for((t, n) for t, n, _ in classify_diagram(A))
        return cls(rank, tuple(roots), tuple(coroots), tuple(range(l)), tuple(coeffs),
                   name, excluded_primes)

    # -- basic structure ------------------------------------------------------
    @property
    def n_roots(self) -> int:
        return len(self.roots)

    @property
    def n_positive(self) -> int:
        return len(self.roots) // 2

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple)

    @cached_property
    def index(self) -> dict[Vector, int]:
        return {b: k for k, b in enumerate(self.roots)}

    def neg(self, k: int) -> int:
        n = self.n_positive
        return k + n if k < n else k - n

    def is_positive(self, k: int) -> bool:
        return k < self.n_positive

    def simple_root(self, i: int) -> Vector:
        return self.roots[self.simple[i]]

    def simple_coroot(self, i: int) -> Vector:
        return self.coroots[self.simple[i]]

    def cartan(self) -> list[list[int]]:
        l = self.semisimple_rank
        return [[dot(self.simple_coroot(i), self.simple_root(j)) for j in range(l)] for i in range(l)]

    @cached_property
    def reflection_table(self) -> tuple[tuple[int, ...], ...]:
        """``reflection_table[i][k]`` is the index of s_i(roots[k])."""
        table = []
        for i in range(self.semisimple_rank):
            a, av = self.simple_root(i), self.simple_coroot(i)
            row = []
            for b in self.roots:
                k = dot(av, b)
                row.append(self.index[tuple(x - k * y for x, y in zip(b, a))])
            table.append(tuple(row))
        return tuple(table)

    @cached_property
    def sum_table(self) -> tuple[tuple[int, int, int], ...]:
        """All (a, b, c) with roots[a] + roots[b] = roots[c]."""
        out = []
        for a, ra in enumerate(self.roots):
            for b, rb in enumerate(self.roots):
                c = self.index.get(tuple(x + y for x, y in zip(ra, rb)))
                if c is not None:
                    out.append((a, b, c))
        return tuple(out)

    def components(self) -> list[tuple[str, int, tuple[int, ...]]]:
        return classify_diagram(self.cartan())

    def support(self, k: int) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.coefficients[k]) if c)

    # -- lattices -------------------------------------------------------------
    @cached_property
    def X(self) -> Lattice:
        return Lattice.full(self.rank)

    @cached_property
    def Xv(self) -> Lattice:
        return Lattice.full(self.rank)

    @cached_property
    def Q(self) -> Lattice:
        return Lattice.span([self.simple_root(i) for i in range(self.semisimple_rank)], self.rank)

    @cached_property
    def Qv(self) -> Lattice:
        return Lattice.span([self.simple_coroot(i) for i in range(self.semisimple_rank)], self.rank)

    def coroot_lattice(self, subset: Iterable[int] | None = None) -> Lattice:
        idx = range(self.semisimple_rank) if subset is None else sorted(subset)
        return Lattice.span([self.simple_coroot(i) for i in idx], self.rank)

    def saturated_coroot_lattice(self, subset: Iterable[int] | None = None) -> Lattice:
        return saturation(self.coroot_lattice(subset), self.Xv)

    # -- serialization --------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "basis": "X = X^vee = Z^r with dual standard bases; pairing = dot product",
            "simple_indices": list(self.simple),
            "roots": [list(b) for b in self.roots],
            "coroots": [list(b) for b in self.coroots],
            "simple_coefficients": [list(c) for c in self.coefficients],
            "cartan": self.cartan(),
            "components": [f"{t}{n}" for t, n, _ in self.components()],
            "excluded_primes": sorted(self.excluded_primes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Catalog

def _e(r: int, *pairs: tuple[int, int]) -> tuple[int, ...]:
    v = [0] * r
    for i, c in pairs:
        v[i] += c
    return tuple(v)


def _simply_connected(letter: str, n: int, name: str) -> RootDatum:
    A = cartan_matrix(letter, n)
    roots = [tuple(A[i][j] for i in range(n)) for j in range(n)]
    coroots = [_e(n, (i, 1)) for i in range(n)]
    return RootDatum.from_simple(n, roots, coroots, name)


def _adjoint(letter: str, n: int, name: str) -> RootDatum:
    A = cartan_matrix(letter, n)
    roots = [_e(n, (j, 1)) for j in range(n)]
    coroots = [tuple(A[i][j] for j in range(n)) for i in range(n)]
    return RootDatum.from_simple(n, roots, coroots, name)


def _gl(N: int) -> RootDatum:
    sr = [_e(N, (i, 1), (i + 1, -1)) for i in range(N - 1)]
    return RootDatum.from_simple(N, sr, sr, f"GL{N}")


def _sp(n: int) -> RootDatum:
    sr = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 2))]
    sc = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 1))]
    return RootDatum.from_simple(n, sr, sc, f"Sp{2 * n}")


def _gsp(n: int) -> RootDatum:
    # coordinates e_1..e_n, then the similitude e_0 last
    r = n + 1
    sr = [_e(r, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(r, (n - 1, 2), (n, -1))]
    sc = [_e(r, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(r, (n - 1, 1))]
    return RootDatum.from_simple(r, sr, sc, f"GSp{2 * n}")


def _so(N: int) -> RootDatum:
    n = N // 2
    if N % 2:
        sr = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 1))]
        sc = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 2))]
    elif n == 1:
        sr = sc = []
    else:
        sr = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 2, 1), (n - 1, 1))]
        sc = sr
    return RootDatum.from_simple(n, sr, sc, f"SO{N}")


def _go(N: int) -> RootDatum:
    n = N // 2
    r = n + 1
    if N % 2:
        # GO_{2n+1} = SO_{2n+1} x GL_1
        sr = [_e(r, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(r, (n - 1, 1))]
        sc = [_e(r, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(r, (n - 1, 2))]
    elif n == 1:
        sr = sc = []
    else:
        sr = [_e(r, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(r, (n - 2, 1), (n - 1, 1), (n, -1))]
        sc = [_e(r, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(r, (n - 2, 1), (n - 1, 1))]
    return RootDatum.from_simple(r, sr, sc, f"GO{N}")


_ALIASES = {
    "GL": "GL", "SL": "SL", "PGL": "PGL",
    "SP": "Sp", "GSP": "GSp", "PSP": "PSp", "SP/Z": "PSp",
    "SO": "SO", "SPIN": "Spin", "GO": "GO", "GSO": "GO", "PSO": "PSO", "SO/Z": "PSO",
    "E": "E", "E/Z": "E/Z", "F": "F", "G": "G",
    "E6": "E", "E7": "E", "E8": "E", "E6/Z": "E/Z", "E7/Z": "E/Z", "F4": "F", "G2": "G",
}

FAMILIES = ("GL", "SL", "PGL", "Sp", "GSp", "PSp", "SO", "Spin", "GO", "PSO", "E", "E/Z", "F", "G")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise CatalogError(msg)


def catalog_lookup(name: str, size: int | None = None) -> RootDatum:
    """Root datum of a named split reductive group.

    ``size`` is the subscript in the group's usual name: ("SL", 2) is SL_2,
    ("Sp", 4) is Sp_4, ("SO", 7) is SO_7, ("E", 8) is E_8. For exceptional
    labels carrying their rank ("E6", "F4", "G2") it may be omitted.
    """
    key = name.strip().upper().replace("_", "")
    if key not in _ALIASES:
        raise CatalogError(f"unknown group label {name!r}")
    fam = _ALIASES[key]
    if size is None and any(ch.isdigit() for ch in key):
        size = int("".join(ch for ch in key if ch.isdigit()))
    _require(isinstance(size, int) and not isinstance(size, bool), f"{name}: integer size parameter required")
    _require(size >= 1, f"{name}: size must be positive, got {size}")

    if fam in ("GL", "SL", "PGL"):
        _require(size <= CLASSICAL_CAP, f"{fam}_{size} exceeds the classical cap N <= {CLASSICAL_CAP}")
        if fam == "GL":
            return _gl(size)
        _require(size >= 2, f"{fam}_{size}: need N >= 2")
        if fam == "SL":
            return _simply_connected("A", size - 1, f"SL{size}")
        return _adjoint("A", size - 1, f"PGL{size}")
    if fam in ("Sp", "GSp", "PSp", "PSO"):
        _require(size % 2 == 0, f"{fam}_{size}: size must be even (2N)")
        n = size // 2
        _require(n <= CLASSICAL_CAP, f"{fam}_{size} exceeds the classical cap N <= {CLASSICAL_CAP}")
        if fam == "Sp":
            return _sp(n)
        if fam == "GSp":
            return _gsp(n)
        if fam == "PSp":
            return _adjoint("C", n, f"PSp{size}")
        _require(n >= 2, f"SO_{size}/Z: need 2N >= 4")
        return _adjoint("D", n, f"PSO{size}")
    if fam in ("SO", "Spin", "GO"):
        _require(size <= 2 * CLASSICAL_CAP + 1, f"{fam}_{size} exceeds the classical cap")
        if fam == "SO":
            _require(size >= 2, "SO_N: need N >= 2")
            return _so(size)
        if fam == "GO":
            _require(size >= 2, "GO_N: need N >= 2")
            return _go(size)
        _require(size >= 3, "Spin_N: need N >= 3")
        n = size // 2
        return _simply_connected("B" if size % 2 else "D", n, f"Spin{size}")
    if fam == "E":
        _require(size in (6, 7, 8), "E_n: n must be 6, 7 or 8")
        return _simply_connected("E", size, f"E{size}")
    if fam == "E/Z":
        _require(size in (6, 7, 8), "E_n/Z: n must be 6, 7 or 8")
        return _adjoint("E", size, f"E{size}/Z")
    if fam == "F":
        _require(size == 4, "F: only F4")
        return _simply_connected("F", 4, "F4")
    _require(size == 2, "G: only G2")
    return _simply_connected("G", 2, "G2")


# ---------------------------------------------------------------------------
# Derived structure

def levi_subdatum(datum: RootDatum, subset: Iterable[int]) -> RootDatum:
    """Levi root datum on the same lattices spanned by the chosen simple roots."""
    subset = sorted(set(subset))
    for i in subset:
        if not 0 <= i < datum.semisimple_rank:
            raise InputError(f"{i} is not a simple index of {datum.name}")
    return RootDatum.from_simple(
        datum.rank,
        [datum.simple_root(i) for i in subset],
        [datum.simple_coroot(i) for i in subset],
        name=f"{datum.name}[{','.join(map(str, subset))}]",
        excluded_primes=datum.excluded_primes,
    )


def levi_roots(datum: RootDatum, subset: Iterable[int]) -> frozenset[int]:
    """Indices of roots of ``datum`` whose simple-root support lies in ``subset``."""
    s = frozenset(subset)
    return frozenset(k for k in range(datum.n_roots) if datum.support(k) <= s)


def lambda_minus_w_lambda_lattice(datum: RootDatum) -> Lattice:
    """Span of lambda - w(lambda), reduced to <lambda, alpha_i> alpha_i^vee over a basis of X^vee."""
    gens = []
    for i in range(datum.semisimple_rank):
        a, av = datum.simple_root(i), datum.simple_coroot(i)
        for k in range(datum.rank):
            if a[k]:
                gens.append(tuple(a[k] * x for x in av))
    return Lattice.span(gens, datum.rank)


@dataclass(frozen=True)
class StructuralPredicates:
    simply_laced: bool
    X_mod_Q_free: bool
    Xv_mod_Qv_free: bool
    no_A1_or_Cn_factor: bool
    condition_i_prime: bool
    X_mod_Q: tuple[int, ...]
    Xv_mod_Qv: tuple[int, ...]
    components: tuple[str, ...]
    witnesses: tuple[Vector | None, ...]

    @property
    def parabolic_forces_strong(self) -> bool:
        return self.X_mod_Q_free or self.no_A1_or_Cn_factor

    def to_dict(self) -> dict:
        return {
            "simply_laced": self.simply_laced,
            "X_mod_Q_free": self.X_mod_Q_free,
            "Xv_mod_Qv_free": self.Xv_mod_Qv_free,
            "no_A1_or_Cn_factor": self.no_A1_or_Cn_factor,
            "condition_i_prime": self.condition_i_prime,
            "X_mod_Q": list(self.X_mod_Q),
            "Xv_mod_Qv": list(self.Xv_mod_Qv),
            "components": list(self.components),
        }


def structural_predicates(datum: RootDatum) -> StructuralPredicates:
    comps = datum.components()
    xq = quotient_structure(datum.Q, datum.X)
    xvqv = quotient_structure(datum.Qv, datum.Xv)
    # lambda_i with <lambda_i, alpha_i> = 1: solve x @ [alpha_i as a column] = 1
    witnesses = []
    for i in range(datum.semisimple_rank):
        col = [[x] for x in datum.simple_root(i)]
        witnesses.append(solve_left(col, (1,)))
    return StructuralPredicates(
        simply_laced=all(t in "ADE" for t, _, _ in comps),
        X_mod_Q_free=xq.torsion_free,
        Xv_mod_Qv_free=xvqv.torsion_free,
        no_A1_or_Cn_factor=not any((t == "A" and n == 1) or t == "C" for t, n, _ in comps),
        condition_i_prime=all(w is not None for w in witnesses),
        X_mod_Q=xq.divisors,
        Xv_mod_Qv=xvqv.divisors,
        components=tuple(f"{t}{n}" for t, n, _ in comps),
        witnesses=tuple(witnesses),
    )
