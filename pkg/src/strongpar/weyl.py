"""Weyl groups as integer matrices on X^vee, orbits, and parabolic-stabilizer tests."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import prod
from typing import Callable, Hashable, Iterable, Sequence

from .errors import CapExceeded, InputError
from .lattice import dot, right_kernel
from .root_datum import RootDatum, classify_diagram, levi_roots, weyl_degrees

DEFAULT_ORBIT_CAP = 10 ** 7

Matrix = tuple[tuple[int, ...], ...]


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    n = len(B[0]) if B else 0
    return tuple(tuple(sum(a * B[k][j] for k, a in enumerate(row)) for j in range(n)) for row in A)


def _identity(r: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


@dataclass(frozen=True)
class WeylElement:
    """Element of W: ``matrix`` acts on column vectors of X^vee.

    ``word`` lists simple indices with ``w = s_word[0] s_word[1] ...``.
    """

    matrix: Matrix
    word: tuple[int, ...] = ()

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(_matmul(self.matrix, other.matrix), self.word + other.word)

    def on_coweight(self, lam: Sequence[int]) -> tuple[int, ...]:
        return tuple(dot(row, lam) for row in self.matrix)

    def on_weight(self, chi: Sequence[int], datum: RootDatum) -> tuple[int, ...]:
        """Contragredient action on X, computed from the word."""
        v = tuple(chi)
        for i in reversed(self.word):
            a, av = datum.simple_root(i), datum.simple_coroot(i)
            k = dot(av, v)
            v = tuple(x - k * y for x, y in zip(v, a))
        return v

    def inverse(self, datum: RootDatum) -> "WeylElement":
        # simple reflections are involutions
        return from_word(datum, reversed(self.word))

    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1


def simple_reflection(datum: RootDatum, i: int) -> WeylElement:
    """s_i on X^vee: lambda -> lambda - <lambda, alpha_i> alpha_i^vee."""
    if not 0 <= i < datum.semisimple_rank:
        raise InputError(f"{i} is not a simple index of {datum.name}")
    a, av = datum.simple_root(i), datum.simple_coroot(i)
    r = datum.rank
    M = tuple(tuple(int(p == q) - av[p] * a[q] for q in range(r)) for p in range(r))
    return WeylElement(M, (i,))


def from_word(datum: RootDatum, word: Iterable[int]) -> WeylElement:
    w = WeylElement(_identity(datum.rank), ())
    for i in word:
        w = w * simple_reflection(datum, i)
    return w


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParabolicSubgroupDescriptor:
    subset: tuple[int, ...]
    order: int
    types: tuple[str, ...]


def _order_of_types(types) -> int:
    return prod(prod(weyl_degrees(t, n)) for t, n, _ in types)


def parabolic_descriptor(datum: RootDatum, subset: Iterable[int]) -> ParabolicSubgroupDescriptor:
    subset = tuple(sorted(set(subset)))
    types = classify_diagram(datum.cartan(), subset)
    return ParabolicSubgroupDescriptor(subset, _order_of_types(types), tuple(f"{t}{n}" for t, n, _ in types))


def group_order(obj: RootDatum | ParabolicSubgroupDescriptor) -> int:
    if isinstance(obj, ParabolicSubgroupDescriptor):
        return obj.order
    return _order_of_types(obj.components())


@dataclass
class Orbit:
    """Orbit with a witness word per element (generators applied left to right)."""

    elements: dict
    seed: Hashable

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def transversal(self) -> list[tuple[Hashable, tuple[int, ...]]]:
        return list(self.elements.items())


def orbit(seed: Hashable, action: Callable[[int, Hashable], Hashable], generators: Sequence[int],
          cap: int = DEFAULT_ORBIT_CAP) -> Orbit:
    """Breadth-first closure of ``seed`` under ``action(i, x)`` for i in ``generators``."""
    seen = {seed: ()}
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        wx = seen[x]
        for i in generators:
            y = action(i, x)
            if y not in seen:
                seen[y] = wx + (i,)
                if len(seen) > cap:
                    raise CapExceeded(f"orbit exceeds cap of {cap} elements")
                queue.append(y)
    return Orbit(seen, seed)


@dataclass(frozen=True)
class StabilizerInfo:
    parabolic: bool
    fixed_simple: tuple[int, ...]
    orbit_size: int
    group_order: int
    descriptor: ParabolicSubgroupDescriptor

    @property
    def stabilizer_order(self) -> int:
        return self.group_order // self.orbit_size


def stabilizer_is_standard_parabolic(datum: RootDatum, seed: Hashable,
                                     action: Callable[[int, Hashable], Hashable],
                                     cap: int = DEFAULT_ORBIT_CAP) -> StabilizerInfo:
    """Decide whether Stab_W(seed) is generated by simple reflections.

    With S' the simple reflections fixing ``seed``, W_{S'} <= Stab always
    holds, so the stabilizer equals W_{S'} exactly when
    |orbit| * |W_{S'}| = |W|.
    """
    gens = range(datum.semisimple_rank)
    fixed = tuple(i for i in gens if action(i, seed) == seed)
    orb = orbit(seed, action, list(gens), cap)
    desc = parabolic_descriptor(datum, fixed)
    W = group_order(datum)
    return StabilizerInfo(len(orb) * desc.order == W, fixed, len(orb), W, desc)


# ---------------------------------------------------------------------------
# Conjugacy-relaxed test (experimental; not used by the default classification)

def simple_system(datum: RootDatum, roots: Iterable[int]) -> tuple[int, ...]:
    """Simple roots of the subsystem ``roots`` w.r.t. its intersection with Delta^+.

    A positive root of the subsystem is simple exactly when its reflection
    sends no other positive subsystem root to a negative one.
    """
    R = set(roots)
    pos = [k for k in R if datum.is_positive(k)]
    out = []
    for k in pos:
        a, av = datum.roots[k], datum.coroots[k]
        flips = 0
        for j in pos:
            b = datum.roots[j]
            c = dot(av, b)
            img = datum.index[tuple(x - c * y for x, y in zip(b, a))]
            if not datum.is_positive(img):
                flips += 1
        if flips == 1:
            out.append(k)
    return tuple(sorted(out))


def reflection_subgroup_order(datum: RootDatum, roots: Iterable[int]) -> int:
    simple = simple_system(datum, roots)
    A = [[dot(datum.coroots[i], datum.roots[j]) for j in simple] for i in simple]
    return _order_of_types(classify_diagram(A))


def conjugate_to_standard(datum: RootDatum, roots: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Find simple reflections s_{i_1}, ..., s_{i_k} (applied in that order) and a
    simple subset S carrying ``roots`` onto the standard Levi roots of S.

    Returns None when ``roots`` is not the root set of a Levi subsystem.
    """
    R = frozenset(roots)
    rows = [datum.roots[k] for k in R]
    kernel = right_kernel(rows, datum.rank)
    others = [k for k in range(datum.n_roots) if k not in R]
    x = None
    for base in range(len(others) + 3, 10 ** 6, 7):
        cand = [sum(base ** j * kv[p] for j, kv in enumerate(kernel)) for p in range(datum.rank)]
        if all(dot(datum.roots[k], cand) != 0 for k in others):
            x = cand
            break
        if not kernel:
            break
    if x is None:
        return None
    applied = []
    moved = True
    while moved:
        moved = False
        for i in range(datum.semisimple_rank):
            c = dot(datum.simple_root(i), x)
            if c < 0:
                av = datum.simple_coroot(i)
                x = [a - c * b for a, b in zip(x, av)]
                applied.append(i)
                moved = True
                break
    S = tuple(i for i in range(datum.semisimple_rank) if dot(datum.simple_root(i), x) == 0)
    image = set()
    for k in R:
        j = k
        for i in applied:
            j = datum.reflection_table[i][j]
        image.add(j)
    if image != set(levi_roots(datum, S)):
        return None
    return tuple(applied), S
