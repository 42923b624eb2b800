"""Brute-force checks over the truncated rings Z/p^m.

Matrices are tuples of row tuples with entries reduced mod p^m. Only GL_n
(n <= 4), SL_2 and SL_3 are realized; filtration specs are translated to an
exponent matrix (required valuation per entry) and a block partition coming
from the Levi subset.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from .character import TorusCharacter, easy_decomposition, truncated_units
from .errors import CapExceeded, FactorizationError, InputError, NotInGroupError
from .filtration import FiltrationSpec, exponent_matrix

Mat = tuple[tuple[int, ...], ...]

DEFAULT_GROUP_CAP = 10 ** 7


# ---------------------------------------------------------------------------
# Matrix arithmetic mod N

def identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(A: Mat, B: Mat, N: int) -> Mat:
    cols = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % N for col in cols) for row in A)


def det(A: Mat, N: int) -> int:
    n = len(A)
    if n == 1:
        return A[0][0] % N
    if n == 2:
        return (A[0][0] * A[1][1] - A[0][1] * A[1][0]) % N
    total = 0
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in A[1:])
        total += (-1) ** j * A[0][j] * det(minor, N)
    return total % N


def mat_inv(A: Mat, N: int) -> Mat:
    """Inverse mod N by Gauss-Jordan with unit pivots (N a prime power)."""
    n = len(A)
    M = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if _is_unit(M[r][col], N)), None)
        if piv is None:
            raise FactorizationError(f"matrix {A} is not invertible mod {N}")
        M[col], M[piv] = M[piv], M[col]
        inv = pow(M[col][col], -1, N)
        M[col] = [x * inv % N for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                c = M[r][col]
                M[r] = [(x - c * y) % N for x, y in zip(M[r], M[col])]
    return tuple(tuple(row[n:]) for row in M)


def _is_unit(x: int, N: int) -> bool:
    return gcd(x, N) == 1


def commutator(a: Mat, b: Mat, N: int) -> Mat:
    """[a, b] = a b a^{-1} b^{-1}."""
    return mat_mul(mat_mul(a, b, N), mat_mul(mat_inv(a, N), mat_inv(b, N), N), N)


def valuation(x: int, p: int, m: int) -> int:
    """p-adic valuation of x in Z/p^m, with v(0) = m."""
    x %= p ** m
    if x == 0:
        return m
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def elementary(n: int, i: int, j: int, x: int, N: int) -> Mat:
    return tuple(tuple((int(r == c) + (x if (r, c) == (i, j) else 0)) % N for c in range(n)) for r in range(n))


def diagonal(entries: Sequence[int], N: int) -> Mat:
    n = len(entries)
    return tuple(tuple(entries[r] % N if r == c else 0 for c in range(n)) for r in range(n))


@dataclass(frozen=True)
class TruncatedMatrix:
    """Matrix over Z/p^m tagged GL or SL."""

    entries: Mat
    p: int
    m: int
    tag: str = "GL"

    def __post_init__(self):
        N = self.p ** self.m
        object.__setattr__(self, "entries", tuple(tuple(x % N for x in row) for row in self.entries))
        d = det(self.entries, N)
        if self.tag == "GL" and d % self.p == 0:
            raise NotInGroupError("determinant is not a unit")
        if self.tag == "SL" and d != 1:
            raise NotInGroupError("determinant is not 1")
        if self.tag not in ("GL", "SL"):
            raise InputError(f"unsupported group tag {self.tag!r}")

    @property
    def modulus(self) -> int:
        return self.p ** self.m

    def __mul__(self, other: "TruncatedMatrix") -> "TruncatedMatrix":
        return TruncatedMatrix(mat_mul(self.entries, other.entries, self.modulus), self.p, self.m, self.tag)

    def inverse(self) -> "TruncatedMatrix":
        return TruncatedMatrix(mat_inv(self.entries, self.modulus), self.p, self.m, self.tag)


# ---------------------------------------------------------------------------
# Reporting

@dataclass
class CheckResult:
    claim: str
    parameters: dict
    mode: str
    result: bool
    trials: int | None = None
    seed: int | None = None
    witness: object = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"claim": self.claim, "parameters": self.parameters, "mode": self.mode,
                "trials": self.trials, "seed": self.seed, "result": self.result,
                "witness": _jsonable(self.witness), "details": _jsonable(self.details)}


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _require_odd_prime(p: int, m: int) -> None:
    truncated_units(p, m)  # validates p odd prime, m >= 1


# ---------------------------------------------------------------------------
# SL_2 identities

def verify_explicit_commutator(p: int, m: int) -> CheckResult:
    """L [A, B] R = diag(f, 1/f) for every unit f, where A = lower(f-1),
    B = upper(-1), L = lower(-(f-1)^2/f), R = upper((1-f)/f)."""
    _require_odd_prime(p, m)
    N = p ** m
    failures = []
    units = [u for u in range(1, N) if u % p]
    for f in units:
        fi = pow(f, -1, N)
        L = elementary(2, 1, 0, -(f - 1) ** 2 * fi, N)
        A = elementary(2, 1, 0, f - 1, N)
        B = elementary(2, 0, 1, -1, N)
        R = elementary(2, 0, 1, (1 - f) * fi, N)
        lhs = mat_mul(mat_mul(L, commutator(A, B, N), N), R, N)
        if lhs != diagonal((f, fi), N):
            failures.append(f)
    return CheckResult("explicit_commutator", {"p": p, "m": m}, "exhaustive", not failures,
                       trials=len(units), witness=failures[:1] or None)


def _ideal_of_squares(p: int, m: int) -> set[int]:
    N = p ** m
    gens = {(1 - g * g) % N for g in range(N) if g % p}
    return {x * y % N for x in range(N) for y in gens}


def verify_comm_tech(p: int, m: int, trials: int = 10 ** 4, seed: int = 0) -> CheckResult:
    """[lower(x), diag(g, 1/g)] = lower(x (1 - g^-2)), and the ideal claims.

    The ideal I = {x (1 - g^2)} must contain p Z/p^m (squaring is bijective on
    1 + p), and must be the unit ideal exactly when p > 3.
    """
    _require_odd_prime(p, m)
    N = p ** m
    rng = random.Random(seed)
    units = [u for u in range(1, N) if u % p]
    if m <= 2:
        pairs = [(x, g) for x in range(N) for g in units]
        mode = "exhaustive"
    else:
        pairs = [(rng.randrange(N), rng.choice(units)) for _ in range(trials)]
        mode = "sampled"
    failures = []
    for x, g in pairs:
        gi = pow(g, -1, N)
        lhs = commutator(elementary(2, 1, 0, x, N), diagonal((g, gi), N), N)
        if lhs != elementary(2, 1, 0, x * (1 - gi * gi), N):
            failures.append((x, g))
    ideal = _ideal_of_squares(p, m)
    maximal = {x for x in range(N) if x % p == 0}
    contains_p = maximal <= ideal
    unit_ideal = 1 in ideal
    principal = [1 + p * z for z in range(p ** (m - 1))]
    squaring_bijective = len({u * u % N for u in principal}) == len(principal)
    expected_unit = p > 3
    ok = not failures and contains_p and unit_ideal == expected_unit and squaring_bijective
    return CheckResult("comm_tech", {"p": p, "m": m}, mode, ok, trials=len(pairs),
                       seed=None if mode == "exhaustive" else seed, witness=failures[:1] or None,
                       details={"ideal_contains_p": contains_p, "unit_ideal": unit_ideal,
                                "squaring_bijective_on_1_plus_p": squaring_bijective})


# ---------------------------------------------------------------------------
# Group generation

def generate_group(gens: Sequence[Mat], N: int, cap: int = DEFAULT_GROUP_CAP) -> dict[Mat, tuple[int, ...]]:
    """All products of ``gens`` (finite group, so inverses come for free), with words."""
    n = len(gens[0]) if gens else 0
    e = identity(n)
    seen = {e: ()}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        w = seen[x]
        for k, g in enumerate(gens):
            y = mat_mul(x, g, N)
            if y not in seen:
                seen[y] = w + (k,)
                if len(seen) > cap:
                    raise CapExceeded(f"group generation exceeds cap of {cap}")
                queue.append(y)
    return seen


def sl_generators(n: int, N: int) -> list[Mat]:
    return [elementary(n, i, j, 1, N) for i in range(n) for j in range(n) if i != j]


def derived_contains_torus(tag: str, n: int, p: int, m: int, cap: int = DEFAULT_GROUP_CAP) -> CheckResult:
    """[G, G] contains every diagonal matrix of G, for G = SL_n(Z/p^m).

    [G, G] is built as the subgroup generated by all G-conjugates of the
    commutators of the elementary generators; each torus element gets a word
    witness in those conjugates.
    """
    if tag != "SL" or n not in (2, 3):
        raise InputError("derived_contains_torus supports SL_2 and SL_3")
    _require_odd_prime(p, m)
    N = p ** m
    gens = sl_generators(n, N)
    G = generate_group(gens, N, cap)
    basic = {commutator(a, b, N) for a in gens for b in gens}
    conj = set()
    for g in G:
        gi = mat_inv(g, N)
        for c in basic:
            conj.add(mat_mul(mat_mul(g, c, N), gi, N))
    conj_list = sorted(conj)
    H = generate_group(conj_list, N, cap)
    units = [u for u in range(1, N) if u % p]
    missing, witnesses = [], {}
    for diag in product(units, repeat=n - 1):
        last = 1
        for d in diag:
            last = last * pow(d, -1, N) % N
        t = diagonal(tuple(diag) + (last,), N)
        if t in H:
            witnesses[str(diag)] = len(H[t])
        else:
            missing.append(t)
    return CheckResult("derived_contains_torus", {"group": f"{tag}{n}", "p": p, "m": m}, "exhaustive",
                       not missing, trials=len(units) ** (n - 1), witness=missing[:1] or None,
                       details={"group_order": len(G), "derived_order": len(H),
                                "witness_word_lengths": witnesses})


# ---------------------------------------------------------------------------
# Matrix form of filtration specs

@dataclass(frozen=True)
class MatrixSpec:
    """Exponent matrix plus block partition of {0..n-1} into consecutive Levi blocks."""

    exponents: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...]
    tag: str

    @property
    def n(self) -> int:
        return len(self.exponents)

    def block_of(self) -> list[int]:
        out = [0] * self.n
        for b, blk in enumerate(self.blocks):
            for i in blk:
                out[i] = b
        return out


def blocks_from_subset(n: int, subset: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    S = set(subset)
    blocks, cur = [], [0]
    for i in range(n - 1):
        if i in S:
            cur.append(i + 1)
        else:
            blocks.append(tuple(cur))
            cur = [i + 1]
    blocks.append(tuple(cur))
    return tuple(blocks)


def matrix_spec(spec: FiltrationSpec, parabolic: Iterable[int] | None = None) -> MatrixSpec:
    """Translate a spec on a GL_n / SL_n datum; ``parabolic`` defaults to the spec's Levi subset."""
    name = spec.datum.name
    if name.startswith("GL"):
        tag = "GL"
    elif name.startswith("SL"):
        tag = "SL"
    else:
        raise InputError(f"finite verification supports GL_n and SL_n only, not {name}")
    M = exponent_matrix(spec)
    n = len(M)
    if tag == "GL" and n > 4 or tag == "SL" and n > 3:
        raise InputError(f"{name} is too large for finite verification")
    S = parabolic if parabolic is not None else (spec.levi_subset or ())
    return MatrixSpec(tuple(tuple(r) for r in M), blocks_from_subset(n, S), tag)


def is_member(x: Mat, ms: MatrixSpec, p: int, m: int) -> bool:
    N = p ** m
    for i in range(ms.n):
        for j in range(ms.n):
            if i != j and valuation(x[i][j], p, m) < min(ms.exponents[i][j], m):
                return False
    d = det(x, N)
    return d == 1 if ms.tag == "SL" else d % p != 0


# ---------------------------------------------------------------------------
# Factorization

def _sub(A: Mat, rows: Sequence[int], cols: Sequence[int]) -> Mat:
    return tuple(tuple(A[i][j] for j in cols) for i in rows)


def iwahori_factorize(x: Mat, ms: MatrixSpec, p: int, m: int) -> tuple[Mat, Mat, Mat]:
    """x = u_plus * levi * u_minus with u_plus block upper unitriangular,
    levi block diagonal and u_minus block lower unitriangular.

    Eliminates the last block first: on x = [[A, B], [C, D]] take
    levi_last = D, upper block B D^-1, lower block D^-1 C, and recurse on
    A - B D^-1 C.
    """
    N = p ** m
    n = ms.n
    up = [list(r) for r in identity(n)]
    lo = [list(r) for r in identity(n)]
    lev = [[0] * n for _ in range(n)]
    cur = x
    idx = list(range(n))
    for blk in reversed(ms.blocks):
        rest = [i for i in idx if i not in blk]
        bl = list(blk)
        D = _sub(cur, bl, bl)
        try:
            Di = mat_inv(D, N)
        except FactorizationError:
            raise FactorizationError(f"pivot block {blk} of {x} is not invertible") from None
        for a, i in enumerate(bl):
            for b, j in enumerate(bl):
                lev[i][j] = D[a][b]
        if rest:
            B = _sub(cur, rest, bl)
            C = _sub(cur, bl, rest)
            X = mat_mul(B, Di, N)
            Y = mat_mul(Di, C, N)
            for a, i in enumerate(rest):
                for b, j in enumerate(bl):
                    up[i][j] = X[a][b]
            for a, i in enumerate(bl):
                for b, j in enumerate(rest):
                    lo[i][j] = Y[a][b]
            A = _sub(cur, rest, rest)
            BDC = mat_mul(X, C, N)
            newA = tuple(tuple((A[a][b] - BDC[a][b]) % N for b in range(len(rest))) for a in range(len(rest)))
            full = [list(r) for r in identity(n)]
            for a, i in enumerate(rest):
                for b, j in enumerate(rest):
                    full[i][j] = newA[a][b]
            cur = tuple(tuple(r) for r in full)
        idx = rest
    return tuple(map(tuple, up)), tuple(map(tuple, lev)), tuple(map(tuple, lo))


def _factor_membership(u: Mat, lev: Mat, v: Mat, ms: MatrixSpec, p: int, m: int) -> bool:
    """Each factor lies in the corresponding part of the spec."""
    blk = ms.block_of()
    for i in range(ms.n):
        for j in range(ms.n):
            if i == j:
                continue
            e = min(ms.exponents[i][j], m)
            if blk[i] < blk[j]:
                if valuation(u[i][j], p, m) < e:
                    return False
            elif blk[i] > blk[j]:
                if valuation(v[i][j], p, m) < e:
                    return False
            elif valuation(lev[i][j], p, m) < e:
                return False
    return True


# ---------------------------------------------------------------------------
# Enumeration and sampling of the three factors

def _positions(ms: MatrixSpec, kind: str) -> list[tuple[int, int]]:
    blk = ms.block_of()
    out = []
    for i in range(ms.n):
        for j in range(ms.n):
            if i == j:
                continue
            if kind == "+" and blk[i] < blk[j] or kind == "-" and blk[i] > blk[j] \
                    or kind == "0" and blk[i] == blk[j]:
                out.append((i, j))
    return out


def _allowed(ms: MatrixSpec, i: int, j: int, p: int, m: int) -> list[int]:
    e = min(ms.exponents[i][j], m)
    return [k * p ** e for k in range(p ** (m - e))]


def _unipotent_part(ms: MatrixSpec, kind: str, p: int, m: int) -> list[Mat]:
    pos = _positions(ms, kind)
    out = []
    for vals in product(*[_allowed(ms, i, j, p, m) for i, j in pos]):
        M = [list(r) for r in identity(ms.n)]
        for (i, j), v in zip(pos, vals):
            M[i][j] = v
        out.append(tuple(map(tuple, M)))
    return out


def _levi_part(ms: MatrixSpec, p: int, m: int) -> list[Mat]:
    pos = [(i, i) for i in range(ms.n)] + _positions(ms, "0")
    choices = [range(p ** m) if i == j else _allowed(ms, i, j, p, m) for i, j in pos]
    out = []
    for vals in product(*choices):
        M = [[0] * ms.n for _ in range(ms.n)]
        for (i, j), v in zip(pos, vals):
            M[i][j] = v
        X = tuple(map(tuple, M))
        if is_member(X, ms, p, m):
            out.append(X)
    return out


def random_levi(ms: MatrixSpec, p: int, m: int, rng: random.Random) -> Mat:
    N = p ** m
    blk = ms.block_of()
    while True:
        M = [[0] * ms.n for _ in range(ms.n)]
        for i in range(ms.n):
            for j in range(ms.n):
                if blk[i] == blk[j]:
                    e = 0 if i == j else min(ms.exponents[i][j], m)
                    M[i][j] = rng.randrange(p ** (m - e)) * p ** e
        X = tuple(map(tuple, M))
        if ms.tag == "SL":
            d = det(X, N)
            if d % p == 0:
                continue
            # rescale the first row of the first block to make det 1
            di = pow(d, -1, N)
            M[0] = [x * di % N for x in M[0]]
            X = tuple(map(tuple, M))
        if is_member(X, ms, p, m):
            return X


def random_unipotent(ms: MatrixSpec, kind: str, p: int, m: int, rng: random.Random) -> Mat:
    M = [list(r) for r in identity(ms.n)]
    for i, j in _positions(ms, kind):
        e = min(ms.exponents[i][j], m)
        M[i][j] = rng.randrange(p ** (m - e)) * p ** e
    return tuple(map(tuple, M))


def random_member(ms: MatrixSpec, p: int, m: int, rng: random.Random) -> Mat:
    """Rejection sample from the entrywise-valuation set (independent of factorization)."""
    N = p ** m
    while True:
        M = [[0] * ms.n for _ in range(ms.n)]
        for i in range(ms.n):
            for j in range(ms.n):
                e = 0 if i == j else min(ms.exponents[i][j], m)
                M[i][j] = rng.randrange(p ** (m - e)) * p ** e
        d = det(tuple(map(tuple, M)), N)
        if d % p == 0:
            continue
        if ms.tag == "SL":
            di = pow(d, -1, N)
            M[0] = [x * di % N for x in M[0]]
        return tuple(map(tuple, M))


def spec_generators(ms: MatrixSpec, p: int, m: int) -> list[Mat]:
    """U_{alpha, e(alpha)} generators and torus generators."""
    N = p ** m
    g = truncated_units(p, m).generator
    out = []
    for i in range(ms.n):
        for j in range(ms.n):
            if i != j and ms.exponents[i][j] < m:
                out.append(elementary(ms.n, i, j, p ** ms.exponents[i][j], N))
    if ms.tag == "GL":
        for k in range(ms.n):
            out.append(diagonal([g if r == k else 1 for r in range(ms.n)], N))
    else:
        gi = pow(g, -1, N)
        for k in range(ms.n - 1):
            out.append(diagonal([g if r == k else gi if r == k + 1 else 1 for r in range(ms.n)], N))
    return out


# ---------------------------------------------------------------------------

def decomposition_check(spec: FiltrationSpec, parabolic: Iterable[int] | None, p: int, m: int,
                        mode: str = "exhaustive", trials: int = 10 ** 5, seed: int = 0,
                        cap: int = DEFAULT_GROUP_CAP) -> CheckResult:
    """J = J^+ J^0 J^- with unique factorization, relative to the parabolic of ``parabolic``."""
    ms = matrix_spec(spec, parabolic)
    N = p ** m
    params = {"group": spec.datum.name, "p": p, "m": m, "blocks": [list(b) for b in ms.blocks],
              "exponent_matrix": [list(r) for r in ms.exponents]}
    if mode == "exhaustive":
        if ms.n > 2 or N > 9:
            raise InputError("exhaustive decomposition needs GL_2/SL_2 with p^m <= 9")
        J = generate_group(spec_generators(ms, p, m), N, cap)
        plus, zero, minus = (_unipotent_part(ms, "+", p, m), _levi_part(ms, p, m),
                             _unipotent_part(ms, "-", p, m))
        prods = {}
        for u in plus:
            for l in zero:
                ul = mat_mul(u, l, N)
                for v in minus:
                    prods.setdefault(mat_mul(ul, v, N), (u, l, v))
        expected = len(plus) * len(zero) * len(minus)
        members = all(is_member(x, ms, p, m) for x in J)
        ok = len(prods) == expected and set(prods) == set(J) and members
        witness = None
        if not ok:
            extra = next((x for x in J if x not in prods), None)
            witness = extra
        return CheckResult("decomposition", params, "exhaustive", ok, witness=witness,
                           details={"order": len(J), "plus": len(plus), "levi": len(zero),
                                    "minus": len(minus), "distinct_products": len(prods)})
    if mode != "sampled":
        raise InputError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    for t in range(trials):
        u = random_unipotent(ms, "+", p, m, rng)
        l = random_levi(ms, p, m, rng)
        v = random_unipotent(ms, "-", p, m, rng)
        x = mat_mul(mat_mul(u, l, N), v, N)
        if not is_member(x, ms, p, m):
            return CheckResult("decomposition", params, "sampled", False, trials=t + 1, seed=seed,
                               witness={"product_not_member": x})
        got = iwahori_factorize(x, ms, p, m)
        if got != (u, l, v):
            return CheckResult("decomposition", params, "sampled", False, trials=t + 1, seed=seed,
                               witness={"matrix": x, "factors": (u, l, v), "recovered": got})
    return CheckResult("decomposition", params, "sampled", True, trials=trials, seed=seed)


def k_closure_check(spec: FiltrationSpec, p: int, m: int, trials: int = 10 ** 5,
                    seed: int = 0) -> CheckResult:
    """The valuation set of the spec is closed under products and inverses (sampled)."""
    ms = matrix_spec(spec, ())
    N = p ** m
    rng = random.Random(seed)
    params = {"group": spec.datum.name, "p": p, "m": m, "exponent_matrix": [list(r) for r in ms.exponents]}
    for t in range(trials):
        x = random_member(ms, p, m, rng)
        y = random_member(ms, p, m, rng)
        xy = mat_mul(x, y, N)
        if not is_member(xy, ms, p, m):
            return CheckResult("k_closure", params, "sampled", False, trials=t + 1, seed=seed,
                               witness={"x": x, "y": y, "product": xy})
        xi = mat_inv(x, N)
        if not is_member(xi, ms, p, m):
            return CheckResult("k_closure", params, "sampled", False, trials=t + 1, seed=seed,
                               witness={"x": x, "inverse": xi})
    return CheckResult("k_closure", params, "sampled", True, trials=trials, seed=seed)


# ---------------------------------------------------------------------------
# Extension of a character to K

@dataclass(frozen=True)
class ExtendedCharacter:
    """mu(x) = sum over blocks b of w_b * dlog det(levi_b), where x = u+ levi u-.

    The block weights w_b (integers mod phi) come from the easy decomposition
    of the torus character relative to the Levi.
    """

    spec: FiltrationSpec
    mu: TorusCharacter
    matrix_spec: MatrixSpec
    block_weights: tuple[int, ...]

    @classmethod
    def build(cls, mu: TorusCharacter, spec: FiltrationSpec) -> "ExtendedCharacter":
        if not spec.is_k_spec:
            raise InputError("an extended character needs a K-spec with a Levi subset")
        ms = matrix_spec(spec)
        if ms.tag != "GL":
            raise InputError("extended characters are realized for GL_n only")
        n = mu.units.order
        factors = easy_decomposition(mu, spec.levi_subset)
        weights = []
        for blk in ms.blocks:
            w = 0
            for f in factors:
                vals = {f.rational_character[i] for i in blk}
                assert len(vals) == 1, "W_L-invariant characters are constant on Levi blocks"
                w += f.character.value * vals.pop()
            weights.append(w % n)
        return cls(spec, mu, ms, tuple(weights))


def evaluate_mu(x: Mat, ext: ExtendedCharacter) -> Fraction:
    units = ext.mu.units
    p, m, N = units.p, units.m, units.modulus
    if not is_member(x, ext.matrix_spec, p, m):
        raise NotInGroupError(f"{x} is not in K")
    _, lev, _ = iwahori_factorize(x, ext.matrix_spec, p, m)
    total = 0
    for blk, w in zip(ext.matrix_spec.blocks, ext.block_weights):
        total += w * units.dlog(det(_sub(lev, blk, blk), N))
    return Fraction(total % units.order, units.order)


def verify_extended_character(ext: ExtendedCharacter, trials: int = 10 ** 5, seed: int = 0) -> CheckResult:
    """Restriction to T equals mu-bar, triviality on K_P^+- generators, multiplicativity."""
    units = ext.mu.units
    p, m, N = units.p, units.m, units.modulus
    ms = ext.matrix_spec
    n = ms.n
    params = {"group": ext.spec.datum.name, "p": p, "m": m, "blocks": [list(b) for b in ms.blocks]}
    g = units.generator
    for k in range(n):
        t = diagonal([g if r == k else 1 for r in range(n)], N)
        lam = [int(r == k) for r in range(n)]
        if evaluate_mu(t, ext) != ext.mu.evaluate(lam, g):
            return CheckResult("extended_character", params, "sampled", False, witness={"torus": t})
    blk = ms.block_of()
    for i in range(n):
        for j in range(n):
            if blk[i] != blk[j] and ms.exponents[i][j] < m:
                u = elementary(n, i, j, p ** ms.exponents[i][j], N)
                if evaluate_mu(u, ext) != 0:
                    return CheckResult("extended_character", params, "sampled", False, witness={"unipotent": u})
    rng = random.Random(seed)
    for t in range(trials):
        x = random_member(ms, p, m, rng)
        y = random_member(ms, p, m, rng)
        lhs = evaluate_mu(mat_mul(x, y, N), ext)
        rhs = (evaluate_mu(x, ext) + evaluate_mu(y, ext)) % 1
        if lhs != rhs:
            return CheckResult("extended_character", params, "sampled", False, trials=t + 1, seed=seed,
                               witness={"x": x, "y": y})
    return CheckResult("extended_character", params, "sampled", True, trials=trials, seed=seed)
