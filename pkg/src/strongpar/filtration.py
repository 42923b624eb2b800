"""Concave functions on roots, the Roche function of a character, and K-specs.

Functions on roots are stored as tuples indexed like ``datum.roots``.
A positive system is a set of root indices containing exactly one of each
pair +-alpha; ``None`` means the standard one of the datum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ConditionViolation, InputError, NotStronglyParabolicError
from .character import TorusCharacter, classify, ClassificationReport, _conductor_of
from .lattice import dot
from .root_datum import RootDatum, levi_roots


def standard_positive(datum: RootDatum) -> frozenset[int]:
    return frozenset(range(datum.n_positive))


def _positive(datum: RootDatum, positive: Iterable[int] | None) -> frozenset[int]:
    if positive is None:
        return standard_positive(datum)
    pos = frozenset(positive)
    for k in range(datum.n_roots):
        if (k in pos) == (datum.neg(k) in pos):
            raise InputError(f"positive system must contain exactly one of +-{datum.roots[k]}")
    return pos


@dataclass(frozen=True)
class ConcaveFunction:
    """Integer function on the roots of ``datum`` (not necessarily concave until checked)."""

    datum: RootDatum
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.datum.n_roots:
            raise InputError(f"need {self.datum.n_roots} values, got {len(self.values)}")

    @classmethod
    def from_mapping(cls, datum: RootDatum, mapping: Mapping) -> "ConcaveFunction":
        """Accept keys that are root indices or root vectors."""
        vals = [None] * datum.n_roots
        for key, v in mapping.items():
            k = key if isinstance(key, int) else datum.index[tuple(key)]
            vals[k] = int(v)
        if any(v is None for v in vals):
            raise InputError("function is not total on the roots")
        return cls(datum, tuple(vals))

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def table(self) -> list[dict]:
        """Per-root listing: root vector, simple coefficients, value."""
        d = self.datum
        return [{"root": list(d.roots[k]), "coefficients": list(d.coefficients[k]), "value": self.values[k]}
                for k in range(d.n_roots)]


def iwahori_function(datum: RootDatum, positive: Iterable[int] | None = None) -> ConcaveFunction:
    pos = _positive(datum, positive)
    return ConcaveFunction(datum, tuple(0 if k in pos else 1 for k in range(datum.n_roots)))


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str  # "a", "b" or "levi"
    roots: tuple[int, ...]
    detail: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "roots": list(self.roots), "detail": self.detail}


def _violations_a(f: Sequence[int], datum: RootDatum, domain: frozenset[int] | None = None) -> list[Violation]:
    out = []
    for a, b, c in sorted(datum.sum_table):
        if domain is not None and not (a in domain and b in domain and c in domain):
            continue
        if f[a] + f[b] < f[c]:
            out.append(Violation("a", (a, b, c), f"f({a}) + f({b}) = {f[a] + f[b]} < f({c}) = {f[c]}"))
    return out


def _violations_b(f: Sequence[int], datum: RootDatum, domain: frozenset[int] | None = None) -> list[Violation]:
    out = []
    for k in range(datum.n_roots):
        if domain is not None and k not in domain:
            continue
        j = datum.neg(k)
        if f[k] + f[j] < 1:
            out.append(Violation("b", (k, j), f"f({k}) + f({j}) = {f[k] + f[j]} < 1"))
    return out


def check_concave(f: ConcaveFunction) -> tuple[bool, list[Violation]]:
    """Exhaustive check of (a) subadditivity on root sums and (b) f(a) + f(-a) >= 1.

    Violations are listed in lexicographic order of root indices, (a) first.
    """
    v = _violations_a(f.values, f.datum) + _violations_b(f.values, f.datum)
    return not v, v


def check_levi_compat(f: ConcaveFunction, subset: Iterable[int]) -> tuple[bool, list[Violation]]:
    """f(beta) = f(alpha + beta) for alpha in Delta_L, beta outside, alpha + beta a root."""
    datum = f.datum
    L = levi_roots(datum, subset)
    out = []
    for a, b, c in sorted(datum.sum_table):
        if a in L and b not in L and f[b] != f[c]:
            out.append(Violation("levi", (a, b, c), f"f({b}) = {f[b]} != f({c}) = {f[c]}"))
    return not out, out


# ---------------------------------------------------------------------------

def clamped_conductors(mu: TorusCharacter) -> tuple[int, ...]:
    """c_alpha = conductor of mu o alpha^vee, counted from 1: a character trivial on
    all units gets 1, the smallest positive c with triviality on 1 + p^c."""
    n = mu.units.order
    return tuple(max(1, _conductor_of(dot(mu.values, av) % n, mu.units)) for av in mu.datum.coroots)


def roche_function(mu: TorusCharacter, positive: Iterable[int] | None = None) -> ConcaveFunction:
    """floor(c/2) on positive roots, floor((c+1)/2) on negative roots."""
    datum = mu.datum
    pos = _positive(datum, positive)
    conds = clamped_conductors(mu)
    vals = tuple(c // 2 if k in pos else (c + 1) // 2 for k, c in enumerate(conds))
    f = ConcaveFunction(datum, vals)
    if mu.units.p not in datum.excluded_primes:
        ok, bad = check_concave(f)
        if not ok:
            raise ConditionViolation("Roche function is not concave", bad[0])
    return f


def fprime_from_g(g: Mapping[int, int], subset: Iterable[int],
                  positive: Iterable[int] | None = None, *, datum: RootDatum) -> ConcaveFunction:
    """Extend g from the roots outside the Levi by 0 on Delta_L^+ and 1 on Delta_L^-."""
    pos = _positive(datum, positive)
    L = levi_roots(datum, subset)
    outside = frozenset(range(datum.n_roots)) - L
    if set(g) != set(outside):
        raise InputError("g must be defined exactly on the roots outside the Levi")
    vals = [0] * datum.n_roots
    for k in range(datum.n_roots):
        vals[k] = g[k] if k in outside else (0 if k in pos else 1)
    bad = _violations_a(vals, datum, outside) + _violations_b(vals, datum, outside)
    _, levi_bad = check_levi_compat(ConcaveFunction(datum, tuple(vals)), subset)
    bad += levi_bad
    if bad:
        raise ConditionViolation("g violates the hypotheses of the extension", bad[0])
    f = ConcaveFunction(datum, tuple(vals))
    ok, post = check_concave(f)
    assert ok, post[:1]
    return f


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiltrationSpec:
    """Exponents of a subgroup <U_{alpha, e(alpha)}, T(O)>; torus level is always 0."""

    datum: RootDatum
    exponents: tuple[int, ...]
    levi_subset: tuple[int, ...] | None = None
    positive: frozenset[int] | None = None
    torus_level: int = 0

    @property
    def is_k_spec(self) -> bool:
        return self.levi_subset is not None

    def exponent(self, k: int) -> int:
        return self.exponents[k]

    def to_dict(self) -> dict:
        out = {
            "group": self.datum.name,
            "levi_subset": None if self.levi_subset is None else list(self.levi_subset),
            "roots": ConcaveFunction(self.datum, self.exponents).table(),
        }
        mat = exponent_matrix(self)
        if mat is not None:
            out["exponent_matrix"] = mat
        return out


def j_spec(f: ConcaveFunction) -> FiltrationSpec:
    return FiltrationSpec(f.datum, f.values)


def check_k_conditions(g: Sequence[int], datum: RootDatum, subset: Iterable[int]) -> list[Violation]:
    """(i) g vanishes on Delta_L, (ii) g(a) + g(-a) >= 1 off Delta_L, (iii) subadditivity."""
    L = levi_roots(datum, subset)
    bad = [Violation("i", (k,), f"g({k}) = {g[k]} != 0") for k in sorted(L) if g[k] != 0]
    outside = frozenset(range(datum.n_roots)) - L
    bad += _violations_b(g, datum, outside)
    bad += _violations_a(g, datum)
    return bad


def build_k_spec(mu: TorusCharacter, positive: Iterable[int] | None = None,
                 report: ClassificationReport | None = None) -> FiltrationSpec:
    """K-spec of a strongly parabolic character: 0 on Delta_L, f_mu elsewhere."""
    datum = mu.datum
    report = classify(mu) if report is None else report
    if not report.strongly_parabolic:
        raise NotStronglyParabolicError(f"character {list(map(str, mu.exponents))} is not strongly parabolic")
    S = report.levi_subset
    pos = _positive(datum, positive)
    f = roche_function(mu, pos)
    L = levi_roots(datum, S)
    g = tuple(0 if k in L else f[k] for k in range(datum.n_roots))
    bad = check_k_conditions(g, datum, S)
    if bad:
        raise ConditionViolation("K exponents fail the subgroup conditions", bad[0])
    if mu.units.p not in datum.excluded_primes:
        fp = fprime_from_g({k: g[k] for k in range(datum.n_roots) if k not in L}, S, pos, datum=datum)
        assert all(fp[k] == g[k] for k in range(datum.n_roots) if k not in L)
    return FiltrationSpec(datum, g, tuple(S), frozenset(pos))


def spec_from_matrix(datum: RootDatum, matrix: Sequence[Sequence[int]],
                     levi_subset: Iterable[int] | None = None) -> FiltrationSpec:
    """Inverse of ``exponent_matrix`` for type-A data."""
    pos = _matrix_positions(datum)
    if pos is None:
        raise InputError(f"{datum.name} has no matrix-position labelling of roots")
    exps = tuple(int(matrix[i][j]) for i, j in pos)
    return FiltrationSpec(datum, exps, None if levi_subset is None else tuple(sorted(levi_subset)))


def _matrix_positions(datum: RootDatum) -> list[tuple[int, int]] | None:
    """For a single type-A_{n-1} component on n-space, root k <-> position (i, j) of e_i - e_j."""
    comps = datum.components()
    if len(comps) != 1 or comps[0][0] != "A":
        return None
    out = []
    for k in range(datum.n_roots):
        supp = sorted(datum.support(k))
        i, j = supp[0], supp[-1] + 1
        out.append((i, j) if datum.is_positive(k) else (j, i))
    return out


def exponent_matrix(spec: FiltrationSpec) -> list[list[int]] | None:
    """n x n matrix of required valuations (diagonal 0) for type-A groups, else None."""
    positions = _matrix_positions(spec.datum)
    if positions is None:
        return None
    n = spec.datum.semisimple_rank + 1
    M = [[0] * n for _ in range(n)]
    for k, (i, j) in enumerate(positions):
        M[i][j] = spec.exponents[k]
    return M
