"""Regenerate the group classification table from structural predicates."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .root_datum import RootDatum, StructuralPredicates, catalog_lookup, structural_predicates

EASY = "all characters are easy"
STRONG = "all characters are strongly parabolic"
PAR_EASY = "all parabolic characters are easy"
PAR_STRONG = "all parabolic characters are strongly parabolic"
NONE = "no conclusion"


def conclusion(pred: StructuralPredicates) -> str:
    """Strongest conclusion about characters supported by these structural predicates."""
    if pred.simply_laced and pred.X_mod_Q_free:
        return EASY if pred.Xv_mod_Qv_free else STRONG
    if pred.parabolic_forces_strong:
        return PAR_EASY if pred.Xv_mod_Qv_free else PAR_STRONG
    return NONE


# label -> (catalog family, [(N, catalog size)]) for the instances with N <= max_n
def _instances(label: str, max_n: int) -> list[tuple[int, str, int]]:
    rng = range(1, max_n + 1)
    spec = {
        "GL_N": ("GL", [(N, N) for N in rng]),
        "E8": ("E", [(8, 8)]),
        "PGL_N": ("PGL", [(N, N) for N in rng if N >= 2]),
        "GO_2N": ("GO", [(N, 2 * N) for N in rng if N >= 2]),
        "SO_2N/Z": ("PSO", [(N, 2 * N) for N in rng if N >= 2]),
        "E6/Z": ("E/Z", [(6, 6)]),
        "E7/Z": ("E/Z", [(7, 7)]),
        "SL_N (N >= 3)": ("SL", [(N, N) for N in rng if N >= 3]),
        "GSp_2N": ("GSp", [(N, 2 * N) for N in rng if N >= 2]),
        "Spin_N": ("Spin", [(N, N) for N in rng if N >= 6]),
        "E_N (N >= 6)": ("E", [(6, 6), (7, 7)]),
        "F4": ("F", [(4, 4)]),
        "G2": ("G", [(2, 2)]),
        "Sp_2N/Z": ("PSp", [(N, 2 * N) for N in rng if N >= 2]),
        "GO_N": ("GO", [(N, N) for N in rng if N >= 5 and N % 2]),
        "SO_N": ("SO", [(N, N) for N in rng if N >= 5]),
    }[label]
    fam, pairs = spec
    return [(N, fam, size) for N, size in pairs]


def load_golden() -> dict:
    with resources.files("strongpar").joinpath("fixtures/table_groups.json").open() as fh:
        return json.load(fh)


@dataclass(frozen=True)
class TableEntry:
    row: int
    label: str
    N: int
    group: str
    expected: str
    computed: str
    predicates: StructuralPredicates

    @property
    def matches(self) -> bool:
        return self.expected == self.computed

    def to_dict(self) -> dict:
        return {"row": self.row, "label": self.label, "N": self.N, "group": self.group,
                "expected": self.expected, "computed": self.computed, "match": self.matches,
                "predicates": self.predicates.to_dict()}


def regenerate_table(max_n: int = 8) -> list[TableEntry]:
    out = []
    for row in load_golden()["rows"]:
        for label in row["groups"]:
            for N, fam, size in _instances(label, max_n):
                datum: RootDatum = catalog_lookup(fam, size)
                pred = structural_predicates(datum)
                out.append(TableEntry(row["row"], label, N, datum.name, row["conclusion"],
                                      conclusion(pred), pred))
    return out


def row_conclusions(entries: list[TableEntry]) -> dict[int, str | None]:
    """Common computed conclusion per row, or None when instances disagree."""
    rows: dict[int, set[str]] = {}
    for e in entries:
        rows.setdefault(e.row, set()).add(e.computed)
    return {r: (s.pop() if len(s) == 1 else None) for r, s in sorted(rows.items())}
