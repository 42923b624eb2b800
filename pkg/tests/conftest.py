import sys

import pytest

from strongpar.root_datum import catalog_lookup

# (family, size) pairs covering every catalog family at small rank
SMALL_CATALOG = (
    [("GL", n) for n in range(1, 5)]
    + [("SL", n) for n in range(2, 5)]
    + [("PGL", n) for n in range(2, 5)]
    + [("Sp", 4), ("Sp", 6), ("GSp", 4), ("GSp", 6), ("PSp", 4), ("PSp", 6)]
    + [("SO", n) for n in range(3, 9)]
    + [("Spin", n) for n in range(3, 9)]
    + [("GO", n) for n in range(3, 8)]
    + [("PSO", 4), ("PSO", 6), ("PSO", 8)]
    + [("F", 4), ("G", 2)]
)

FULL_CATALOG = SMALL_CATALOG + [("E", 6), ("E", 7), ("E", 8), ("E/Z", 6), ("E/Z", 7), ("GL", 8), ("Sp", 16),
                                ("SO", 17), ("Spin", 16), ("GSp", 12), ("PSp", 10)]


def _ids(pairs):
    return [f"{a}{b}" for a, b in pairs]


@pytest.fixture(params=SMALL_CATALOG, ids=_ids(SMALL_CATALOG))
def small_datum(request):
    return catalog_lookup(*request.param)


def all_catalog_pairs(max_size=30):
    """Every (family, size) the catalog accepts, up to ``max_size``."""
    from strongpar.errors import CatalogError
    from strongpar.root_datum import FAMILIES
    out = []
    for fam in FAMILIES:
        for size in range(1, max_size + 1):
            try:
                catalog_lookup(fam, size)
            except CatalogError:
                continue
            out.append((fam, size))
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
