import os
import sys
from pathlib import Path

import pytest

from critatlas import cylgen as C
from critatlas import diskgen as D
from critatlas.catalog import CatalogStore

sys.path.insert(0, str(Path(__file__).parent))

STORE = Path(os.environ.get("CRITATLAS_STORE", Path(__file__).resolve().parents[1] / "atlas"))

_RESULTS: list[tuple[str, bool, str]] = []


def record(label: str, ok: bool, detail: str = "") -> None:
    """Remember one acceptance line; printed again in the terminal summary."""
    _RESULTS.append((label, ok, detail))
    print(f"{label}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _RESULTS:
        terminalreporter.write_line(f"{label}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def small_disk():
    """K_5 .. K_12 generated in memory (a few seconds)."""
    return D.build_all(12)


@pytest.fixture(scope="session")
def store():
    return CatalogStore(STORE)


@pytest.fixture(scope="session")
def disk16(store):
    """K_5 .. K_16 from the store; missing lengths are generated and saved
    (K_16 takes about 15 minutes on one core)."""
    cat = D.load_catalog(store, 16)

    def save(i, cat):
        D.save_catalog(cat, store, [i])

    return D.build_all(16, cat=cat, progress=save)


@pytest.fixture(scope="session")
def cylinder(store, disk16):
    """Cylinder levels 0..6 from the store, built from the disk catalogs if absent."""
    cc = C.load_cylinder(store, 6)
    if sorted(cc.levels) != list(range(7)):
        base = C.enumerate_base(disk16, 16)
        cc = C.enumerate_levels(base, 6)
        C.save_cylinder(cc, store, C.name_assignment(cc))
    return cc


@pytest.fixture(scope="session")
def names(cylinder):
    return C.name_assignment(cylinder)
