import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from cubic_torsion.dataset import BULK_FILE, TABLE1_FILE, bundled_path, ingest  # noqa: E402

# criterion name -> (passed, detail), filled in by the acceptance tests
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def bulk_records():
    return ingest(bundled_path(BULK_FILE))


@pytest.fixture(scope="session")
def table1_records():
    return ingest(bundled_path(TABLE1_FILE))


@pytest.fixture(scope="session")
def curve_by_label(bulk_records, table1_records):
    index = {r.label: r for r in bulk_records}
    index.update({r.label: r for r in table1_records})
    return lambda label: index[label].curve()


@pytest.fixture(scope="session")
def bulk_report(bulk_records):
    """The full conductor <= 1000 sweep, computed once per session."""
    from cubic_torsion.classification.verify import verify_dataset

    return verify_dataset(bulk_records, jobs=int(os.environ.get("CUBIC_TORSION_JOBS", "1")))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in ACCEPTANCE.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
