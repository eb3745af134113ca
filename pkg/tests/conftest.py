import pytest

from pcsds.catalog import LISTED_SDS_FILES, load_sds_asset


@pytest.fixture(scope="session")
def listed_families():
    """The ten shipped literature families, keyed by asset name."""
    return {name: load_sds_asset(name) for name in LISTED_SDS_FILES}


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        title = mod.CRITERIA[n][0]
        terminalreporter.write_line(f"criterion {n} [{title}]: {'PASS' if ok else 'FAIL'} - {detail}")
