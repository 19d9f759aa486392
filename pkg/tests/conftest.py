import pytest

from chaingraph.enumeration import enumerate_cgs
from chaingraph.formats import parse_graph

EXAMPLE_TEXT = "nodes: A B C D\nA -> B\nB -- C\nD -> C\n"

_ACCEPTANCE = {}


@pytest.fixture
def example_graph():
    return parse_graph(EXAMPLE_TEXT)


@pytest.fixture(scope="session")
def cgs_upto4():
    return [g for n in range(0, 5) for g in enumerate_cgs("ABCD"[:n])]


@pytest.fixture(scope="session")
def cgs3():
    return list(enumerate_cgs("ABC"))


@pytest.fixture(scope="session")
def cgs4():
    return list(enumerate_cgs("ABCD"))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None:
        rep.acceptance = mark.args[0]
        if rep.when == "call":
            _ACCEPTANCE[mark.args[0]] = rep.outcome
        elif rep.when == "setup" and rep.outcome != "passed":
            _ACCEPTANCE[mark.args[0]] = rep.outcome


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): acceptance criterion")
    config.addinivalue_line("markers", "slow: opt-in exhaustive runs (CG_SLOW=1)")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE, key=lambda c: (int(c.split()[0]), c)):
        status = "PASS" if _ACCEPTANCE[crit] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {crit}")
