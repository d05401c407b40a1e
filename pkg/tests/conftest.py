import pytest

from kcascade.rootsys import build_root_system


def S(*labels):
    """Subset of simple roots from 1-based Bourbaki labels."""
    return frozenset(i - 1 for i in labels)


def root(rs, **coeffs):
    """Root from keyword coefficients, e.g. root(rs, a1=1, a2=2)."""
    v = [0] * rs.rank
    for k, c in coeffs.items():
        v[int(k[1:]) - 1] = c
    return tuple(v)


@pytest.fixture(scope="session")
def systems():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_root_system(name)
        return cache[name]

    return get


ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record a one-line verdict for an acceptance criterion."""
    num = request.node.get_closest_marker("criterion").args[0]
    notes = []
    yield notes.append
    failed = getattr(request.node, "rep_call", None)
    status = "FAIL" if failed is None or failed.failed else "PASS"
    ACCEPTANCE_LINES[num] = f"criterion {num:>2}: {status}  {' '.join(notes)}".rstrip()


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
