import pytest

from visent.structure import Structure

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    ok = _criteria.get(number, (title, True))[1]
    if rep.when == "call":
        ok = ok and rep.passed
    elif not rep.passed:
        ok = False
    _criteria[number] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def man_hat():
    """A man wearing a red hat."""
    return Structure(("d1", "d2"), {"man": {"d1"}, "hat": {"d2"}, "red": {"d2"}},
                     {"wear": {("d1", "d2")}})


@pytest.fixture
def desk_scene():
    """A woman with a table, a phone and a chair; only the woman is confirmed."""
    return Structure(("d1", "d2", "d3", "d4"),
                     {"woman": {"d1"}, "table": {"d2"}, "phone": {"d3"}, "chair": {"d4"}},
                     {"touch": {("d1", "d3")}, "on": {("d3", "d2")}})


@pytest.fixture
def two_cats():
    return Structure(("d1", "d2"), {"cat": {"d1", "d2"}})


@pytest.fixture
def one_cat():
    return Structure(("d1",), {"cat": {"d1"}})
