import pytest

from hyperchow.io import load_fixture


@pytest.fixture(scope="session")
def fixture_arrangement():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_fixture(name).arrangement()
        return cache[name]

    return get


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get(
        "tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
