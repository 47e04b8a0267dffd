import pytest

from mdskit.alphabet import Alphabet
from mdskit.constructions import build, fixture_suite, spec_for


@pytest.fixture(scope="session")
def gf4():
    return Alphabet.from_string("field:2^2")


@pytest.fixture(scope="session")
def de_rs_q4():
    """The (6, 4^3, 4) doubly-extended RS code over GF(4)."""
    return build(spec_for("doubly_extended_rs", q=4, k=3))


@pytest.fixture(scope="session")
def ext_rs_q4():
    """The (5, 4^2, 4) extended RS code over GF(4)."""
    return build(spec_for("extended_rs", q=4, k=2))


@pytest.fixture(scope="session")
def fixtures8():
    return fixture_suite(8)


_ACCEPTANCE: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = item.get_closest_marker("criterion")
    if crit is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _ACCEPTANCE.append((crit.args[0], f"{status}  {item.name}"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {label}: {line}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")
