import pytest

CRITERIA = {
    1: "Groebner certification, n <= 8, all t",
    2: "Krull dimension n + 3, two routes",
    3: "Artinian Hilbert function, three routes",
    4: "Fibonacci length and multiplicity",
    5: "regular-sequence numerator identity, pdim n + 1",
    6: "regularity, Artinian and comb-graph routes",
    7: "lattice refutation, natural lattice, patches",
    8: "ladder graph facts",
    9: "property suites and deterministic sweeps",
}

_outcomes: dict[int, list[str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    k = marker.args[0]
    if report.when == "call" or report.failed:
        _outcomes.setdefault(k, []).append("passed" if report.passed else report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k, title in CRITERIA.items():
        seen = _outcomes.get(k)
        if not seen:
            continue
        status = "PASS" if all(s == "passed" for s in seen) else "FAIL"
        terminalreporter.write_line(f"{status} criterion {k}: {title} ({len(seen)} checks)")
