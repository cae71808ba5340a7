import pytest

_ACCEPTANCE_RESULTS = []


def record_criterion(number: int, title: str, passed: bool, detail: str = ""):
    _ACCEPTANCE_RESULTS.append((number, title, passed, detail))


@pytest.hookimpl(trylast=True)
def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE_RESULTS):
        tag = "PASS" if passed else "FAIL"
        line = f"{tag} criterion {number:2d}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
