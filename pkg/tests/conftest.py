import pytest

# (criterion number, PASS/FAIL, detail), filled by test_acceptance.py
ACCEPTANCE_RESULTS: list[tuple[int, str, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, verdict, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"AC{number:02d} {verdict}  {detail}")


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, detail: str) -> bool:
        verdict = "PASS" if ok else "FAIL"
        ACCEPTANCE_RESULTS.append((number, verdict, detail))
        print(f"AC{number:02d} {verdict}  {detail}")
        return ok

    return record
