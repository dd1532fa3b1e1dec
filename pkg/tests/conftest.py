ACCEPTANCE: dict = {}


def record(number: int, status: str, note: str) -> None:
    ACCEPTANCE[number] = (status, note)
    print(f"criterion {number}: {status} ({note})")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        status, note = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status} ({note})")
