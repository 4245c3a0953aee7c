def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if not REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(REPORT, key=lambda k: int(k[1:])):
        ok, line = REPORT[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key} {line}")
