import re

_ACCEPTANCE: list[tuple[str, str]] = []


def record_acceptance(line: str, passed: bool):
    _ACCEPTANCE.append((line, "PASS" if passed else "FAIL"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line, verdict in sorted(set(_ACCEPTANCE), key=lambda kv: _key(kv[0])):
        terminalreporter.write_line(f"{verdict}  {line}")


def _key(line: str):
    m = re.match(r"(\d+)", line)
    return (int(m.group(1)) if m else 99, line)
