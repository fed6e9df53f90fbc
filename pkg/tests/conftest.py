import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE: dict[int, tuple[str, bool, float]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok, seconds = ACCEPTANCE[num]
        mark = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{mark}] AC{num} {title} ({seconds:.2f}s)")
