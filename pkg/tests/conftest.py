import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance")
        for line in CRITERIA:
            terminalreporter.write_line(line)
