import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    from helpers import Recorder
    if Recorder.lines:
        terminalreporter.section("acceptance criteria")
        for line in Recorder.lines:
            terminalreporter.write_line(line)
