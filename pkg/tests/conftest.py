import shutil
import sys
from pathlib import Path

import pytest
from hypothesis import settings

from crr import data

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("crr", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("crr")

TOOLS = Path(__file__).parent / "tools"


@pytest.fixture
def fixture_path():
    return data.path


def cbc_binary():
    found = shutil.which("cbc")
    if found:
        return found
    try:
        import pulp
    except ImportError:
        return None
    cand = Path(pulp.__file__).parent / "solverdir" / "cbc" / "linux" / "i64" / "cbc"
    return str(cand) if cand.is_file() else None


def z3_binary():
    return shutil.which("z3")


def pysat_available():
    try:
        import pysat.solvers  # noqa: F401
    except ImportError:
        return False
    return True


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
