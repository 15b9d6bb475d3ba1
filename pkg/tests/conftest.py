import sys
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parent.parent

# make sibling test modules importable as plain names (tests.* also works)
sys.path.insert(0, str(REPO / "tests"))


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return REPO / "fixtures"
