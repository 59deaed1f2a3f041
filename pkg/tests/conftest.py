import json
import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).resolve().parent
sys.path.insert(0, str(TESTS))

from gendim.catalog import catalog  # noqa: E402


@pytest.fixture(scope="session")
def entries():
    return catalog()


@pytest.fixture(scope="session")
def brute_values():
    return json.loads((TESTS / "oracle_data" / "brute_values.json").read_text())


@pytest.fixture(scope="session")
def gap_values():
    return json.loads((TESTS / "oracle_data" / "gap_values.json").read_text())
