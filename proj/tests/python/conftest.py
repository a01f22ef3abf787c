import os
import pathlib

import pytest

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"


@pytest.fixture
def data():
    return DATA


@pytest.fixture
def cli():
    path = os.environ.get("RAMSEYFORGE_CLI")
    if not path:
        pytest.skip("RAMSEYFORGE_CLI is not set")
    return path
