from __future__ import annotations

import pytest

from weightmagic import load_catalog, run_all


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def criteria(catalog):
    return run_all(catalog)
