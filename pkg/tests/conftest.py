import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from latcensus.census import census_records

settings.register_profile("suite", max_examples=40, deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def census():
    """Memoized analyzed census per size (records sorted by canonical form)."""
    cache: dict[int, list] = {}

    def get(n: int):
        if n not in cache:
            cache[n] = census_records(n)
        return cache[n]

    return get
