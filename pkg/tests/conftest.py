import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conjlat.search import enumerate_semilattices  # noqa: E402


@lru_cache(maxsize=None)
def classes_up_to(n):
    out = []
    for k in range(1, n + 1):
        out.extend(enumerate_semilattices(k))
    return tuple(out)


@pytest.fixture(scope="session")
def small_classes():
    """All isomorphism classes with at most 5 elements."""
    return classes_up_to(5)


@pytest.fixture(scope="session")
def classes6():
    return classes_up_to(6)
