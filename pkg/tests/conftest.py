import pytest

from cimatroid.matroid import enumerate_loopless_matroids
from cimatroid.models import seeded_configurations


@pytest.fixture(scope="session")
def oracle_matroids():
    """All loopless matroids by ground-set size, from the enumeration oracle."""
    return {n: enumerate_loopless_matroids(n) for n in range(1, 6)}


@pytest.fixture(scope="session")
def vector_corpus():
    """100 reproducible rational configurations without loops."""
    return seeded_configurations(100)
