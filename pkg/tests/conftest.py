import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wfk import FilterParameters, sample_parameters

BANDS = (2, 3, 4)
INDICES = (0, 1, 2, 3, 4)
RADII = (0.0, 0.5, 0.9)
SEEDS_PER_COMBO = 5


def build_corpus() -> list[tuple[int, FilterParameters]]:
    """At least 200 seeded draws covering every (bands, index, radius) combo."""
    corpus = []
    seed = 0
    for n in BANDS:
        for m in INDICES:
            for rho in RADII:
                for _ in range(SEEDS_PER_COMBO):
                    corpus.append((seed, sample_parameters(seed, n, m, rho)))
                    seed += 1
    return corpus


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()
