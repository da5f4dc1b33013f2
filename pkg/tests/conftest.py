import random

import pytest

from legcob import (random_grid, slack_unknot_grid, stabilized_unknot_grid,
                    torus_knot_grid, unknot_grid)
from legcob.resolve import resolve

CORPUS_SEED = 20260816


@pytest.fixture(scope="session")
def named_grids():
    return {
        "unknot": unknot_grid(),
        "stab": stabilized_unknot_grid(),
        "slack": slack_unknot_grid(),
        "trefoil": torus_knot_grid(1),
        "torus2": torus_knot_grid(2),
        "torus3": torus_knot_grid(3),
        "torus4": torus_knot_grid(4),
    }


@pytest.fixture(scope="session")
def random_corpus():
    rng = random.Random(CORPUS_SEED)
    return [random_grid(rng, gmax=8) for _ in range(30)]


@pytest.fixture(scope="session")
def word_corpus(named_grids, random_corpus):
    """Resolved words for every grid the suite sweeps over."""
    words = [(name, resolve(g)) for name, g in named_grids.items()]
    words += [("random%d" % i, resolve(g))
              for i, g in enumerate(random_corpus)]
    return words
