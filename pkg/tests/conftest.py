import random

import pytest

from ucw.core import Family, close_under_union, separating_quotient


def random_union_closed(rng: random.Random, m_max: int = 8) -> Family:
    """Union-closure of a few random generators; always has a non-empty member."""
    m = rng.randint(1, m_max)
    count = rng.randint(1, 4)
    gens = [rng.randint(1, (1 << m) - 1) for _ in range(count)]
    if rng.random() < 0.3:
        gens.append(0)
    return close_under_union(gens, m)


def random_separating_union_closed(rng: random.Random, m_max: int = 8) -> Family:
    """As above, then merged down to its separating quotient."""
    fam, _ = separating_quotient(random_union_closed(rng, m_max))
    return fam


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x5EED)
