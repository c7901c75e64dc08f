import itertools

import pytest
from hypothesis import settings

from hypercover import SymmetricSet

settings.register_profile("repo", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("repo")


def all_weight_sets(n):
    for r in range(n + 2):
        for ws in itertools.combinations(range(n + 1), r):
            yield SymmetricSet(n, ws)


def cube(n):
    return list(itertools.product((0, 1), repeat=n))


@pytest.fixture
def weight_sets():
    return all_weight_sets
