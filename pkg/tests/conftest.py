import functools

import pytest

from prolate.nodes import find_nodes
from prolate.pswf import prolate


@functools.lru_cache(maxsize=None)
def cached_prolate(c, n):
    return prolate(c, n)


@functools.lru_cache(maxsize=None)
def cached_nodes(c, n):
    return find_nodes(cached_prolate(c, n))


@pytest.fixture
def pf_factory():
    return cached_prolate


@pytest.fixture
def nodes_factory():
    return cached_nodes
