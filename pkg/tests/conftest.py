"""Shared fixtures and reference oracles for the test suite.

The helpers here are deliberately independent of the package internals:
``enumerate_optimum`` and ``count_loads`` work directly on author-label
lists so they can double-check anything the library computes.
"""

from __future__ import annotations

import itertools
import random

import pytest

from capopt.model import build_instance

# Two-author fixture: author A writes papers 1-3, author B writes papers 3-5
# (1-based submission order).
T1_LISTS = [["A"], ["A"], ["A", "B"], ["B"], ["B"]]

# Three papers forming a triangle of pairwise co-authorship.
TRIANGLE_LISTS = [["a", "b"], ["b", "c"], ["a", "c"]]


@pytest.fixture
def t1():
    return build_instance(T1_LISTS)


@pytest.fixture
def triangle():
    return build_instance(TRIANGLE_LISTS)


def count_loads(author_lists, x):
    """Accepted-paper count per author label, by direct enumeration."""
    loads: dict[str, int] = {}
    for j, labels in enumerate(author_lists):
        for label in set(labels):
            loads.setdefault(label, 0)
            if x[j]:
                loads[label] += 1
    return loads


def is_feasible_lists(author_lists, b, x):
    return all(v <= b for v in count_loads(author_lists, x).values())


def enumerate_optimum(author_lists, b):
    """Max number of accepted papers, by exhaustive search over 2^m."""
    m = len(author_lists)
    best = 0
    for bits in itertools.product((1, 0), repeat=m):
        if sum(bits) > best and is_feasible_lists(author_lists, b, bits):
            best = sum(bits)
    return best


def random_author_lists(rng: random.Random, max_papers=10, max_authors=6):
    """Random per-paper author-label lists; every paper gets >= 1 author."""
    m = rng.randint(1, max_papers)
    n = rng.randint(1, max_authors)
    pool = [f"a{i}" for i in range(n)]
    lists = []
    for _ in range(m):
        k = rng.randint(1, min(3, n))
        lists.append(rng.sample(pool, k))
    return lists
