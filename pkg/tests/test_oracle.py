import random

import numpy as np
import pytest

from capopt.model import build_instance, check_feasible, compute_stats
from capopt.oracle import (
    OracleResult,
    TooLargeError,
    brute_force_optimum,
    exact_optimum,
)

from conftest import enumerate_optimum, random_author_lists


class TestBruteForce:
    def test_t1(self, t1):
        assert brute_force_optimum(t1, 2) == 4

    def test_triangle(self, triangle):
        assert brute_force_optimum(triangle, 1) == 1

    def test_empty_instance(self):
        assert brute_force_optimum(build_instance([]), 1) == 0

    def test_too_large(self):
        inst = build_instance([["a"]] * 23)
        with pytest.raises(TooLargeError):
            brute_force_optimum(inst, 1)

    def test_matches_pure_python_enumeration(self):
        rng = random.Random(31)
        for _ in range(100):
            lists = random_author_lists(rng, max_papers=9, max_authors=5)
            b = rng.randint(0, 3)
            assert brute_force_optimum(build_instance(lists), b) == enumerate_optimum(
                lists, b
            )


class TestExactOptimum:
    def test_t1_unique_optimum(self, t1):
        res = exact_optimum(t1, 2)
        assert isinstance(res, OracleResult)
        assert res.accepted == 4
        assert res.certified
        assert res.x.tolist() == [1, 1, 0, 1, 1]

    def test_triangle_prefers_earliest_paper(self, triangle):
        res = exact_optimum(triangle, 1)
        assert res.accepted == 1
        assert res.x.tolist() == [1, 0, 0]

    def test_tie_break_prefers_smaller_ids(self):
        inst = build_instance([["a"], ["a"], ["a"]])
        res = exact_optimum(inst, 2)
        assert res.accepted == 2
        assert res.x.tolist() == [1, 1, 0]

    def test_limit_above_max_load_accepts_all(self, t1):
        k1 = compute_stats(t1).max_papers_per_author
        res = exact_optimum(t1, k1)
        assert res.accepted == t1.m
        assert res.x.tolist() == [1] * t1.m

    def test_paper_cap(self):
        inst = build_instance([["a"]] * 41)
        with pytest.raises(TooLargeError):
            exact_optimum(inst, 1)
        assert exact_optimum(inst, 1, m_cap=50).accepted == 1

    def test_budget_exhaustion_returns_feasible_incumbent(self):
        # Two disjoint triangles: the root LP bound (3.0) cannot close the
        # gap to the integer optimum (2), so one node is never enough.
        lists = [["a", "b"], ["b", "c"], ["a", "c"], ["d", "e"], ["e", "f"], ["d", "f"]]
        inst = build_instance(lists)
        res = exact_optimum(inst, 1, node_budget=1)
        assert not res.certified
        assert check_feasible(inst, 1, res.x)
        assert res.accepted == int(res.x.sum())
        full = exact_optimum(inst, 1)
        assert full.certified
        assert full.accepted == 2
        assert full.x.tolist() == [1, 0, 0, 1, 0, 0]

    def test_matches_brute_force(self):
        rng = random.Random(33)
        for _ in range(120):
            lists = random_author_lists(rng, max_papers=12, max_authors=7)
            inst = build_instance(lists)
            b = rng.randint(1, 4)
            res = exact_optimum(inst, b)
            assert res.certified
            assert res.accepted == brute_force_optimum(inst, b)
            assert check_feasible(inst, b, res.x)
            assert res.accepted == int(res.x.sum())

    def test_monotone_in_limit(self):
        rng = random.Random(34)
        for _ in range(40):
            inst = build_instance(random_author_lists(rng, max_papers=10, max_authors=5))
            k1 = compute_stats(inst).max_papers_per_author
            counts = [exact_optimum(inst, b).accepted for b in range(0, k1 + 1)]
            assert counts == sorted(counts)

    def test_lexicographic_vector_is_canonical(self):
        # The returned optimum must be the lexicographically largest one:
        # no other optimal vector may accept an earlier paper instead.
        rng = random.Random(35)
        for _ in range(40):
            lists = random_author_lists(rng, max_papers=8, max_authors=4)
            inst = build_instance(lists)
            b = rng.randint(1, 2)
            res = exact_optimum(inst, b)
            best = None
            for bits in np.ndindex(*([2] * inst.m)):
                x = np.array(bits)
                if int(x.sum()) == res.accepted and check_feasible(inst, b, x):
                    if best is None or x.tolist() > best:
                        best = x.tolist()
            assert res.x.tolist() == best
