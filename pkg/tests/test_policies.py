import random

import numpy as np

from capopt.model import build_instance, check_feasible, compute_stats
from capopt.policies import (
    PolicyKind,
    all_reject,
    backward_reject,
    forward_reject,
)

from conftest import random_author_lists


class TestAllReject:
    def test_t1_rejects_largest_ids_per_author(self, t1):
        assert all_reject(t1, 2).tolist() == [1, 1, 0, 1, 0]

    def test_no_rejections_above_max_load(self, t1):
        k1 = compute_stats(t1).max_papers_per_author
        assert all_reject(t1, k1).tolist() == [1] * 5

    def test_limit_zero_rejects_everything(self, t1):
        assert all_reject(t1, 0).tolist() == [0] * 5

    def test_union_of_per_author_rejections(self):
        # Paper 3 is rejected for A even though B stays under the limit.
        lists = [["A"], ["A"], ["A", "B"], ["B"]]
        assert all_reject(build_instance(lists), 2).tolist() == [1, 1, 0, 1]


class TestForwardReject:
    def test_t1_accepts_early_papers_first(self, t1):
        assert forward_reject(t1, 2).tolist() == [1, 1, 0, 1, 1]

    def test_no_rejections_above_max_load(self, t1):
        assert forward_reject(t1, 3).tolist() == [1] * 5

    def test_triangle_limit_one(self, triangle):
        assert forward_reject(triangle, 1).tolist() == [1, 0, 0]

    def test_limit_zero_rejects_everything(self, triangle):
        assert forward_reject(triangle, 0).tolist() == [0, 0, 0]


class TestBackwardReject:
    def test_t1_scan_from_last(self, t1):
        assert backward_reject(t1, 2).tolist() == [1, 1, 0, 1, 0]

    def test_no_rejections_above_max_load(self, t1):
        assert backward_reject(t1, 3).tolist() == [1] * 5

    def test_single_author_drops_latest(self):
        inst = build_instance([["a"], ["a"], ["a"]])
        assert backward_reject(inst, 2).tolist() == [1, 1, 0]

    def test_limit_zero_rejects_everything(self, t1):
        assert backward_reject(t1, 0).tolist() == [0] * 5


def test_forward_backward_divergence_witness(t1):
    # The two sequential policies are not equivalent: on T1 with b=2 the
    # forward scan keeps 4 papers while the backward scan keeps 3.
    fwd = forward_reject(t1, 2)
    bwd = backward_reject(t1, 2)
    assert fwd.tolist() == [1, 1, 0, 1, 1]
    assert bwd.tolist() == [1, 1, 0, 1, 0]
    assert int(fwd.sum()) == 4
    assert int(bwd.sum()) == 3


def test_all_policies_feasible_on_random_instances():
    rng = random.Random(11)
    for _ in range(1000):
        inst = build_instance(random_author_lists(rng))
        k1 = compute_stats(inst).max_papers_per_author
        for b in range(0, k1 + 2):
            for policy in (all_reject, forward_reject, backward_reject):
                x = policy(inst, b)
                assert check_feasible(inst, b, x)
                if b >= k1:
                    assert int(x.sum()) == inst.m


def test_policies_deterministic():
    rng = random.Random(12)
    for _ in range(50):
        inst = build_instance(random_author_lists(rng))
        for policy in (all_reject, forward_reject, backward_reject):
            a = policy(inst, 1)
            b = policy(inst, 1)
            assert np.array_equal(a, b)


def test_policy_kind_values():
    assert [p.value for p in PolicyKind] == ["all", "forward", "backward", "opt"]
