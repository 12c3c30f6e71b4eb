"""Desk-rejection policies currently used by conferences.

All three baselines resolve ties by submission order: when an author is
over the limit, the papers with the latest submission indices are the
ones sacrificed.  Each policy returns a 0/1 decision vector (1 = keep
the paper) that always satisfies the per-author limit.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .model import AuthorshipInstance, _check_limit


class PolicyKind(Enum):
    ALL_REJECT = "all"
    FORWARD_REJECT = "forward"
    BACKWARD_REJECT = "backward"
    OPT_REJECT = "opt"


def all_reject(inst: AuthorshipInstance, b: int) -> np.ndarray:
    """Reject, per over-limit author, their latest papers beyond the limit.

    The per-author rejection sets are unioned, so a paper rejected on
    behalf of one author is rejected outright even if its co-authors are
    under the limit.
    """
    _check_limit(b)
    x = np.ones(inst.m, dtype=np.int64)
    for papers in inst.papers_of:
        if len(papers) > b:
            # papers are sorted ascending; the tail holds the latest ones
            x[list(papers[b:])] = 0
    return x


def forward_reject(inst: AuthorshipInstance, b: int) -> np.ndarray:
    """Scan papers in submission order, keeping each one whose authors all
    still have room under the limit."""
    _check_limit(b)
    counts = np.zeros(inst.n, dtype=np.int64)
    x = np.zeros(inst.m, dtype=np.int64)
    for j, authors in enumerate(inst.authors_of):
        if all(counts[i] < b for i in authors):
            x[j] = 1
            for i in authors:
                counts[i] += 1
    return x


def backward_reject(inst: AuthorshipInstance, b: int) -> np.ndarray:
    """Scan papers from the latest submission backwards, rejecting each one
    that still has an author over the limit."""
    _check_limit(b)
    loads = np.array([len(p) for p in inst.papers_of], dtype=np.int64)
    x = np.ones(inst.m, dtype=np.int64)
    for j in range(inst.m - 1, -1, -1):
        authors = inst.authors_of[j]
        if any(loads[i] > b for i in authors):
            x[j] = 0
            for i in authors:
                loads[i] -= 1
    return x
