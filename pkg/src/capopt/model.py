"""Author-paper incidence instances and the safe-author reduction.

An instance stores the 0/1 authorship incidence in both directions:
``authors_of[j]`` lists the authors of paper ``j`` and ``papers_of[i]``
lists the papers of author ``i``.  Papers are indexed in submission
order (index 0 is the earliest submission), which is the order every
tie-breaking rule in this package refers to.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class EmptyPaperError(ValueError):
    """A paper has no authors left after deduplication."""


class LengthMismatchError(ValueError):
    """A decision vector does not match the instance's paper count."""


@dataclass(frozen=True)
class AuthorshipInstance:
    """Immutable bidirectional author-paper incidence.

    Both directions encode the same incidence; index lists are sorted
    ascending and free of duplicates.  Instances are safe to share
    across threads.
    """

    authors_of: tuple[tuple[int, ...], ...]
    papers_of: tuple[tuple[int, ...], ...]
    author_labels: tuple[str, ...]
    paper_labels: tuple[str, ...]

    @property
    def m(self) -> int:
        return len(self.authors_of)

    @property
    def n(self) -> int:
        return len(self.papers_of)

    @property
    def nnz(self) -> int:
        return sum(len(a) for a in self.authors_of)


@dataclass(frozen=True)
class InstanceStats:
    n: int
    m: int
    nnz: int
    max_papers_per_author: int
    max_authors_per_paper: int
    mean_papers_per_author: float


@dataclass(frozen=True)
class ReducedInstance:
    """Instance restricted to at-risk papers and over-limit authors.

    ``paper_map[k]`` is the original index of inner paper ``k``;
    ``fixed_accepted`` holds every original paper whose authors are all
    within the limit, which therefore faces no rejection risk.
    """

    inner: AuthorshipInstance
    paper_map: tuple[int, ...]
    fixed_accepted: tuple[int, ...]
    b: int


def _check_limit(b: int) -> int:
    if b < 0:
        raise ValueError(f"submission limit must be >= 0, got {b}")
    return int(b)


def build_instance(
    paper_author_lists: Sequence[Iterable[str]],
    paper_labels: Sequence[str] | None = None,
    *,
    drop_empty: bool = False,
) -> AuthorshipInstance:
    """Build an instance from per-paper author-label lists.

    Author indices are assigned by first appearance, so the result is a
    deterministic function of the input order.  Duplicate labels within
    one paper are collapsed silently.  A paper that is empty after
    deduplication raises :class:`EmptyPaperError` unless ``drop_empty``
    is set, in which case it is dropped with a warning.
    """
    if paper_labels is not None and len(paper_labels) != len(paper_author_lists):
        raise LengthMismatchError(
            f"{len(paper_labels)} paper labels for {len(paper_author_lists)} papers"
        )

    ordinal: dict[str, int] = {}
    authors_of: list[tuple[int, ...]] = []
    kept_labels: list[str] = []
    dropped = 0
    for pos, labels in enumerate(paper_author_lists):
        unique = list(dict.fromkeys(labels))
        if not unique:
            if drop_empty:
                dropped += 1
                continue
            raise EmptyPaperError(f"paper {pos} has no authors after deduplication")
        ids = []
        for label in unique:
            if label not in ordinal:
                ordinal[label] = len(ordinal)
            ids.append(ordinal[label])
        authors_of.append(tuple(sorted(ids)))
        if paper_labels is not None:
            kept_labels.append(str(paper_labels[pos]))
    if dropped:
        warnings.warn(f"dropped {dropped} paper(s) with no authors", stacklevel=2)

    papers_of: list[list[int]] = [[] for _ in range(len(ordinal))]
    for j, ids in enumerate(authors_of):
        for i in ids:
            papers_of[i].append(j)

    if paper_labels is None:
        kept_labels = [str(j + 1) for j in range(len(authors_of))]
    return AuthorshipInstance(
        authors_of=tuple(authors_of),
        papers_of=tuple(tuple(p) for p in papers_of),
        author_labels=tuple(ordinal),
        paper_labels=tuple(kept_labels),
    )


def compute_stats(inst: AuthorshipInstance) -> InstanceStats:
    nnz = inst.nnz
    return InstanceStats(
        n=inst.n,
        m=inst.m,
        nnz=nnz,
        max_papers_per_author=max((len(p) for p in inst.papers_of), default=0),
        max_authors_per_paper=max((len(a) for a in inst.authors_of), default=0),
        mean_papers_per_author=nnz / inst.n if inst.n else 0.0,
    )


def check_feasible(inst: AuthorshipInstance, b: int, x) -> bool:
    """True iff every author has at most ``b`` accepted papers under ``x``.

    The count is exact integer arithmetic; ``x`` may be any 0/1 sequence
    of length ``inst.m``.
    """
    _check_limit(b)
    xa = np.asarray(x)
    if xa.shape != (inst.m,):
        raise LengthMismatchError(f"decision vector has shape {xa.shape}, expected ({inst.m},)")
    xi = xa.astype(np.int64)
    return all(int(xi[list(papers)].sum()) <= b for papers in inst.papers_of)


def reduce_instance(inst: AuthorshipInstance, b: int) -> ReducedInstance:
    """Drop safe authors and force-accept papers with no over-limit author.

    Only authors with more than ``b`` papers can ever bind the limit, so
    papers without such an author are accepted outright and the rest form
    a smaller instance whose constraint rows are the over-limit authors.
    """
    _check_limit(b)
    over = {i for i, papers in enumerate(inst.papers_of) if len(papers) > b}
    at_risk = sorted({j for i in over for j in inst.papers_of[i]})
    at_risk_set = set(at_risk)
    fixed = tuple(j for j in range(inst.m) if j not in at_risk_set)
    inner = build_instance(
        [
            [inst.author_labels[i] for i in inst.authors_of[j] if i in over]
            for j in at_risk
        ],
        paper_labels=[inst.paper_labels[j] for j in at_risk],
    )
    return ReducedInstance(inner=inner, paper_map=tuple(at_risk), fixed_accepted=fixed, b=int(b))


def lift_decision(red: ReducedInstance, inner_x) -> np.ndarray:
    """Map a decision on the reduced instance back to the original papers."""
    xa = np.asarray(inner_x)
    if xa.shape != (red.inner.m,):
        raise LengthMismatchError(
            f"inner decision vector has shape {xa.shape}, expected ({red.inner.m},)"
        )
    x = np.ones(len(red.paper_map) + len(red.fixed_accepted), dtype=np.int64)
    if red.paper_map:
        x[list(red.paper_map)] = xa.astype(np.int64)
    return x
