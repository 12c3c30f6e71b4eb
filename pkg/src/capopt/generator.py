"""Synthetic instances with power-law author productivity.

Per-author submission counts in the real data are heavy-tailed, so the
generator drafts a target count for every author from a discrete power
law (exponent ``alpha``, truncated at the paper count), draws each
paper's author-list size from a truncated geometric, and fills the
lists by weighted sampling without replacement, weights following the
authors' remaining target slots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ingest import write_instance
from .model import InstanceStats, build_instance, compute_stats


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    n_authors: int
    m_papers: int
    alpha: float = 2.5
    mean_authors_per_paper: float = 3.0
    seed: int = 0

    def validate(self) -> "GeneratorConfig":
        if self.n_authors < 1:
            raise ConfigError(f"n_authors must be >= 1, got {self.n_authors}")
        if self.m_papers < 1:
            raise ConfigError(f"m_papers must be >= 1, got {self.m_papers}")
        if self.alpha <= 0:
            raise ConfigError(f"alpha must be positive, got {self.alpha}")
        if self.mean_authors_per_paper < 1:
            raise ConfigError(
                f"mean_authors_per_paper must be >= 1, got {self.mean_authors_per_paper}"
            )
        return self


def sample_author_lists(cfg: GeneratorConfig) -> list[list[str]]:
    """Per-paper author-label lists; deterministic for a fixed seed."""
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    n, m = cfg.n_authors, cfg.m_papers

    counts = np.arange(1, m + 1, dtype=float)
    weights = counts ** -cfg.alpha
    targets = rng.choice(counts, size=n, p=weights / weights.sum())

    p = min(1.0, 1.0 / cfg.mean_authors_per_paper)
    sizes = np.minimum(rng.geometric(p, size=m), n)

    remaining = targets.astype(float)
    lists: list[list[str]] = []
    for size in sizes:
        # exhausted authors stay pickable with negligible weight so a
        # paper can always fill its slots
        w = np.maximum(remaining, 1e-9)
        keys = rng.exponential(size=n) / w
        if size < n:
            picked = np.argpartition(keys, size)[:size]
        else:
            picked = np.arange(n)
        remaining[picked] -= 1.0
        lists.append([f"a{i + 1}" for i in sorted(picked)])
    return lists


def generate(cfg: GeneratorConfig, out_path) -> InstanceStats:
    """Write a generated instance file and report its realized statistics."""
    lists = sample_author_lists(cfg)
    write_instance(out_path, lists)
    return compute_stats(build_instance(lists))
