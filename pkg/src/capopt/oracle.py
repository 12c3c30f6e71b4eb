"""Exact solvers for the acceptance-maximization integer program.

Meant for small instances: ``brute_force_optimum`` enumerates every
0/1 vector and is the reference the branch-and-bound in
``exact_optimum`` is validated against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lp import LpModel, solve_lp
from .model import AuthorshipInstance, _check_limit
from .policies import forward_reject

_POP16 = np.array([bin(v).count("1") for v in range(1 << 16)], dtype=np.int64)


class TooLargeError(ValueError):
    """Instance exceeds the solver's paper-count cap."""


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class OracleResult:
    x: np.ndarray
    accepted: int
    certified: bool
    nodes: int


def _popcount(v: np.ndarray) -> np.ndarray:
    return _POP16[v & 0xFFFF] + _POP16[v >> 16]


def brute_force_optimum(inst: AuthorshipInstance, b: int) -> int:
    """Best accepted count by exhaustive enumeration of all 2^m vectors."""
    _check_limit(b)
    if inst.m > 22:
        raise TooLargeError(f"brute force capped at 22 papers, got {inst.m}")
    if inst.m == 0:
        return 0
    codes = np.arange(1 << inst.m, dtype=np.uint32)
    feasible = np.ones(codes.shape, dtype=bool)
    for papers in inst.papers_of:
        mask = np.uint32(sum(1 << j for j in papers))
        feasible &= _popcount(codes & mask) <= b
    return int(_popcount(codes[feasible]).max())


def exact_optimum(
    inst: AuthorshipInstance,
    b: int,
    *,
    node_budget: int = 1_000_000,
    m_cap: int = 40,
) -> OracleResult:
    """Provably optimal decision vector via LP-bounded branch and bound.

    Search runs in two passes sharing one node budget: the first proves
    the optimal count, branching on the free paper with the largest LP
    value; the second walks papers in submission order, accept-first,
    to pin down the lexicographically largest optimal vector (the one
    preferring earlier submissions).  If the budget runs out during the
    first pass the best incumbent is returned with ``certified=False``.
    """
    _check_limit(b)
    if m_cap is not None and inst.m > m_cap:
        raise TooLargeError(
            f"instance has {inst.m} papers, above the cap of {m_cap};"
            " pass a larger m_cap to override"
        )
    if inst.m == 0:
        return OracleResult(np.zeros(0, dtype=np.int64), 0, True, 0)

    authors_of = inst.authors_of
    state = {"nodes": 0}

    def tick():
        state["nodes"] += 1
        if state["nodes"] > node_budget:
            raise _BudgetExhausted

    def residual_lp(free, cap):
        deg: dict[int, int] = {}
        for j in free:
            for i in authors_of[j]:
                deg[i] = deg.get(i, 0) + 1
        pos = {j: k for k, j in enumerate(free)}
        rows = []
        caps = []
        for i, count in sorted(deg.items()):
            if count > cap[i]:
                rows.append(tuple(pos[j] for j in inst.papers_of[i] if j in pos))
                caps.append(int(cap[i]))
        if not rows:
            return None  # residual is unconstrained: accept everything
        model = LpModel(num_vars=len(free), rows=tuple(rows), capacities=tuple(caps))
        return solve_lp(model)

    seed = forward_reject(inst, b)
    best = {"count": int(seed.sum()), "accepted": tuple(np.flatnonzero(seed))}

    def record(count, accepted):
        if count > best["count"]:
            best["count"] = count
            best["accepted"] = tuple(accepted)

    def search(free, cap, acc, accepted):
        tick()
        free = [j for j in free if all(cap[i] > 0 for i in authors_of[j])]
        if acc + len(free) <= best["count"]:
            return
        frac = residual_lp(free, cap)
        if frac is None:
            record(acc + len(free), accepted + free)
            return
        if math.floor(acc + frac.objective + 1e-6) <= best["count"]:
            return
        if not frac.fractional:
            chosen = [free[k] for k in np.flatnonzero(frac.values > 0.5)]
            record(acc + len(chosen), accepted + chosen)
            return
        by_value = max(frac.fractional, key=lambda k: (frac.values[k], -k))
        l = free[by_value]
        rest = [j for j in free if j != l]
        cap_after = cap.copy()
        for i in authors_of[l]:
            cap_after[i] -= 1
        search(rest, cap_after, acc + 1, accepted + [l])
        search(rest, cap, acc, accepted)

    def lexi(free, cap, acc):
        tick()
        if acc + len(free) < best["count"]:
            return None
        if not free:
            return [] if acc == best["count"] else None
        frac = residual_lp(free, cap)
        if frac is None:
            return list(free) if acc + len(free) == best["count"] else None
        if math.floor(acc + frac.objective + 1e-6) < best["count"]:
            return None
        j, rest = free[0], free[1:]
        if all(cap[i] > 0 for i in authors_of[j]):
            cap_after = cap.copy()
            for i in authors_of[j]:
                cap_after[i] -= 1
            sub = lexi(rest, cap_after, acc + 1)
            if sub is not None:
                return [j] + sub
        return lexi(rest, cap, acc)

    cap0 = np.full(inst.n, int(b), dtype=np.int64)
    free0 = list(range(inst.m))
    certified = False
    try:
        search(free0, cap0, 0, [])
        certified = True  # count proven; canonicalization below is best-effort
        canonical = lexi(free0, cap0, 0)
        if canonical is not None:
            best["accepted"] = tuple(canonical)
    except _BudgetExhausted:
        pass

    x = np.zeros(inst.m, dtype=np.int64)
    x[list(best["accepted"])] = 1
    return OracleResult(
        x=x, accepted=best["count"], certified=certified, nodes=state["nodes"]
    )
