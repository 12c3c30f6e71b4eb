"""Rounding of fractional relaxation points and the full optimizer.

``max_rounding`` repeatedly promotes the largest fractional entry to 1
and, for each author this pushes over the limit, demotes that author's
cheapest fractional papers to 0 until the limit holds again.  Promotion
ties go to the earliest submission; demotion removes the least value
first (ties to the latest submission), sacrificing as little of the
relaxation objective as possible.
"""

from __future__ import annotations

import numpy as np

from .lp import FractionalSolution, build_lp, solve_lp
from .model import (
    AuthorshipInstance,
    LengthMismatchError,
    _check_limit,
    check_feasible,
    lift_decision,
    reduce_instance,
)

LOAD_TOL = 1e-7


class InfeasibleInputError(ValueError):
    """The fractional input violates an author limit before rounding."""


class RoundingError(RuntimeError):
    """Internal invariant failure: the rounded vector broke a limit."""


def max_rounding(
    frac: FractionalSolution,
    inst: AuthorshipInstance,
    b: int,
    *,
    tol: float = LOAD_TOL,
) -> np.ndarray:
    """Convert a feasible fractional point into a feasible 0/1 vector.

    Entries that are already integral are never touched.  Load checks
    compare with ``tol`` slack on the fractional side; the final result
    is re-verified in exact integer arithmetic.
    """
    _check_limit(b)
    x = np.asarray(frac.values, dtype=float).copy()
    if x.shape != (inst.m,):
        raise LengthMismatchError(f"fractional vector has shape {x.shape}, expected ({inst.m},)")

    for papers in inst.papers_of:
        if float(x[list(papers)].sum()) > b + tol:
            raise InfeasibleInputError("input exceeds an author limit before rounding")

    pending = {j for j in range(inst.m) if tol < x[j] < 1.0 - tol}
    while pending:
        l = max(pending, key=lambda j: (x[j], -j))
        x[l] = 1.0
        pending.discard(l)
        for i in inst.authors_of[l]:
            papers = list(inst.papers_of[i])
            load = float(x[papers].sum())
            if load <= b + tol:
                continue
            for j in sorted(
                (p for p in papers if p in pending), key=lambda p: (x[p], -p)
            ):
                load -= x[j]
                x[j] = 0.0
                pending.discard(j)
                if load <= b + tol:
                    break

    out = np.rint(x).astype(np.int64)
    if not check_feasible(inst, b, out):
        raise RoundingError("rounded vector violates an author limit")
    return out


def opt_reject(inst: AuthorshipInstance, b: int) -> np.ndarray:
    """Acceptance-maximizing decision: reduce, relax, round, lift."""
    _check_limit(b)
    red = reduce_instance(inst, b)
    if red.inner.m == 0:
        return lift_decision(red, np.zeros(0, dtype=np.int64))
    frac = solve_lp(build_lp(red.inner, b))
    inner_x = max_rounding(frac, red.inner, b)
    return lift_decision(red, inner_x)
