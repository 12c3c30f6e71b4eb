"""LP relaxation of the acceptance-maximization problem and its solver.

The model maximizes the number of kept papers subject to one capacity
row per constrained author, with every variable boxed to [0, 1].  It is
solved by a self-contained primal simplex that handles variable upper
bounds directly (bound flips instead of explicit box rows), prices with
Dantzig's rule, and falls back to Bland's rule after a degeneracy stall.
The constraint graph usually splits into many small co-authorship
clusters, so the solver decomposes the model into connected components
and runs the dense tableau per component.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import AuthorshipInstance, _check_limit

PIVOT_TOL = 1e-9
SNAP_TOL = 1e-7

# Refresh reduced costs from scratch this often to cap numerical drift.
_REFRESH_EVERY = 128


class IterationLimitError(RuntimeError):
    """The simplex failed to terminate within its pivot budget."""


@dataclass(frozen=True)
class LpModel:
    """Capacity rows over 0/1 coefficient sets; objective is the plain sum."""

    num_vars: int
    rows: tuple[tuple[int, ...], ...]
    capacities: tuple[int, ...]
    row_labels: tuple[str, ...] = ()


@dataclass(frozen=True)
class FractionalSolution:
    values: np.ndarray = field(repr=False)
    objective: float
    fractional: tuple[int, ...]


def as_fractional(values: np.ndarray, snap_tol: float = SNAP_TOL) -> FractionalSolution:
    """Snap near-integral entries, clamp into [0, 1], and record the rest."""
    v = np.asarray(values, dtype=float).copy()
    v[np.abs(v) <= snap_tol] = 0.0
    v[np.abs(v - 1.0) <= snap_tol] = 1.0
    np.clip(v, 0.0, 1.0, out=v)
    fractional = tuple(int(j) for j in np.flatnonzero((v > 0.0) & (v < 1.0)))
    return FractionalSolution(values=v, objective=float(v.sum()), fractional=fractional)


def build_lp(inst: AuthorshipInstance, b: int, *, keep_redundant: bool = False) -> LpModel:
    """One row per author; authors with at most ``b`` papers can never bind
    their constraint and are omitted unless ``keep_redundant`` is set."""
    _check_limit(b)
    rows = []
    labels = []
    for i, papers in enumerate(inst.papers_of):
        if len(papers) > b or (keep_redundant and papers):
            rows.append(tuple(papers))
            labels.append(inst.author_labels[i])
    return LpModel(
        num_vars=inst.m,
        rows=tuple(rows),
        capacities=tuple(int(b) for _ in rows),
        row_labels=tuple(labels),
    )


def dump_lp(model: LpModel) -> str:
    """Human-readable inequality listing, one constraint per line."""
    lines = ["max " + " + ".join(f"x{j + 1}" for j in range(model.num_vars))]
    for idxs, cap in zip(model.rows, model.capacities):
        lines.append(" + ".join(f"x{j + 1}" for j in idxs) + f" <= {cap}")
    return "\n".join(lines)


def solve_lp(
    model: LpModel, tol: float = PIVOT_TOL, *, snap_tol: float = SNAP_TOL
) -> FractionalSolution:
    """Optimal basic solution of the relaxation, deterministic per model.

    Variables outside every row sit at their upper bound; zero-capacity
    rows are presolved to fix their variables at zero; the remaining
    components are solved independently.
    """
    values = np.ones(model.num_vars, dtype=float)

    # Presolve: a zero-capacity row pins all of its variables to zero.
    forced_zero = set()
    for idxs, cap in zip(model.rows, model.capacities):
        if cap == 0:
            forced_zero.update(idxs)
    for j in forced_zero:
        values[j] = 0.0
    live_rows = [
        (tuple(j for j in idxs if j not in forced_zero), cap)
        for idxs, cap in zip(model.rows, model.capacities)
        if cap > 0
    ]
    live_rows = [(idxs, cap) for idxs, cap in live_rows if idxs]

    constrained = sorted({j for idxs, _ in live_rows for j in idxs})
    for comp_vars, comp_rows in _components(constrained, live_rows):
        local = {j: k for k, j in enumerate(comp_vars)}
        rows = [tuple(local[j] for j in idxs) for idxs, _ in comp_rows]
        caps = np.array([cap for _, cap in comp_rows], dtype=float)
        x = _simplex_component(len(comp_vars), rows, caps, tol)
        values[comp_vars] = x
    return as_fractional(values, snap_tol)


def _components(var_ids, rows):
    """Group variables and rows by connectivity through shared variables."""
    parent = {j: j for j in var_ids}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for idxs, _ in rows:
        root = find(idxs[0])
        for j in idxs[1:]:
            parent[find(j)] = root

    groups: dict[int, list[int]] = {}
    for j in var_ids:
        groups.setdefault(find(j), []).append(j)
    row_groups: dict[int, list] = {root: [] for root in groups}
    for idxs, cap in rows:
        row_groups[find(idxs[0])].append((idxs, cap))
    for root in sorted(groups):
        yield sorted(groups[root]), row_groups[root]


def _simplex_component(nvars, rows, caps, tol):
    """Dense bounded-variable primal simplex on one connected component.

    Tableau columns are the structural variables followed by one slack
    per row; nonbasic variables rest at either bound and re-enter via
    bound flips when the ratio test allows it.
    """
    nrows = len(rows)
    ncols = nvars + nrows
    T = np.zeros((nrows, ncols))
    for r, idxs in enumerate(rows):
        T[r, list(idxs)] = 1.0
        T[r, nvars + r] = 1.0
    c = np.zeros(ncols)
    c[:nvars] = 1.0
    u = np.full(ncols, np.inf)
    u[:nvars] = 1.0

    basis = np.arange(nvars, ncols)
    in_basis = np.zeros(ncols, dtype=bool)
    in_basis[nvars:] = True
    at_upper = np.zeros(ncols, dtype=bool)
    xB = caps.astype(float).copy()

    d = c - c[basis] @ T
    bland = False
    stall = 0
    max_pivots = 1000 + 50 * ncols
    for pivot_count in range(max_pivots):
        if pivot_count % _REFRESH_EVERY == 0:
            d = c - c[basis] @ T
        eligible = (~in_basis) & (
            ((~at_upper) & (d > tol)) | (at_upper & (d < -tol))
        )
        if not eligible.any():
            break
        if bland:
            j = int(np.flatnonzero(eligible)[0])
        else:
            j = int(np.argmax(np.where(eligible, np.abs(d), -1.0)))
        s = -1.0 if at_upper[j] else 1.0
        col = s * T[:, j]

        ub_basis = u[basis]
        grow = col < -tol
        shrink = col > tol
        lim = np.full(nrows, np.inf)
        lim[shrink] = xB[shrink] / col[shrink]
        can_hit_upper = grow & np.isfinite(ub_basis)
        lim_up = (ub_basis[can_hit_upper] - xB[can_hit_upper]) / -col[can_hit_upper]
        lim[can_hit_upper] = np.minimum(lim[can_hit_upper], lim_up)
        np.maximum(lim, 0.0, out=lim)

        if nrows:
            r = int(np.argmin(lim))
            if bland:
                tied = np.flatnonzero(lim <= lim[r] + tol)
                r = int(tied[np.argmin(basis[tied])])
            t_row = float(lim[r])
        else:
            t_row = np.inf

        if np.isfinite(u[j]) and u[j] <= t_row:
            xB -= u[j] * col
            at_upper[j] = not at_upper[j]
            gain = u[j] * abs(d[j])
        elif not np.isfinite(t_row):
            raise IterationLimitError("unbounded improving direction in a boxed model")
        else:
            t = t_row
            xB -= t * col
            leave = int(basis[r])
            # Leaving status: shrinking rows hit zero, growing rows hit the bound.
            at_upper[leave] = bool(grow[r])
            in_basis[leave] = False
            xB[r] = t if s > 0 else u[j] - t
            basis[r] = j
            in_basis[j] = True
            at_upper[j] = False
            piv = T[r, j]
            T[r] /= piv
            colj = T[:, j].copy()
            colj[r] = 0.0
            T -= np.outer(colj, T[r])
            dj = d[j]
            d -= dj * T[r]
            gain = t * abs(dj)

        if gain <= 1e-12:
            stall += 1
            if stall >= 100:
                bland = True
        else:
            stall = 0
    else:
        raise IterationLimitError(f"no optimum after {max_pivots} pivots")

    x = np.zeros(ncols)
    rest_upper = at_upper & ~in_basis & np.isfinite(u)
    x[rest_upper] = u[rest_upper]
    x[basis] = xB
    return x[:nvars]
