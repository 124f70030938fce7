"""Bound-monotone staircase rewrites.

Each rewrite is a schedule of single-cell flips on the dense 0/1 matrix.
Parameters are re-extracted after every flip; if a quantity that must stay
fixed moves, TransformError is raised instead of returning a wrong matrix.
Outputs are generally nonsymmetric members of S*(n).
"""

import numpy as np

from ngbound.config import BOUND_TOL, TRANSFORM_TOL
from ngbound.models.staircase import ParamSix, StaircaseMatrix
from ngbound.models.transforms import CellEdit, ChainResult, TransformTrace
from ngbound.services import bounds, staircase
from ngbound.utils.errors import ContractViolation, TransformError
from ngbound.utils.logging import log_warning


def _encode(a: np.ndarray) -> StaircaseMatrix | None:
    """Staircase in S*(n) for the array, or None."""
    try:
        A = staircase.from_dense(a)
    except ContractViolation:
        return None
    return A if staircase.membership(A).in_Sstar else None


def _flip(a: np.ndarray, i: int, j: int, edits: list[CellEdit]) -> np.ndarray:
    out = a.copy()
    old = int(out[i - 1, j - 1])
    out[i - 1, j - 1] = 1 - old
    edits.append(CellEdit(row=i, col=j, old=old, new=1 - old))
    return out


def _destination(a: np.ndarray, c: int, cbar: int) -> tuple[int, int] | None:
    """Addable cell in rows <= c and columns >= n - cbar + 1, rightmost column
    first, then bottom-most row, whose flip keeps the matrix in S*(n)."""
    n = a.shape[0]
    cells = [
        (i, j)
        for j in range(n, n - cbar, -1)
        for i in range(c, 0, -1)
        if i != j and a[i - 1, j - 1] == 0
    ]
    for i, j in cells:
        trial = a.copy()
        trial[i - 1, j - 1] = 1
        if _encode(trial) is not None:
            return i, j
    return None


def _fail(message: str, inequality: str) -> TransformError:
    return TransformError(f"{message}: {inequality}", inequality=inequality)


def _check_fixed(before: ParamSix, after: ParamSix, fields: tuple[str, ...], tag: str) -> None:
    for name in fields:
        if getattr(before, name) != getattr(after, name):
            raise _fail(
                f"{tag} changed a parameter it must keep",
                f"{name}: {getattr(before, name)} -> {getattr(after, name)}",
            )


# ── Padding the complement column ──────────────────────────────────────


def pad_complement_column(A: StaircaseMatrix) -> tuple[StaircaseMatrix, TransformTrace]:
    """Raise vbar to min(2cbar - sbar, n - c - 1) keeping c, v, s and cbar.

    Zeros go into column n - cbar from the bottom-most row i >= c + 2 that
    still has a 1 there, clearing that row's cells right of the column first.
    """
    staircase.require_sstar_sym(A, "pad_complement_column")
    n = A.n
    p = staircase.full_params(A)
    if p.c + p.cbar < n:
        raise _fail("pad_complement_column precondition", f"c + cbar = {p.c + p.cbar} < n = {n}")
    goal = min(2 * p.cbar - p.sbar, n - p.c - 1)
    if not p.vbar < goal:
        raise _fail("pad_complement_column precondition", f"vbar = {p.vbar} >= min(2cbar - sbar, n - c - 1) = {goal}")

    a = A.to_array()
    col = n - p.cbar
    edits: list[CellEdit] = []
    current = p
    while current.vbar != min(2 * current.cbar - current.sbar, n - current.c - 1):
        rows = [i for i in range(n, p.c + 1, -1) if a[i - 1, col - 1] == 1]
        if not rows:
            raise _fail("pad_complement_column stalled", f"no 1 left in column {col} below row {p.c + 1}")
        i = rows[0]
        j = int(np.flatnonzero(a[i - 1]).max()) + 1
        a = _flip(a, i, j, edits)
        result = _encode(a)
        if result is None:
            raise _fail("pad_complement_column left S*(n)", f"cell ({i},{j})")
        current = staircase.full_params(result)
        _check_fixed(p, current, ("c", "v", "s", "cbar"), "pad_complement_column")

    if current.sbar < p.sbar:
        raise _fail("pad_complement_column lowered sbar", f"{current.sbar} < {p.sbar}")
    result = staircase.from_dense(a)
    return result, TransformTrace(step="pad_column", before=p, after=current, moved_cells=edits)


# ── Shifting the corner row ────────────────────────────────────────────


def shift_corner_row(A: StaircaseMatrix, v_target: int) -> tuple[StaircaseMatrix, TransformTrace]:
    """Lower v to v_target by moving the 1 at (c+1, v) into rows <= c.

    Keeps c, s + v and the barred triple.
    """
    staircase.require_sstar(A, "shift_corner_row")
    n = A.n
    p = staircase.full_params(A)
    if not n - p.cbar <= v_target < p.v:
        raise _fail("shift_corner_row precondition", f"n - cbar = {n - p.cbar} <= v' = {v_target} < v = {p.v} fails")
    if p.vbar != n - p.c - 1:
        raise _fail("shift_corner_row precondition", f"vbar = {p.vbar} != n - c - 1 = {n - p.c - 1}")

    a = A.to_array()
    edits: list[CellEdit] = []
    current = p
    while current.v > v_target:
        a = _move(a, current.c + 1, current.v, current, edits, "shift_corner_row")
        after = staircase.full_params(staircase.from_dense(a))
        _check_fixed(p, after, ("c", "cbar", "vbar", "sbar"), "shift_corner_row")
        if after.v != current.v - 1 or after.s + after.v != p.s + p.v:
            raise _fail("shift_corner_row broke s + v", f"(v, s) = ({after.v}, {after.s}) from ({p.v}, {p.s})")
        current = after
    return staircase.from_dense(a), TransformTrace(step="shift_row", before=p, after=current, moved_cells=edits)


def _move(
    a: np.ndarray, i: int, j: int, p: ParamSix, edits: list[CellEdit], tag: str
) -> np.ndarray:
    if a[i - 1, j - 1] != 1:
        raise _fail(f"{tag} source cell is empty", f"a({i},{j}) = 0")
    removed = _flip(a, i, j, edits)
    try:
        staircase.from_dense(removed)
    except ContractViolation:
        raise _fail(f"{tag} source cell is not removable", f"cell ({i},{j})") from None
    target = _destination(removed, p.c, p.cbar)
    if target is None:
        raise _fail(f"{tag} found no destination", f"rows <= {p.c}, columns >= {removed.shape[0] - p.cbar + 1}")
    return _flip(removed, target[0], target[1], edits)


# ── Draining column v ──────────────────────────────────────────────────


def drain_column(A: StaircaseMatrix) -> tuple[StaircaseMatrix, TransformTrace]:
    """Move the bottom-most 1 of column v (rows >= c+1) into rows <= c until
    v = 2c - s or v = n - cbar.

    The target is v = max(2c - s, n - cbar). Stopping at v = n - cbar while
    2c - s is larger marks the trace stalled.
    """
    staircase.require_sstar(A, "drain_column")
    n = A.n
    p = staircase.full_params(A)
    if not n - p.cbar < p.v:
        raise _fail("drain_column precondition", f"n - cbar = {n - p.cbar} < v = {p.v} fails")
    if p.vbar != 2 * p.cbar - p.sbar:
        raise _fail("drain_column precondition", f"vbar = {p.vbar} != 2cbar - sbar = {2 * p.cbar - p.sbar}")

    a = A.to_array()
    edits: list[CellEdit] = []
    current = p
    while current.v != 2 * current.c - current.s and current.v != n - current.cbar:
        column = current.v
        rows = [i for i in range(n, current.c, -1) if a[i - 1, column - 1] == 1]
        a = _move(a, rows[0], column, current, edits, "drain_column")
        after = staircase.full_params(staircase.from_dense(a))
        _check_fixed(p, after, ("c", "cbar", "vbar", "sbar"), "drain_column")
        if after.s + after.v < current.s + current.v:
            raise _fail("drain_column lowered s + v", f"{after.s + after.v} < {current.s + current.v}")
        current = after

    stalled = current.v != max(2 * current.c - current.s, n - current.cbar)
    if stalled:
        log_warning(
            f"drain_column stopped at v = n - cbar = {current.v} with 2c - s = "
            f"{2 * current.c - current.s} (mu={list(A.mu)})"
        )
    trace = TransformTrace(step="drain_column", before=p, after=current, moved_cells=edits, stalled=stalled)
    return staircase.from_dense(a), trace


# ── Full normalization ─────────────────────────────────────────────────


def _phi_pair_sum(A: StaircaseMatrix) -> float:
    return bounds.phi(A) + bounds.phi(staircase.reflect_complement(A))


def normalize_chain(A: StaircaseMatrix) -> ChainResult:
    """Bring a symmetric A to v = n - cbar and vbar = n - c - 1.

    Works on bar A when v < n - cbar, pads the complement column, then
    shifts the corner row down to n - cbar. When 2cbar - sbar < n - c - 1
    after padding the chain stops there and the result is flagged as the
    slack regime, where phi(A) + phi(bar A) < rho0 is checked instead.
    """
    staircase.require_sstar_sym(A, "normalize_chain")
    n = A.n
    p = staircase.full_params(A)
    if p.c + p.cbar < n:
        raise ContractViolation(f"normalize_chain needs c + cbar >= n, got {p.c + p.cbar} < {n}")
    k = n // 3
    if n % 3 == 2 and p.c + p.cbar == 4 * k + 1:
        raise ContractViolation(f"normalize_chain excludes (n, c + cbar) = (3k+2, 4k+1), got ({n}, {4 * k + 1})")

    rho_sum = bounds.spectral_radius(A) + bounds.spectral_radius(staircase.reflect_complement(A))
    target = bounds.rho0_value(n)
    phi_sums = [_phi_pair_sum(A)]

    work = A
    swapped = p.v < n - p.cbar
    if swapped:
        work = staircase.reflect_complement(A)
        p = p.swapped()

    traces: list[TransformTrace] = []
    if p.vbar < min(2 * p.cbar - p.sbar, n - p.c - 1):
        work, trace = pad_complement_column(work)
        traces.append(trace)
        p = trace.after
        phi_sums.append(_phi_pair_sum(work))

    slack = 2 * p.cbar - p.sbar < n - p.c - 1
    slack_below = None
    if slack:
        _, _, slack_below = bounds.slack_regime_bound(n, p)
    elif p.v > n - p.cbar:
        work, trace = shift_corner_row(work, n - p.cbar)
        traces.append(trace)
        p = trace.after
        phi_sums.append(_phi_pair_sum(work))

    values = [rho_sum] + phi_sums
    chain_holds = rho_sum <= phi_sums[0] + BOUND_TOL and all(
        later >= earlier - TRANSFORM_TOL for earlier, later in zip(phi_sums, phi_sums[1:])
    )
    if not chain_holds:
        log_warning(f"normalize_chain values decreased for mu={list(A.mu)}: {values}")

    return ChainResult(
        n=n,
        start_mu=list(A.mu),
        result_mu=list(work.mu),
        swapped=swapped,
        slack_regime=slack,
        traces=traces,
        rho_sum=rho_sum,
        rho0=target,
        phi_sums=phi_sums,
        reaches_rho0=rho_sum >= target - BOUND_TOL,
        chain_holds=chain_holds,
        normalized=p.v == n - p.cbar and p.vbar == n - p.c - 1,
        slack_below_rho0=slack_below,
    )
