"""Staircase classes S(n), S*(n), S*_s(n): encoding, membership, parameters,
complement reflection and enumeration."""

from typing import Iterator

import numpy as np

from ngbound.config import ENUM_RANGE, ENUM_SYM_RANGE
from ngbound.models.matrix import DenseMatrix
from ngbound.models.staircase import Membership, ParamSix, ParamsEntry, StaircaseMatrix
from ngbound.utils.errors import CapExceededError, ContractViolation, ProfileError


def _canonical(mu: list[int]) -> tuple[int, ...]:
    """Lower mu_i = i to i - 1 unless mu_{i+1} = i needs it (1-indexed)."""
    out = list(mu)
    n = len(out)
    for i in range(n, 0, -1):
        if out[i - 1] == i and (i == n or out[i] != i):
            out[i - 1] = i - 1
    return tuple(out)


def _make(n: int, mu: tuple[int, ...]) -> StaircaseMatrix:
    return StaircaseMatrix.model_construct(n=n, mu=mu)


# ── Construction ───────────────────────────────────────────────────────


def from_profile(mu, n: int | None = None) -> StaircaseMatrix:
    """Validate a profile and return its canonical StaircaseMatrix."""
    mu = [int(m) for m in mu]
    n = len(mu) if n is None else n
    if len(mu) != n:
        raise ProfileError(f"profile has {len(mu)} entries for n={n}", index=min(len(mu), n))
    if n < 1:
        raise ProfileError("profile must be nonempty", index=0)
    for i, m in enumerate(mu):
        if not 0 <= m <= n:
            raise ProfileError(f"mu[{i}]={m} outside [0, {n}]", index=i)
        if i and m > mu[i - 1]:
            raise ProfileError(f"mu[{i}]={m} exceeds mu[{i - 1}]={mu[i - 1]}", index=i)
    return _make(n, _canonical(mu))


def from_dense(A) -> StaircaseMatrix:
    """Recover the canonical profile of a dense 0/1 staircase matrix."""
    a = np.asarray(A.to_numpy() if isinstance(A, DenseMatrix) else A)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ContractViolation(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.isin(a, (0, 1)).all():
        raise ContractViolation("staircase matrices have 0/1 entries")
    n = a.shape[0]
    widths = [int(np.flatnonzero(row).max()) + 1 if row.any() else 0 for row in a]
    mu = [0] * n
    for i in range(n, 0, -1):
        m = widths[i - 1]
        if m == i - 1 and i < n and mu[i] == i:
            m = i
        mu[i - 1] = m
    try:
        result = from_profile(mu, n)
    except ProfileError as exc:
        raise ContractViolation(f"matrix is not a staircase: {exc.message}") from exc
    if not np.array_equal(result.to_array(), a.astype(np.int8)):
        raise ContractViolation("matrix is not a staircase: a row is not a full prefix")
    return result


def from_graph(A) -> StaircaseMatrix:
    """Order a graph by nonincreasing degree and encode it.

    Raises ContractViolation unless the graph is a threshold graph.
    """
    a = np.asarray(A.to_numpy() if isinstance(A, DenseMatrix) else A)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or not np.array_equal(a, a.T):
        raise ContractViolation("from_graph needs a symmetric adjacency matrix")
    if np.any(np.diag(a) != 0):
        raise ContractViolation("adjacency matrix has loops")
    order = np.argsort(-a.sum(axis=1), kind="stable")
    try:
        return from_dense(a[np.ix_(order, order)])
    except ContractViolation as exc:
        raise ContractViolation(f"graph is not a threshold graph ({exc.message})") from exc


def split_graph(n: int, q: int) -> StaircaseMatrix:
    """K_q joined with N_{n-q}."""
    if not 1 <= q <= n:
        raise ContractViolation(f"split_graph needs 1 <= q <= n, got q={q}, n={n}")
    return from_profile([n] * q + [q] * (n - q), n)


def clique_union(n: int, m: int) -> StaircaseMatrix:
    """K_m plus n - m isolated vertices."""
    if not 1 <= m <= n:
        raise ContractViolation(f"clique_union needs 1 <= m <= n, got m={m}, n={n}")
    return from_profile([m] * m + [0] * (n - m), n)


def join_union(n: int, t: int, r1: int) -> StaircaseMatrix:
    """(K_{t-1} joined with N_{r1+2-t}) plus n - r1 - 1 isolated vertices."""
    size = r1 + 1
    if not (2 <= t <= size and size <= n):
        raise ContractViolation(f"join_union needs 2 <= t <= r1+1 <= n, got t={t}, r1={r1}, n={n}")
    return from_profile([size] * (t - 1) + [t - 1] * (size - t + 1) + [0] * (n - size), n)


# ── Membership ─────────────────────────────────────────────────────────


def _in_sstar(mu: tuple[int, ...]) -> bool:
    n = len(mu)
    return n >= 2 and mu[0] >= 2 and mu[1] >= 1 and mu[n - 2] <= n - 1 and mu[n - 1] <= n - 2


def is_symmetric(A: StaircaseMatrix) -> bool:
    a = A.to_array()
    return bool(np.array_equal(a, a.T))


def membership(A: StaircaseMatrix) -> Membership:
    in_sstar = _in_sstar(A.mu)
    return Membership(
        in_S=True,
        in_Sstar=in_sstar,
        in_Sstar_sym=in_sstar and is_symmetric(A),
    )


def require_sstar(A: StaircaseMatrix, what: str) -> None:
    if not _in_sstar(A.mu):
        raise ContractViolation(f"{what} needs a matrix in S*(n), got mu={list(A.mu)}")


def require_sstar_sym(A: StaircaseMatrix, what: str) -> None:
    require_sstar(A, what)
    if not is_symmetric(A):
        raise ContractViolation(f"{what} needs a symmetric matrix, got mu={list(A.mu)}")


# ── Reflection and parameters ──────────────────────────────────────────


def reflect_complement(A: StaircaseMatrix) -> StaircaseMatrix:
    """bar(a)_ij = 1 - a_{n-j+1, n-i+1} off the diagonal."""
    require_sstar(A, "reflect_complement")
    a = A.to_array()
    bar = 1 - a[::-1, ::-1].T
    np.fill_diagonal(bar, 0)
    return from_dense(bar)


def params(A: StaircaseMatrix) -> tuple[int, int, int]:
    """(c, v, s) with c the largest i such that r_1 + ... + r_i > i(i-1)."""
    require_sstar(A, "params")
    return params_from_row_sums(A.row_sums)


def params_from_row_sums(rows) -> tuple[int, int, int]:
    total = 0
    c, prefix_c = 0, 0
    for i, r in enumerate(rows, start=1):
        total += r
        if total > i * (i - 1):
            c, prefix_c = i, total
    if not 1 <= c < len(rows):
        raise ContractViolation(f"parameter c={c} outside [1, n-1]; row sums {list(rows)}")
    return c, int(rows[c]), prefix_c - c * (c - 1)


def full_params(A: StaircaseMatrix) -> ParamSix:
    c, v, s = params(A)
    cbar, vbar, sbar = params(reflect_complement(A))
    return ParamSix(c=c, v=v, s=s, cbar=cbar, vbar=vbar, sbar=sbar)


def params_entry(A: StaircaseMatrix) -> ParamsEntry:
    return ParamsEntry(n=A.n, mu=list(A.mu), membership=membership(A), params=full_params(A))


# ── Enumeration ────────────────────────────────────────────────────────


def _check_range(n: int, bounds: tuple[int, int], what: str) -> None:
    lo, hi = bounds
    if not lo <= n <= hi:
        raise CapExceededError(f"{what} supports {lo} <= n <= {hi}, got n={n}")


def sym_profiles(n: int, first: int | None = None) -> Iterator[tuple[int, ...]]:
    """Canonical profiles of S*_s(n) in lexicographically decreasing order.

    Row i is forced to mu_i = #{h < i : mu_h >= i} unless every earlier row
    reaches column i; then it may stop at i - 1 or extend to any column
    in (i, mu_{i-1}]. With ``first`` only profiles with mu_1 = first are made.
    """
    _check_range(n, ENUM_SYM_RANGE, "enumerate_Sstar_sym")
    mu = [0] * n

    def rows(i: int) -> Iterator[tuple[int, ...]]:
        if i > n:
            if mu[n - 2] <= n - 1 and mu[n - 1] <= n - 2:
                yield _canonical(mu)
            return
        reach = sum(1 for h in range(i - 1) if mu[h] >= i)
        if reach < i - 1:
            options = [reach]
        elif i == 1:
            options = list(range(n, 1, -1))
            if first is not None:
                options = [first] if 2 <= first <= n else []
        else:
            options = list(range(mu[i - 2], i, -1)) + [i - 1]
        for m in options:
            mu[i - 1] = m
            yield from rows(i + 1)

    yield from rows(1)


def enumerate_Sstar_sym(n: int, first: int | None = None) -> Iterator[StaircaseMatrix]:
    for mu in sym_profiles(n, first):
        yield _make(n, mu)


def enumerate_Sstar(n: int) -> Iterator[StaircaseMatrix]:
    """All canonical profiles of S*(n), lexicographically decreasing."""
    _check_range(n, ENUM_RANGE, "enumerate_Sstar")
    mu = [0] * n

    def rows(i: int) -> Iterator[tuple[int, ...]]:
        if i > n:
            yield tuple(mu)
            return
        if i >= 2 and mu[i - 2] == i - 1:
            # mu_{i-1} = i - 1 is canonical only when this row also reaches i - 1
            options = [i - 1]
        else:
            top = n if i == 1 else mu[i - 2]
            if i == n - 1:
                top = min(top, n - 1)
            elif i == n:
                top = min(top, n - 2)
            bottom = 2 if i == 1 else (1 if i == 2 else 0)
            options = list(range(top, bottom - 1, -1))
        for m in options:
            if i == n and m == n:
                continue
            mu[i - 1] = m
            yield from rows(i + 1)

    for mu_tuple in rows(1):
        if _canonical(list(mu_tuple)) == mu_tuple and _in_sstar(mu_tuple):
            yield _make(n, mu_tuple)
