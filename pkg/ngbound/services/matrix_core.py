"""Dense numerical kernels: eigenvalues, Perron values, characteristic
polynomials, real-root isolation, quotients and Kronecker sums.

Every function accepts a DenseMatrix or anything numpy can turn into a
square float array. Results are plain floats, numpy arrays or the
pydantic Polynomial/DenseMatrix models.
"""

import math

import numpy as np
from numpy.polynomial import polynomial as P

from ngbound.config import (
    BISECT_MAX_STEPS,
    BISECT_WIDTH,
    CHAR_POLY_FALLBACK_ORDER,
    CHAR_POLY_MAX_ORDER,
    JACOBI_MAX_SWEEPS,
    JACOBI_OFF_RATIO,
    POWER_ITER_MAX,
    POWER_ITER_TOL,
    QUOTIENT_TOL,
    STURM_PRUNE_ABS,
    STURM_PRUNE_REL,
    SYMMETRY_TOL,
)
from ngbound.models.matrix import DenseMatrix, Partition, Polynomial
from ngbound.utils.errors import CapExceededError, ContractViolation, NoRealEigenvalueError
from ngbound.utils.logging import log_warning


def as_array(M) -> np.ndarray:
    """Coerce to a finite square float array or raise ContractViolation."""
    if isinstance(M, DenseMatrix):
        return M.to_numpy()
    a = np.asarray(M, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ContractViolation(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ContractViolation("matrix has non-finite entries")
    return a


def _require_symmetric(a: np.ndarray) -> None:
    gap = float(np.max(np.abs(a - a.T)))
    if gap > SYMMETRY_TOL:
        raise ContractViolation(f"matrix is not symmetric (max |a_ij - a_ji| = {gap:.3e})")


def _coeff_list(p) -> list[float]:
    coeffs = p.coeffs if isinstance(p, Polynomial) else list(np.asarray(p, dtype=float))
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


# ── Symmetric eigenvalues ──────────────────────────────────────────────


def jacobi_eigenvalues(A) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations."""
    a = as_array(A).copy()
    _require_symmetric(a)
    a = (a + a.T) / 2
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    if n == 1 or scale == 0.0:
        return np.sort(np.diag(a).copy())
    negligible = np.finfo(float).eps * scale

    for _ in range(JACOBI_MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < JACOBI_OFF_RATIO * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= negligible:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
    else:
        log_warning(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps (n={n})")
    return np.sort(np.diag(a).copy())


def sym_eigen_max(A) -> float:
    """Largest eigenvalue of a symmetric matrix."""
    return float(jacobi_eigenvalues(A)[-1])


def batch_sym_eigen_max(stack: np.ndarray) -> np.ndarray:
    """Largest eigenvalue of each matrix in a (batch, n, n) stack of symmetric matrices."""
    stack = np.asarray(stack, dtype=float)
    if stack.shape[0] == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(stack)[..., -1]


# ── Perron value ───────────────────────────────────────────────────────


def spectral_radius_nonneg(A) -> float:
    """Spectral radius of a nonnegative matrix.

    Power iteration on A + I from the all-ones vector. The shift makes the
    Perron root strictly dominant in modulus, so periodic (bipartite)
    matrices converge too. Stalls fall back to root isolation on the
    characteristic polynomial for small orders.
    """
    a = as_array(A)
    if (a < 0).any():
        raise ContractViolation("spectral_radius_nonneg needs a nonnegative matrix")
    n = a.shape[0]
    b = a + np.eye(n)
    x = np.ones(n) / math.sqrt(n)
    lam = 1.0
    for _ in range(POWER_ITER_MAX):
        y = b @ x
        lam = float(x @ y)
        if float(np.linalg.norm(y - lam * x)) <= POWER_ITER_TOL * max(1.0, lam):
            return lam - 1.0
        x = y / float(np.linalg.norm(y))

    log_warning(f"Power iteration stalled (n={n}, estimate={lam - 1.0:.12g}); falling back")
    if n <= CHAR_POLY_FALLBACK_ORDER:
        return rho_r(a)
    return float(np.max(np.abs(np.linalg.eigvals(a))))


# ── Characteristic polynomial ──────────────────────────────────────────


def char_poly(M) -> Polynomial:
    """det(xI - M) by the Faddeev-LeVerrier recurrence.

    Integer matrices run the recurrence in exact integer arithmetic, so the
    coefficients of 0/1 and small integer matrices come out exact.
    """
    a = as_array(M)
    n = a.shape[0]
    if n > CHAR_POLY_MAX_ORDER:
        raise CapExceededError(f"char_poly supports n <= {CHAR_POLY_MAX_ORDER}, got {n}")

    integral = bool(np.all(a == np.round(a)))
    if integral:
        work = np.array([[int(round(x)) for x in row] for row in a], dtype=object)
        eye = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    else:
        work = a
        eye = np.eye(n)

    coeffs: list = [0] * (n + 1)
    coeffs[n] = 1
    m = eye * 0
    for k in range(1, n + 1):
        m = work @ m + coeffs[n - k + 1] * eye
        trace = sum((work @ m)[i, i] for i in range(n))
        coeffs[n - k] = -(trace // k) if integral else -trace / k
    return Polynomial(coeffs=[float(c) for c in coeffs])


# ── Real roots ─────────────────────────────────────────────────────────


def _prune(coeffs: np.ndarray, scale: float) -> np.ndarray:
    cutoff = max(STURM_PRUNE_ABS, STURM_PRUNE_REL * scale)
    coeffs = np.where(np.abs(coeffs) <= cutoff, 0.0, coeffs)
    return P.polytrim(coeffs)


def sturm_chain(p) -> list[np.ndarray]:
    """Sturm sequence of p, each link scaled to unit max coefficient."""
    p0 = np.array(_coeff_list(p), dtype=float)
    if len(p0) == 1:
        return [p0]
    p0 = p0 / np.max(np.abs(p0))
    chain = [p0]
    p1 = P.polyder(p0)
    chain.append(p1 / np.max(np.abs(p1)))
    while len(chain[-1]) > 1:
        _, rem = P.polydiv(chain[-2], chain[-1])
        rem = _prune(-rem, max(np.max(np.abs(chain[-2])), 1.0))
        if len(rem) == 1 and rem[0] == 0.0:
            break
        chain.append(rem / np.max(np.abs(rem)))
    return chain


def _variations(chain: list[np.ndarray], x: float) -> int:
    signs = [v for v in (float(P.polyval(x, link)) for link in chain) if v != 0.0]
    return sum(1 for u, w in zip(signs, signs[1:]) if (u < 0) != (w < 0))


def count_real_roots(p, lo: float, hi: float) -> int:
    """Number of distinct real roots of p in (lo, hi]."""
    chain = sturm_chain(p)
    return _variations(chain, lo) - _variations(chain, hi)


def largest_real_root(p, lo: float, hi: float) -> float | None:
    """Largest real root of p in [lo, hi], or None when there is none.

    Bisection keeps the invariant "at least one root in (a, b]" using
    Sturm counts, so it is not fooled by even-multiplicity roots.
    """
    if not lo < hi:
        raise ContractViolation(f"largest_real_root needs lo < hi, got [{lo}, {hi}]")
    coeffs = _coeff_list(p)
    if len(coeffs) <= 1:
        return None
    if P.polyval(hi, coeffs) == 0.0:
        return float(hi)

    chain = sturm_chain(coeffs)
    if _variations(chain, lo) - _variations(chain, hi) <= 0:
        return float(lo) if P.polyval(lo, coeffs) == 0.0 else None

    a, b = float(lo), float(hi)
    for _ in range(BISECT_MAX_STEPS):
        width = max(BISECT_WIDTH, 4 * np.finfo(float).eps * max(abs(a), abs(b)))
        if b - a <= width:
            break
        mid = (a + b) / 2
        if _variations(chain, mid) - _variations(chain, b) >= 1:
            a = mid
        else:
            b = mid
    else:
        log_warning(f"Sturm bisection gave up after {BISECT_MAX_STEPS} steps; root in [{a!r}, {b!r}]")
    return (a + b) / 2


def rho_r(M) -> float:
    """Largest real eigenvalue of M."""
    a = as_array(M)
    bound = float(np.max(np.sum(np.abs(a), axis=1))) + 1.0
    root = largest_real_root(char_poly(a), -bound, bound)
    if root is None:
        raise NoRealEigenvalueError(f"no real eigenvalue for the {a.shape[0]}x{a.shape[0]} matrix")
    return root


# ── Rooted matrices, quotients, Kronecker sums ─────────────────────────


def is_rooted(M) -> float | None:
    """Smallest d making M rooted, or None.

    With l the last index: m_lb >= 0 and m_ab >= m_lb for b < l and a != b,
    d >= m_lb - m_bb for b < l, every row sum at least r_l, and d >= -r_l.
    """
    a = as_array(M)
    ell = a.shape[0]
    last = a[-1, :-1]
    if (last < 0).any():
        return None
    for b in range(ell - 1):
        others = np.delete(a[:, b], [b, ell - 1])
        if (others < last[b]).any():
            return None
    rows = a.sum(axis=1)
    if (rows < rows[-1]).any():
        return None
    d = -float(rows[-1])
    if ell > 1:
        d = max(d, float(np.max(last - np.diag(a)[:-1])))
    return d


def quotient(M, partition: Partition) -> DenseMatrix | None:
    """Quotient matrix when every block has constant row sums, else None."""
    a = as_array(M)
    n = a.shape[0]
    if not partition.covers(n):
        raise ContractViolation(f"partition does not cover [0, {n})")
    k = len(partition.blocks)
    out = np.zeros((k, k))
    for s, rows in enumerate(partition.blocks):
        for t, cols in enumerate(partition.blocks):
            sums = a[np.ix_(rows, cols)].sum(axis=1)
            if float(np.ptp(sums)) > QUOTIENT_TOL:
                return None
            out[s, t] = float(sums.mean())
    return DenseMatrix.from_numpy(out)


def kron_sum(A, B) -> DenseMatrix:
    """A (x) I_m + I_n (x) B."""
    a = as_array(A)
    b = as_array(B)
    n, m = a.shape[0], b.shape[0]
    return DenseMatrix.from_numpy(np.kron(a, np.eye(m)) + np.kron(np.eye(n), b))


def sqrt_pair_sum(e: float, total: float) -> float:
    """sqrt(e) + sqrt(total - e); nondecreasing in e on [0, total / 2]."""
    if e < 0 or e > total:
        raise ContractViolation(f"need 0 <= e <= total, got e={e}, total={total}")
    return math.sqrt(e) + math.sqrt(total - e)


def rooted_domination_violations(C, M, partition: Partition) -> list[str]:
    """Failed hypotheses for bounding rho(C) by rho_r(M) through a partition.

    Checks that C is nonnegative, M is rooted, every block row-sum maximum
    sits below m_ab (last block column exempt) and every row-sum maximum of
    a block sits below the row sum of M. Empty list means all hold.
    """
    c = as_array(C)
    m = as_array(M)
    ell = m.shape[0]
    problems: list[str] = []
    if (c < 0).any():
        problems.append("C has a negative entry")
    if len(partition.blocks) != ell or not partition.covers(c.shape[0]):
        problems.append(f"partition has {len(partition.blocks)} blocks for an order-{ell} M")
        return problems
    if is_rooted(m) is None:
        problems.append("M is not rooted")
    m_rows = m.sum(axis=1)
    c_rows = c.sum(axis=1)
    tol = QUOTIENT_TOL
    for a_idx, rows in enumerate(partition.blocks):
        for b_idx in range(ell - 1):
            cols = partition.blocks[b_idx]
            block_max = float(c[np.ix_(rows, cols)].sum(axis=1).max())
            if block_max > m[a_idx, b_idx] + tol:
                problems.append(
                    f"block ({a_idx + 1},{b_idx + 1}): max row sum {block_max:g} > m = {m[a_idx, b_idx]:g}"
                )
        row_max = float(c_rows[rows].max())
        if row_max > m_rows[a_idx] + tol:
            problems.append(
                f"block {a_idx + 1}: max row sum {row_max:g} > M row sum {m_rows[a_idx]:g}"
            )
    return problems
