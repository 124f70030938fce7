"""Exhaustive verification of rho(G) + rho(complement G) <= rho0(n), the
per-property suite over staircase sweeps, and the final-case certificate.

Sweeps run in chunks; with more than one worker the chunks go through a
multiprocessing pool and are merged in submission order, so reports are
identical whatever the worker count.
"""

import math
import time
from itertools import islice
from multiprocessing import Pool
from typing import Callable, Iterable, NamedTuple

import numpy as np

from ngbound.config import (
    BATCH_SIZE,
    BOUND_TOL,
    BRUTE_FORCE_MAX,
    BRUTE_FORCE_OPT_IN_MAX,
    CERT_MARGIN,
    ENUM_SYM_RANGE,
    FINGERPRINT_DECIMALS,
    MAXIMIZER_TOL,
    SUITE_MAX,
    SUITE_NONSYM_MAX,
    THIN_MARGIN,
    TRANSFORM_TOL,
    default_workers,
)
from ngbound.models.matrix import DenseMatrix, Partition, Polynomial
from ngbound.models.staircase import ParamSix, StaircaseMatrix
from ngbound.models.verifier import (
    CertificateFailure,
    CertificateReport,
    CertificateRow,
    FinalCaseInstance,
    PropertyCheck,
    RootedBoundReport,
    SuiteReport,
    VerifyReport,
)
from ngbound.services import bounds, matrix_core, staircase, transforms
from ngbound.utils.errors import CapExceededError, ContractViolation, TransformError
from ngbound.utils.logging import log_info, log_warning


def run_chunks(func: Callable, tasks: Iterable, workers: int | None = None) -> list:
    """Apply func to every task, in order, on a process pool when workers > 1."""
    tasks = list(tasks)
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(tasks) <= 1:
        return [func(task) for task in tasks]
    with Pool(processes=min(workers, len(tasks))) as pool:
        return list(pool.imap(func, tasks))


# ── Maximizer identification ───────────────────────────────────────────


def fingerprint(adjacency: np.ndarray) -> str:
    """Sorted degree sequence plus the spectrum rounded to 1e-6."""
    adjacency = np.asarray(adjacency, dtype=float)
    degrees = sorted(int(round(d)) for d in adjacency.sum(axis=1))
    spectrum = np.round(np.linalg.eigvalsh(adjacency), FINGERPRINT_DECIMALS) + 0.0
    return (
        "deg=" + ",".join(str(d) for d in degrees)
        + ";eig=" + ",".join(f"{x:.{FINGERPRINT_DECIMALS}f}" for x in spectrum)
    )


def _complement(adjacency: np.ndarray) -> np.ndarray:
    n = adjacency.shape[-1]
    return 1.0 - adjacency - np.eye(n)


def conjectured_maximizers(n: int) -> dict[str, str]:
    """Label -> fingerprint of every graph expected to reach rho0(n)."""
    expected: dict[str, str] = {}
    for q in bounds.predicted_best_q(n):
        split = staircase.split_graph(n, q).to_array().astype(float)
        expected[f"K{q}vN{n - q}"] = fingerprint(split)
        expected[f"K{n - q}+N{q}"] = fingerprint(_complement(split))
    return expected


def _pair_values(adjacency: np.ndarray) -> np.ndarray:
    return matrix_core.batch_sym_eigen_max(adjacency) + matrix_core.batch_sym_eigen_max(
        _complement(adjacency)
    )


def _collect(adjacency: np.ndarray, values: np.ndarray, found: dict[str, float]) -> float:
    """Fingerprint the batch's near-maximal graphs into found; return the batch max."""
    if len(values) == 0:
        return -math.inf
    top = float(values.max())
    for b in np.flatnonzero(values >= top - MAXIMIZER_TOL):
        key = fingerprint(adjacency[b])
        found[key] = max(found.get(key, -math.inf), float(values[b]))
    return top


def _merge(results: list[tuple[float, dict[str, float], int]]) -> tuple[float, dict[str, float], int]:
    top = max((r[0] for r in results), default=-math.inf)
    merged: dict[str, float] = {}
    count = 0
    for _, found, checked in results:
        count += checked
        for key, value in found.items():
            if value >= top - MAXIMIZER_TOL:
                merged[key] = max(merged.get(key, -math.inf), value)
    return top, merged, count


def _report(
    n: int,
    space: str,
    top: float,
    found: dict[str, float],
    count: int,
    started: float,
    cross_check_max: float | None = None,
) -> VerifyReport:
    expected = conjectured_maximizers(n)
    label_of = {fp: label for label, fp in expected.items()}
    arg_max = sorted(label_of.get(fp, fp) for fp in found)
    target = bounds.rho0_value(n)
    counterexamples = [f"unexpected maximizer {label}" for label in arg_max if label not in expected]
    counterexamples += [f"missing maximizer {label}" for label in sorted(expected) if label not in arg_max]
    if abs(top - target) > MAXIMIZER_TOL:
        counterexamples.append(f"max {top!r} differs from rho0 {target!r}")
    if cross_check_max is not None and abs(cross_check_max - top) > MAXIMIZER_TOL:
        counterexamples.append(f"staircase max {top!r} differs from all-graphs max {cross_check_max!r}")
    for item in counterexamples:
        log_warning(f"verify {space} n={n}: {item}")
    return VerifyReport(
        n=n,
        search_space=space,
        max_value=top,
        arg_max=arg_max,
        expected_arg_max=sorted(expected),
        rho0_expected=target,
        gap=top - target,
        counterexamples=counterexamples,
        instances_checked=count,
        cross_check_max=cross_check_max,
        elapsed=time.perf_counter() - started,
    )


# ── All labeled graphs ─────────────────────────────────────────────────


def _bruteforce_chunk(task: tuple[int, int, int]) -> tuple[float, dict[str, float], int]:
    n, start, stop = task
    rows, cols = np.triu_indices(n, 1)
    idx = np.arange(start, stop, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(len(rows), dtype=np.int64)) & 1
    adjacency = np.zeros((len(idx), n, n))
    adjacency[:, rows, cols] = bits
    adjacency += adjacency.transpose(0, 2, 1)
    found: dict[str, float] = {}
    top = _collect(adjacency, _pair_values(adjacency), found)
    return top, found, len(idx)


def verify_bruteforce(n: int, workers: int | None = None, allow_large: bool = False) -> VerifyReport:
    """Maximize rho(G) + rho(complement G) over every labeled graph on n vertices."""
    cap = BRUTE_FORCE_OPT_IN_MAX if allow_large else BRUTE_FORCE_MAX
    if not 3 <= n <= cap:
        raise CapExceededError(f"verify_bruteforce supports 3 <= n <= {cap}, got n={n}")
    started = time.perf_counter()
    total = 1 << (n * (n - 1) // 2)
    tasks = [(n, lo, min(lo + BATCH_SIZE, total)) for lo in range(0, total, BATCH_SIZE)]
    top, found, count = _merge(run_chunks(_bruteforce_chunk, tasks, workers))
    log_info(f"verify_bruteforce n={n}: {count} graphs, max {top!r}")
    return _report(n, "all_graphs", top, found, count, started)


# ── Symmetric staircases ───────────────────────────────────────────────


def profiles_to_adjacency(profiles: np.ndarray) -> np.ndarray:
    """(batch, n) canonical profiles -> (batch, n, n) 0/1 float matrices."""
    profiles = np.asarray(profiles)
    n = profiles.shape[1]
    cols = np.arange(1, n + 1)
    adjacency = (cols[None, None, :] <= profiles[:, :, None]).astype(float)
    adjacency[:, np.arange(n), np.arange(n)] = 0.0
    return adjacency


def _staircase_chunk(task: tuple[int, int]) -> tuple[float, dict[str, float], int]:
    n, first = task
    generator = staircase.sym_profiles(n, first)
    top = -math.inf
    found: dict[str, float] = {}
    count = 0
    while batch := list(islice(generator, BATCH_SIZE)):
        adjacency = profiles_to_adjacency(np.array(batch))
        top = max(top, _collect(adjacency, _pair_values(adjacency), found))
        found = {key: value for key, value in found.items() if value >= top - MAXIMIZER_TOL}
        count += len(batch)
    return top, found, count


def verify_staircase(n: int, workers: int | None = None, cross_check: bool = True) -> VerifyReport:
    """Maximize over S*_s(n), split by the leading profile entry.

    For n <= 7 the result is compared with the all-graphs sweep.
    """
    lo, hi = ENUM_SYM_RANGE
    if not lo <= n <= hi:
        raise CapExceededError(f"verify_staircase supports {lo} <= n <= {hi}, got n={n}")
    started = time.perf_counter()
    tasks = [(n, first) for first in range(n, 1, -1)]
    top, found, count = _merge(run_chunks(_staircase_chunk, tasks, workers))
    cross = None
    if cross_check and n <= BRUTE_FORCE_MAX:
        cross = verify_bruteforce(n, workers).max_value
    log_info(f"verify_staircase n={n}: {count} profiles, max {top!r}")
    return _report(n, "staircase_sym", top, found, count, started, cross)


# ── Final-case certificate ─────────────────────────────────────────────


def final_case_matrices(k: int, s: int, a: int) -> tuple[np.ndarray, np.ndarray]:
    m1 = np.array([[2 * k, s], [1, -k]], dtype=float)
    m2 = np.array([[k - 1, k, 3 * k + 1 - s - a], [k + 1, k, a], [1, 0, 0]], dtype=float)
    return m1, m2


def final_case_h(k: int, s: int, a: int) -> Polynomial:
    return Polynomial(
        coeffs=[float(-k * (2 * a + s - 3 * k - 1)), float(-5 * k - 1 + s + a), float(-(2 * k - 1)), 1.0]
    )


def final_case_instance(k: int, s: int, a: int) -> FinalCaseInstance:
    if k < 1 or not 1 <= s <= 3 * k or not -k * (k - 1) <= a <= 0:
        raise ContractViolation(f"final case needs k >= 1, 1 <= s <= 3k, -k(k-1) <= a <= 0; got k={k}, s={s}, a={a}")
    m1, m2 = final_case_matrices(k, s, a)
    m = matrix_core.kron_sum(m1, m2)
    det = float(np.linalg.det((4 * k + 1) * np.eye(6) - m.to_numpy()))
    return FinalCaseInstance(
        k=k,
        s=s,
        a=a,
        M1=DenseMatrix.from_numpy(m1),
        M2=DenseMatrix.from_numpy(m2),
        M=m,
        h=final_case_h(k, s, a),
        det_at_4k1=det,
    )


def _kron_sum_stack(m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
    batch, n, m = m1.shape[0], m1.shape[1], m2.shape[1]
    left = (m1[:, :, None, :, None] * np.eye(m)[None, None, :, None, :]).reshape(batch, n * m, n * m)
    right = (np.eye(n)[None, :, None, :, None] * m2[:, None, :, None, :]).reshape(batch, n * m, n * m)
    return left + right


def _m2_stack(k: int, s: np.ndarray, a: np.ndarray) -> np.ndarray:
    m2 = np.zeros((len(s), 3, 3))
    m2[:, 0, 0] = k - 1
    m2[:, 0, 1] = k
    m2[:, 0, 2] = 3 * k + 1 - s - a
    m2[:, 1, 0] = k + 1
    m2[:, 1, 1] = k
    m2[:, 1, 2] = a
    m2[:, 2, 0] = 1
    return m2


def _certificate_k(k: int) -> tuple[CertificateRow, list[CertificateFailure]]:
    s_grid, a_grid = np.meshgrid(np.arange(1, 3 * k + 1), np.arange(-k * (k - 1), 1), indexing="ij")
    s = s_grid.ravel().astype(float)
    a = a_grid.ravel().astype(float)
    count = len(s)

    m1 = np.zeros((count, 2, 2))
    m1[:, 0, 0] = 2 * k
    m1[:, 0, 1] = s
    m1[:, 1, 0] = 1
    m1[:, 1, 1] = -k
    m2 = _m2_stack(k, s, a)
    m = _kron_sum_stack(m1, m2)
    target = 4 * k + 1
    det = np.linalg.det(target * np.eye(6) - m)
    m_low = _kron_sum_stack(m1, _m2_stack(k, s, np.full(count, -k * (k - 1.0))))
    det_low = np.linalg.det(target * np.eye(6) - m_low)

    h0 = -k * (2 * a + s - 3 * k - 1)
    h2k = k * (-3 * k - 1 + s)
    h2k1 = s * (k + 1) + (k + 1) ** 2 + a

    alpha1 = (k + np.sqrt(9 * k * k + 4 * s)) / 2
    alpha2 = (k - np.sqrt(9 * k * k + 4 * s)) / 2
    beta_raw = np.linalg.eigvals(m2)
    beta = -np.sort(-beta_raw.real, axis=1)
    beta_imag = np.abs(beta_raw.imag).max(axis=1)
    ev = np.linalg.eigvals(m)
    real_ev = np.where(np.abs(ev.imag) <= 1e-7 * (1 + np.abs(ev)), ev.real, -np.inf)
    rho_m = real_ev.max(axis=1)

    strict = {
        "det_positive": det,
        "h0_positive": h0,
        "h2k_negative": -h2k,
        "h2k1_positive": h2k1,
        "beta3_negative": -beta[:, 2],
        "beta2_positive": beta[:, 1],
        "beta2_below_2k": 2 * k - beta[:, 1],
        "beta1_above_2k": beta[:, 0] - 2 * k,
        "beta1_below_2k1": 2 * k + 1 - beta[:, 0],
        "alpha1_below_2k1": 2 * k + 1 - alpha1,
        "second_root_below_4k1": target - np.maximum(alpha1 + beta[:, 1], beta[:, 0] + alpha2),
        "rho_r_below_4k1": target - rho_m,
    }
    loose = {
        "det_at_least_low_a": det - det_low + 1e-6 * (1 + np.abs(det)),
        "h_is_char_poly": 1e-6 * (1 + np.abs(h0)) - np.abs(np.linalg.det(-m2) - h0),
        "beta_real": 1e-7 * (1 + np.abs(beta).max(axis=1)) - beta_imag,
        "rho_r_is_sum": 1e-8 * (1 + np.abs(rho_m)) - np.abs(rho_m - (alpha1 + beta[:, 0])),
    }

    failures: list[CertificateFailure] = []
    for name, margin in strict.items():
        for idx in np.flatnonzero(~(margin > CERT_MARGIN)):
            failures.append(CertificateFailure(k=k, s=int(s[idx]), a=int(a[idx]), check=name, margin=float(margin[idx])))
    for name, margin in loose.items():
        for idx in np.flatnonzero(~(margin >= 0)):
            failures.append(CertificateFailure(k=k, s=int(s[idx]), a=int(a[idx]), check=name, margin=float(margin[idx])))

    smallest = np.min(np.stack(list(strict.values())), axis=0)
    thin = int(np.count_nonzero((smallest > CERT_MARGIN) & (smallest < THIN_MARGIN)))
    if thin:
        log_warning(f"final case k={k}: {thin} instances with margin below {THIN_MARGIN}")
    row = CertificateRow(
        k=k,
        instances=count,
        expected_instances=3 * k * (k * (k - 1) + 1),
        failures=len(failures),
        thin=thin,
        min_margin=float(smallest.min()),
    )
    return row, failures


def final_case_certificate(k_max: int, workers: int | None = None) -> CertificateReport:
    """Check every (k, s, a) with 1 <= k <= k_max, 1 <= s <= 3k, -k(k-1) <= a <= 0."""
    if k_max < 1:
        raise ContractViolation(f"final_case_certificate needs k_max >= 1, got {k_max}")
    started = time.perf_counter()
    results = run_chunks(_certificate_k, range(1, k_max + 1), workers)
    rows = [row for row, _ in results]
    failures = [f for _, found in results for f in found]
    for failure in failures[:20]:
        log_warning(f"final case failure: {failure.model_dump()}")
    return CertificateReport(k_max=k_max, rows=rows, failures=failures, elapsed=time.perf_counter() - started)


# ── Rooted bound on the complement ─────────────────────────────────────


def final_case_shape(n: int, c: int, cbar: int, v: int, vbar: int) -> bool:
    k = n // 3
    return n % 3 == 2 and c == cbar == 2 * k + 1 and v == k + 1 and vbar == k


def rooted_bound_check(A: StaircaseMatrix) -> RootedBoundReport:
    """Bound rho(bar A) by rho_r(M3) through the singleton-plus-tail partition,
    then reduce M3 to M2 through the equitable partition of M3^T."""
    staircase.require_sstar_sym(A, "rooted_bound_check")
    n = A.n
    p = staircase.full_params(A)
    bar = staircase.reflect_complement(A)
    rows = bar.row_sums
    cbar, vbar = p.cbar, p.vbar

    m3 = np.zeros((cbar + 1, cbar + 1))
    m3[:cbar, :cbar] = 1 - np.eye(cbar)
    m3[cbar, :vbar] = 1
    m3[:cbar, cbar] = [rows[i] - cbar + 1 for i in range(cbar)]

    tail = list(range(cbar, n))
    pi1 = Partition(blocks=[[i] for i in range(cbar)] + [tail])
    violations = matrix_core.rooted_domination_violations(bar.to_array(), m3, pi1)

    rho_bar = matrix_core.sym_eigen_max(bar.to_array())
    rho_m3 = matrix_core.rho_r(m3)
    pi2 = Partition.from_sizes([vbar, cbar - vbar, 1])
    quotient = matrix_core.quotient(m3.T, pi2)
    m2 = quotient.to_numpy().T if quotient is not None else None
    rho_m2 = matrix_core.rho_r(m2) if m2 is not None else None

    a = sum(rows[i] - cbar + 1 for i in range(vbar, cbar))
    first = sum(rows[i] - cbar + 1 for i in range(vbar))
    shape = final_case_shape(n, p.c, cbar, p.v, vbar)
    k = n // 3 if shape else None
    matches = None
    if shape and m2 is not None:
        expected_m2 = final_case_matrices(k, p.s, a)[1]
        matches = bool(np.allclose(m2, expected_m2))

    chain = rho_bar <= rho_m3 + BOUND_TOL and (rho_m2 is None or abs(rho_m3 - rho_m2) <= BOUND_TOL)
    return RootedBoundReport(
        n=n,
        mu=list(A.mu),
        final_case_shape=shape,
        k=k,
        s=p.s,
        a=a,
        first_block_sum=first,
        M3=DenseMatrix.from_numpy(m3),
        M2=DenseMatrix.from_numpy(m2) if m2 is not None else None,
        rho_bar=rho_bar,
        rho_r_M3=rho_m3,
        rho_r_M2=rho_m2,
        hypothesis_violations=violations,
        matches_final_case_m2=matches,
        chain_holds=chain,
    )


# ── Property suite ─────────────────────────────────────────────────────


class _Sample(NamedTuple):
    A: StaircaseMatrix
    bar: StaircaseMatrix
    p: ParamSix
    rho: float | None = None
    rho_bar: float | None = None


class _Tally:
    """Instance counter that keeps the first failing instance."""

    def __init__(self, name: str):
        self.name = name
        self.instances = 0
        self.first_failure: str | None = None
        self.notes: list[str] = []

    def record(self, ok: bool, describe: Callable[[], str]) -> None:
        self.instances += 1
        if not ok and self.first_failure is None:
            self.first_failure = describe()

    def result(self) -> PropertyCheck:
        if self.first_failure is not None:
            log_warning(f"property {self.name} failed: {self.first_failure}")
        return PropertyCheck(
            name=self.name,
            passed=self.first_failure is None,
            instances=self.instances,
            first_failure=self.first_failure,
            notes="; ".join(self.notes) or None,
        )


def _six(A: StaircaseMatrix, bar: StaircaseMatrix) -> ParamSix:
    c, v, s = staircase.params_from_row_sums(A.row_sums)
    cbar, vbar, sbar = staircase.params_from_row_sums(bar.row_sums)
    return ParamSix(c=c, v=v, s=s, cbar=cbar, vbar=vbar, sbar=sbar)


def _sym_samples(n: int) -> list[_Sample]:
    mats = list(staircase.enumerate_Sstar_sym(n))
    bars = [staircase.reflect_complement(A) for A in mats]
    rho = matrix_core.batch_sym_eigen_max(np.stack([A.to_array() for A in mats]).astype(float))
    rho_bar = matrix_core.batch_sym_eigen_max(np.stack([B.to_array() for B in bars]).astype(float))
    return [
        _Sample(A, bar, _six(A, bar), float(r), float(rb))
        for A, bar, r, rb in zip(mats, bars, rho, rho_bar)
    ]


def _general_samples(n: int) -> list[_Sample]:
    out = []
    for A in staircase.enumerate_Sstar(n):
        bar = staircase.reflect_complement(A)
        out.append(_Sample(A, bar, _six(A, bar)))
    return out


def _where(x: _Sample) -> str:
    return f"n={x.A.n} mu={list(x.A.mu)} params={x.p.model_dump(exclude={'T'})}"


def _excluded(n: int, p: ParamSix) -> bool:
    k = n // 3
    return n % 3 == 2 and p.c + p.cbar == 4 * k + 1


def _final_case_pair(n: int, p: ParamSix) -> bool:
    """c = cbar = 2k + 1 with n = 3k + 2; settled by the certificate, not by g."""
    k = n // 3
    return n % 3 == 2 and p.c == p.cbar == 2 * k + 1


def _check_soundness(sym: dict[int, list[_Sample]]) -> PropertyCheck:
    tally = _Tally("row_sum_bound_soundness")
    for n, samples in sym.items():
        if n > 12:
            continue
        for x in samples:
            values = bounds.phi_ell_all(x.A)
            worst = min(values)
            tally.record(x.rho <= worst + BOUND_TOL, lambda: f"{_where(x)} rho={x.rho!r} > min phi_l={worst!r}")
    return tally.result()


def _check_equality_iff(sym: dict[int, list[_Sample]]) -> PropertyCheck:
    tally = _Tally("equality_structure_iff")
    for n, samples in sym.items():
        if n > 10:
            continue
        for x in samples:
            numeric = abs(x.rho - bounds.phi_from_triple(*x.p.triple)) <= BOUND_TOL
            witness = bounds.equality_case(x.A)
            tally.record(
                numeric == (witness is not None),
                lambda: f"{_where(x)} numeric equality {numeric} but witness {witness}",
            )
    return tally.result()


def _in_range(n: int, c: int, v: int, s: int) -> bool:
    return 1 <= c <= n - 1 and 0 <= v <= c and 0 < s <= 2 * c - v


def _check_parameter_ranges(sym, general) -> PropertyCheck:
    tally = _Tally("parameter_ranges")
    for group in (sym, general):
        for n, samples in group.items():
            for x in samples:
                ok = _in_range(n, *x.p.triple) and _in_range(n, *x.p.bar_triple)
                tally.record(ok, lambda: _where(x))
    return tally.result()


def _check_pinching(sym: dict[int, list[_Sample]]) -> PropertyCheck:
    tally = _Tally("phi_pinching")
    for n, samples in sym.items():
        for x in samples:
            c, v, s = x.p.triple
            value = bounds.phi_from_triple(c, v, s)
            ok = c - 1 < value <= c + 1e-12 and (abs(value - c) <= 1e-12) == (s + v == 2 * c)
            ok = ok and abs(value - bounds.phi_ell(x.A, c + 1)) <= 1e-12
            if n <= 10:
                ok = ok and abs(value - bounds.phi_via_2x2(x.A)) <= 1e-9
                ok = ok and abs(value - bounds.phi_via_2x2(x.A, shifted=True)) <= 1e-9
            tally.record(ok, lambda: f"{_where(x)} phi={value!r}")
    return tally.result()


def _check_phi_monotone(n_max: int) -> PropertyCheck:
    tally = _Tally("phi_monotone_in_v_and_s")
    for c in range(1, n_max):
        for v in range(0, c + 1):
            for s in range(1, 2 * c - v + 1):
                base = bounds.phi_from_triple(c, v, s)
                if v + 1 <= c and s <= 2 * c - v - 1:
                    up = bounds.phi_from_triple(c, v + 1, s)
                    tally.record(up > base, lambda: f"phi({c},{v + 1},{s})={up!r} <= phi({c},{v},{s})={base!r}")
                if s + 1 <= 2 * c - v:
                    up = bounds.phi_from_triple(c, v, s + 1)
                    tally.record(up > base, lambda: f"phi({c},{v},{s + 1})={up!r} <= phi({c},{v},{s})={base!r}")
    return tally.result()


def _corner_implication(n: int, A: StaircaseMatrix, p: ParamSix) -> bool | None:
    """Read a_{c+1, n-cbar}: a one forces v >= n - cbar and vbar <= n - c - 1,
    a zero forces vbar >= n - c and v <= n - cbar - 1.

    None when c + cbar < n: the corner sits on or right of the diagonal and
    neither implication applies.
    """
    if p.c + p.cbar < n:
        return None
    if A.to_array()[p.c, n - p.cbar - 1]:
        return p.v >= n - p.cbar and p.vbar <= n - p.c - 1
    return p.vbar >= n - p.c and p.v <= n - p.cbar - 1


def _check_duality(sym, general) -> PropertyCheck:
    tally = _Tally("complement_duality")
    off_corner = 0
    for group in (sym, general):
        for n, samples in group.items():
            for x in samples:
                back = staircase.reflect_complement(x.bar)
                corner = _corner_implication(n, x.A, x.p)
                off_corner += corner is None
                ok = back.mu == x.A.mu and corner is not False and staircase.membership(x.bar).in_Sstar
                if x.rho is not None:
                    ok = ok and staircase.is_symmetric(x.bar)
                tally.record(ok, lambda: f"{_where(x)} corner={corner}")
    tally.notes.append(f"{off_corner} instances with c + cbar < n skip the corner implications")
    return tally.result()


def _check_pad(sym: dict[int, list[_Sample]]) -> PropertyCheck:
    tally = _Tally("pad_column_contract")
    for n, samples in sym.items():
        if n > 12:
            continue
        for x in samples:
            p = x.p
            if p.c + p.cbar < n or not p.vbar < min(2 * p.cbar - p.sbar, n - p.c - 1):
                continue
            try:
                out, trace = transforms.pad_complement_column(x.A)
            except TransformError as exc:
                tally.record(False, lambda: f"{_where(x)}: {exc.message}")
                continue
            q = trace.after
            out_bar = staircase.reflect_complement(out)
            ok = (
                staircase.membership(out).in_Sstar
                and (q.c, q.v, q.s, q.cbar) == (p.c, p.v, p.s, p.cbar)
                and q.vbar == min(2 * q.cbar - q.sbar, n - q.c - 1)
                and q.sbar >= p.sbar
                and abs(bounds.phi(out) - bounds.phi(x.A)) <= TRANSFORM_TOL
                and bounds.phi(out_bar) > bounds.phi(x.bar) + TRANSFORM_TOL
            )
            tally.record(ok, lambda: f"{_where(x)} -> {q.model_dump(exclude={'T'})}")
    return tally.result()


def _check_shift(general: dict[int, list[_Sample]]) -> PropertyCheck:
    tally = _Tally("shift_row_contract")
    for n, samples in general.items():
        for x in samples:
            p = x.p
            if p.vbar != n - p.c - 1 or not p.v > n - p.cbar:
                continue
            for target in range(max(n - p.cbar, 0), p.v):
                try:
                    out, trace = transforms.shift_corner_row(x.A, target)
                except TransformError as exc:
                    tally.record(False, lambda: f"{_where(x)} v'={target}: {exc.message}")
                    continue
                q = trace.after
                before, after = bounds.phi(x.A), bounds.phi(out)
                same = abs(before - after) <= TRANSFORM_TOL
                ok = (
                    staircase.membership(out).in_Sstar
                    and q.c == p.c
                    and q.v == target
                    and q.s + q.v == p.s + p.v
                    and q.bar_triple == p.bar_triple
                    and before <= after + TRANSFORM_TOL
                    and same == (p.v + p.s == 2 * p.c)
                    and abs(bounds.phi(staircase.reflect_complement(out)) - bounds.phi(x.bar)) <= TRANSFORM_TOL
                )
                tally.record(ok, lambda: f"{_where(x)} v'={target} -> {q.model_dump(exclude={'T'})}")
    return tally.result()


def _check_drain(general: dict[int, list[_Sample]]) -> PropertyCheck:
    tally = _Tally("drain_column_contract")
    stalls = 0
    for n, samples in general.items():
        for x in samples:
            p = x.p
            if not n - p.cbar < p.v or p.vbar != 2 * p.cbar - p.sbar:
                continue
            try:
                out, trace = transforms.drain_column(x.A)
            except TransformError as exc:
                tally.record(False, lambda: f"{_where(x)}: {exc.message}")
                continue
            q = trace.after
            stalls += trace.stalled
            reached = trace.stalled or q.v == max(2 * q.c - q.s, n - q.cbar)
            ok = (
                staircase.membership(out).in_Sstar
                and reached
                and q.c == p.c
                and q.s + q.v >= p.s + p.v
                and q.bar_triple == p.bar_triple
                and bounds.phi(x.A) <= bounds.phi(out) + TRANSFORM_TOL
                and bounds.phi(x.bar) <= bounds.phi(staircase.reflect_complement(out)) + TRANSFORM_TOL
            )
            tally.record(ok, lambda: f"{_where(x)} -> {q.model_dump(exclude={'T'})}")
    if stalls:
        tally.notes.append(f"{stalls} instances stopped at v = n - cbar below 2c - s")
    return tally.result()


def _check_chain(sym: dict[int, list[_Sample]]) -> PropertyCheck:
    tally = _Tally("normalize_chain")
    slack = 0
    for n, samples in sym.items():
        if n > 10:
            continue
        for x in samples:
            if x.p.c + x.p.cbar < n or _excluded(n, x.p):
                continue
            try:
                result = transforms.normalize_chain(x.A)
            except TransformError as exc:
                tally.record(False, lambda: f"{_where(x)}: {exc.message}")
                continue
            slack += result.slack_regime
            ok = result.chain_holds and (
                result.slack_below_rho0 if result.slack_regime else result.normalized
            )
            tally.record(ok, lambda: f"{_where(x)} phi sums {result.phi_sums}")
    tally.notes.append(f"{slack} instances ended in the slack regime")
    return tally.result()


def _check_split_parameters(sym: dict[int, list[_Sample]], n_max: int) -> PropertyCheck:
    tally = _Tally("split_graph_parameters")
    for n in range(3, n_max + 1):
        for q in range(1, n - 1):
            expected = bounds.split_params(n, q)
            got = staircase.full_params(staircase.split_graph(n, q))
            tally.record(got == expected, lambda: f"n={n} q={q}: {got} != {expected}")
    for n, samples in sym.items():
        splits = {staircase.split_graph(n, q).mu: q for q in range(1, n - 1)}
        for x in samples:
            total = bounds.phi_from_triple(*x.p.triple) + bounds.phi_from_triple(*x.p.bar_triple)
            if abs(x.rho + x.rho_bar - total) > BOUND_TOL:
                continue
            q = splits.get(x.A.mu, splits.get(x.bar.mu))
            ok = q is not None and {x.p.c, x.p.cbar} == {
                n - q - 1,
                math.ceil(bounds.split_rho(n, q)[0] - 1e-9),
            }
            tally.record(ok, lambda: f"{_where(x)} split q={q}")
    return tally.result()


def _check_c_sum(sym: dict[int, list[_Sample]]) -> tuple[PropertyCheck, PropertyCheck]:
    cap = _Tally("c_sum_cap")
    window = _Tally("c_sum_window")
    for n, samples in sym.items():
        target = bounds.rho0_value(n)
        allowed = bounds.c_sum_window(n)
        for x in samples:
            total = x.p.c + x.p.cbar
            cap.record(total < bounds.c_sum_cap(n), lambda: _where(x))
            if x.rho + x.rho_bar >= target - BOUND_TOL:
                window.record(total >= n and total in allowed, lambda: f"{_where(x)} c + cbar = {total}")
    return cap.result(), window.result()


def _check_s_sum(sym: dict[int, list[_Sample]], n_max: int) -> PropertyCheck:
    tally = _Tally("s_sum_bound")
    for n, samples in sym.items():
        for x in samples:
            p = x.p
            if p.c + p.cbar < n:
                continue
            bound, tight = bounds.s_sum_bound(p, n)
            ok = p.s + p.sbar <= bound + 1e-9
            if p.v == n - p.cbar and p.vbar == n - p.c - 1:
                ok = ok and tight
            tally.record(ok, lambda: f"{_where(x)} bound={bound!r}")
    for n in range(3, n_max + 1):
        for p in bounds.closed_form_fixtures(n):
            tally.record(bounds.s_sum_bound(p, n)[1], lambda: f"fixture n={n} {p}")
    return tally.result()


def _check_split_extremal(sym: dict[int, list[_Sample]]) -> PropertyCheck:
    tally = _Tally("split_graph_extremal")
    for n, samples in sym.items():
        if n % 3 != 2:
            continue
        k = n // 3
        allowed = {staircase.clique_union(n, 2 * k + 2).mu, staircase.clique_union(n, 2 * k + 1).mu}
        target = bounds.rho0_value(n)
        hits = 0
        for x in samples:
            p = x.p
            if x.rho + x.rho_bar < target - BOUND_TOL or p.v < n - p.cbar or p.c + p.cbar != 4 * k + 1:
                continue
            hits += 1
            tally.record(x.A.mu in allowed, lambda: _where(x))
        tally.notes.append(f"n={n}: {hits} qualifying")
    return tally.result()


def _check_slack(sym, general) -> PropertyCheck:
    tally = _Tally("slack_regime_strict")
    for group in (sym, general):
        for n, samples in group.items():
            for x in samples:
                p = x.p
                if _excluded(n, p) or not (2 * p.cbar - p.sbar < n - p.c - 1 and p.vbar == 2 * p.cbar - p.sbar):
                    continue
                total, target, below = bounds.slack_regime_bound(n, p)
                tally.record(below, lambda: f"{_where(x)} phi sum {total!r} >= rho0 {target!r}")
    return tally.result()


def _quartic_scale(p: ParamSix, x: float) -> tuple[float, float]:
    e, f = bounds.ef_terms(p)
    y = 2 * x - p.v - p.vbar + 2
    return y, 1 + y**4 + (e + f) ** 2


def _check_quartic_root(sym: dict[int, list[_Sample]]) -> PropertyCheck:
    tally = _Tally("quartic_vanishes_at_phi_sum")
    for n, samples in sym.items():
        for x in samples:
            at = bounds.phi_sum(x.p)
            value = float(bounds.g_quartic(x.p)(at))
            _, scale = _quartic_scale(x.p, at)
            tally.record(abs(value) <= 1e-9 * scale, lambda: f"{_where(x)} g={value!r}")
    return tally.result()


def _check_fixtures(n_max: int) -> list[PropertyCheck]:
    closed = _Tally("e_plus_f_closed_form")
    margin = _Tally("quartic_margin_positive")
    increasing = _Tally("quartic_increasing")
    at_rho0 = _Tally("quartic_at_rho0")
    for n in range(3, n_max + 1):
        k = n // 3
        zero_set = {(3 * k, 2 * k - 1, 2 * k), (3 * k + 1, 2 * k, 2 * k)}
        start = (4 * n - 5) / 3
        target = bounds.rho0_value(n)
        for p in bounds.closed_form_fixtures(n):
            e, f = bounds.ef_terms(p)
            closed_value = bounds.e_plus_f_closed(n, p.c, p.cbar)
            closed.record(abs(e + f - closed_value) <= 1e-9, lambda: f"n={n} {p}: {e + f} != {closed_value}")

            y, _ = _quartic_scale(p, start)
            margin.record(y > 0 and y * y - (e + f) > 0, lambda: f"n={n} {p}: y={y!r}")

            g = bounds.g_quartic(p)
            values = g(np.linspace(start, start + n, 25))
            increasing.record(bool(np.all(np.diff(values) > 0)), lambda: f"n={n} {p}")

            if _excluded(n, p) or _final_case_pair(n, p):
                continue
            value = float(g(target))
            _, scale = _quartic_scale(p, target)
            zero = abs(value) <= 1e-9 * scale
            ok = value >= -1e-9 * scale and (not zero or (n, p.c, p.cbar) in zero_set)
            at_rho0.record(ok, lambda: f"n={n} {p}: g(rho0)={value!r}")
    return [closed.result(), margin.result(), increasing.result(), at_rho0.result()]


def _check_rooted(sym: dict[int, list[_Sample]]) -> PropertyCheck:
    tally = _Tally("rooted_bound_chain")
    for n, samples in sym.items():
        for x in samples:
            p = x.p
            if not final_case_shape(n, p.c, p.cbar, p.v, p.vbar):
                continue
            report = rooted_bound_check(x.A)
            k = n // 3
            ok = (
                report.chain_holds
                and not report.hypothesis_violations
                and report.matches_final_case_m2 is True
                and report.first_block_sum == 3 * k + 1 - p.s - report.a
                and x.rho + x.rho_bar < 4 * k + 1
            )
            tally.record(ok, lambda: f"{_where(x)} violations={report.hypothesis_violations}")
    return tally.result()


def property_suite(n_max: int) -> SuiteReport:
    """Run every staircase, bound and transform property up to order n_max.

    Symmetric sweeps cover 3..n_max (soundness to 12, equality and chain to
    10); sweeps over nonsymmetric S*(n) stop at SUITE_NONSYM_MAX.
    """
    if not 3 <= n_max <= SUITE_MAX:
        raise CapExceededError(f"property_suite supports 3 <= n_max <= {SUITE_MAX}, got {n_max}")
    started = time.perf_counter()
    sym = {n: _sym_samples(n) for n in range(3, n_max + 1)}
    general = {n: _general_samples(n) for n in range(3, min(n_max, SUITE_NONSYM_MAX) + 1)}

    cap, window = _check_c_sum(sym)
    checks = [
        _check_soundness(sym),
        _check_equality_iff(sym),
        _check_parameter_ranges(sym, general),
        _check_pinching(sym),
        _check_phi_monotone(n_max),
        _check_duality(sym, general),
        _check_pad(sym),
        _check_shift(general),
        _check_drain(general),
        _check_chain(sym),
        _check_split_parameters(sym, n_max),
        cap,
        window,
        _check_s_sum(sym, n_max),
        _check_split_extremal(sym),
        _check_slack(sym, general),
        _check_quartic_root(sym),
        *_check_fixtures(n_max),
        _check_rooted(sym),
    ]
    report = SuiteReport(n_max=n_max, checks=checks, elapsed=time.perf_counter() - started)
    log_info(f"property_suite n_max={n_max}: {sum(c.passed for c in checks)}/{len(checks)} passed")
    return report
