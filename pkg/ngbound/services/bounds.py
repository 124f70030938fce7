"""Closed-form bounds: the row-sum bounds phi_l and phi, their 2x2
realization, equality structure, the quartic g, split-graph spectra and
the target value rho0(n)."""

import math

import numpy as np
from numpy.polynomial import polynomial as P

from ngbound.config import BOUND_TOL, MAXIMIZER_TOL
from ngbound.models.bounds import BoundReport, EqualityWitness, Rho0Breakdown
from ngbound.models.matrix import Polynomial
from ngbound.models.staircase import ParamSix, StaircaseMatrix
from ngbound.services import matrix_core, staircase
from ngbound.utils.errors import ContractViolation
from ngbound.utils.logging import log_warning


# ── Row-sum bounds ─────────────────────────────────────────────────────


def phi_ell(A: StaircaseMatrix, ell: int) -> float:
    """1/2 (r_l - 1 + sqrt((r_l + 1)^2 + 4 sum_{i<l} (r_i - r_l))) on sorted row sums."""
    if not 1 <= ell <= A.n:
        raise ContractViolation(f"ell must lie in [1, {A.n}], got {ell}")
    rows = sorted(A.row_sums, reverse=True)
    r = rows[ell - 1]
    excess = sum(ri - r for ri in rows[: ell - 1])
    return 0.5 * (r - 1 + math.sqrt((r + 1) ** 2 + 4 * excess))


def phi_ell_all(A: StaircaseMatrix) -> list[float]:
    return [phi_ell(A, ell) for ell in range(1, A.n + 1)]


def phi_from_triple(c: int, v: int, s: int) -> float:
    return 0.5 * (v - 1 + math.sqrt((2 * c - v - 1) ** 2 + 4 * s))


def phi(A: StaircaseMatrix) -> float:
    return phi_from_triple(*staircase.params(A))


def phi_via_2x2(A: StaircaseMatrix, shifted: bool = False) -> float:
    """phi(A) as rho_r([[c-1, s], [1, v-c]]), or rho([[2c-1, s], [1, v]]) - c when shifted."""
    c, v, s = staircase.params(A)
    if shifted:
        return matrix_core.rho_r([[2 * c - 1, s], [1, v]]) - c
    return matrix_core.rho_r([[c - 1, s], [1, v - c]])


def spectral_radius(A: StaircaseMatrix) -> float:
    if staircase.is_symmetric(A):
        return matrix_core.sym_eigen_max(A.to_array())
    return matrix_core.spectral_radius_nonneg(A.to_array())


def equality_case(A: StaircaseMatrix) -> EqualityWitness | None:
    """Match A against the two structural forms with rho(A) = phi(A)."""
    staircase.require_sstar_sym(A, "equality_case")
    n = A.n
    r1 = A.row_sums[0]
    if r1 + 1 > n:
        return None
    if A.mu == staircase.clique_union(n, r1 + 1).mu:
        return EqualityWitness(form="clique_union")
    c, _, _ = staircase.params(A)
    for t in range(2, min(c + 1, r1 + 1) + 1):
        if A.mu == staircase.join_union(n, t, r1).mu:
            return EqualityWitness(form="join_union", t=t)
    return None


def attains_phi(A: StaircaseMatrix) -> bool:
    """Numeric side of the equality characterization."""
    return abs(spectral_radius(A) - phi(A)) <= BOUND_TOL


def bound_report(A: StaircaseMatrix) -> BoundReport:
    staircase.require_sstar(A, "bound_report")
    bar = staircase.reflect_complement(A)
    symmetric = staircase.is_symmetric(A)
    return BoundReport(
        n=A.n,
        mu=list(A.mu),
        rho=spectral_radius(A),
        rho_bar=spectral_radius(bar),
        phi=phi(A),
        phi_bar=phi(bar),
        phi_ell=phi_ell_all(A),
        equality_case=equality_case(A) if symmetric else None,
        attains_phi=attains_phi(A) if symmetric else None,
        params=staircase.full_params(A),
    )


# ── The quartic g ──────────────────────────────────────────────────────


def ef_terms(p: ParamSix) -> tuple[float, float]:
    e = (2 * p.c - p.v - 1) ** 2 + 4 * p.s
    f = (2 * p.cbar - p.vbar - 1) ** 2 + 4 * p.sbar
    return float(e), float(f)


def phi_sum(p: ParamSix) -> float:
    """phi(A) + phi(bar A) from the six parameters."""
    e, f = ef_terms(p)
    return 0.5 * (p.v + p.vbar - 2 + math.sqrt(e) + math.sqrt(f))


def g_quartic(p: ParamSix) -> Polynomial:
    """y^2 (y^2 - 2(E+F)) + (E-F)^2 with y = 2x - v - vbar + 2, expanded."""
    e, f = ef_terms(p)
    y = np.array([-(p.v + p.vbar - 2), 2.0])
    y2 = P.polymul(y, y)
    g = P.polymul(y2, P.polysub(y2, [2 * (e + f)]))
    return Polynomial.from_numpy(P.polyadd(g, [(e - f) ** 2]))


def e_plus_f_closed(n: int, c: int, cbar: int) -> float:
    x = c + cbar
    d = c - cbar
    return 1.5 * x * x - (2 * n - 1) * x + 2 * n * n - 2 * n + 1 - 0.5 * d * d - d


def s_sum_bound(p: ParamSix, n: int) -> tuple[float, bool]:
    """Upper bound on s + sbar when c + cbar >= n, and whether it is attained."""
    x = p.c + p.cbar
    if x < n:
        raise ContractViolation(f"s_sum_bound needs c + cbar >= n, got {x} < {n}")
    d = p.c - p.cbar
    bound = -0.75 * x * x + (n + 1) * x - 0.25 * d * d - p.v - p.cbar
    return bound, abs(p.s + p.sbar - bound) <= 1e-9


def c_sum_cap(n: int) -> float:
    """c + cbar stays strictly below this for every A in S*_s(n)."""
    return 4 * n / 3 + 1 / 3


def c_sum_window(n: int) -> set[int]:
    """Values c + cbar may take once rho(A) + rho(bar A) reaches rho0."""
    top = (4 * n) // 3
    return {top - 1, top}


def closed_form_fixtures(n: int) -> list[ParamSix]:
    """Parameter tuples with v = n - cbar, vbar = n - c - 1 and s + sbar at the
    s_sum_bound equality, restricted to c + cbar >= max(n, (4n - 5)/3) and the
    ranges 0 < s <= 2c - v, 0 < sbar <= 2cbar - vbar."""
    out: list[ParamSix] = []
    floor_sum = max(n, (4 * n - 5) / 3)
    for c in range(1, n):
        for cbar in range(1, n):
            x, d = c + cbar, c - cbar
            if x < floor_sum:
                continue
            v, vbar = n - cbar, n - c - 1
            if not (0 <= v <= c and 0 <= vbar <= cbar):
                continue
            total = (-3 * x * x - d * d) // 4 + (n + 1) * x - n
            for s in range(1, 2 * c - v + 1):
                sbar = total - s
                if 0 < sbar <= 2 * cbar - vbar:
                    out.append(ParamSix(c=c, v=v, s=s, cbar=cbar, vbar=vbar, sbar=sbar))
    return out


def slack_regime_bound(n: int, p: ParamSix) -> tuple[float, float, bool]:
    """(phi sum, rho0, phi sum < rho0) for the regime 2cbar - sbar < n - c - 1."""
    total = phi_sum(p)
    target = rho0_value(n)
    return total, target, total < target


# ── Complete split graphs and rho0 ─────────────────────────────────────


def split_rho(n: int, q: int) -> tuple[float, float]:
    """rho of K_q v N_{n-q} and of its complement."""
    if not 1 <= q <= n - 2:
        raise ContractViolation(f"split_rho needs 1 <= q <= n-2, got q={q}, n={n}")
    rho = 0.5 * (q - 1 + math.sqrt((q - 1) ** 2 + 4 * q * (n - q)))
    return rho, float(n - q - 1)


def split_params(n: int, q: int) -> ParamSix:
    rho, _ = split_rho(n, q)
    c = math.ceil(rho - 1e-9)
    s = (n - c) * q + (q - c + 1) * (c - q)
    m = n - q - 1
    return ParamSix(c=c, v=q, s=s, cbar=m, vbar=m, sbar=m)


def _residue(n: int) -> tuple[int, int]:
    if n < 3:
        raise ContractViolation(f"rho0 needs n >= 3, got {n}")
    return n // 3, n % 3


def rho0_value(n: int) -> float:
    """Piecewise closed form by n mod 3."""
    k, r = _residue(n)
    if r == 0:
        return 0.5 * (5 * k - 3 + math.sqrt(9 * k * k - 2 * k + 1))
    if r == 1:
        return 0.5 * (5 * k - 1 + math.sqrt(9 * k * k + 2 * k + 1))
    return float(4 * k + 1)


def rho0_single_formula(n: int) -> float:
    _residue(n)
    k_n = 0 if n % 3 == 2 else 1
    fl = n // 3
    return 0.5 * (2 * n - 3 - fl + math.sqrt(((2 * n - 1) / 3 + fl) ** 2 + 8 * k_n / 9))


def f_poly(n: int) -> Polynomial:
    """Monic quadratic with rho0(n) as its largest root."""
    k, r = _residue(n)
    if r == 0:
        coeffs = [4 * k * k - 7 * k + 2, -(5 * k - 3), 1]
    elif r == 1:
        coeffs = [4 * k * k - 3 * k, -(5 * k - 1), 1]
    else:
        coeffs = [4 * k * k + k, -(5 * k + 1), 1]
    return Polynomial(coeffs=[float(c) for c in coeffs])


def un_closed_form(n: int) -> float:
    k, r = _residue(n)
    if r == 2:
        return 0.0
    m = 9 * k - 1 if r == 0 else 9 * k + 1
    return 4 / (3 * (m + math.sqrt(m * m + 8)))


def un_bounds(n: int) -> tuple[float, float]:
    """Open interval containing u_n (degenerate (0, 0) when n = 3k+2)."""
    k, r = _residue(n)
    if r == 0:
        return 4 / (54 * k - 3), 2 / (27 * k - 3)
    if r == 1:
        return 4 / (54 * k + 9), 2 / (27 * k + 3)
    return 0.0, 0.0


def predicted_best_q(n: int) -> list[int]:
    k, r = _residue(n)
    return [k, k + 1] if r == 2 else [k]


def scan_best_q(n: int) -> list[int]:
    sums = [sum(split_rho(n, q)) for q in range(1, n - 1)]
    top = max(sums)
    return [q for q, value in enumerate(sums, start=1) if top - value <= MAXIMIZER_TOL]


def rho0(n: int) -> Rho0Breakdown:
    k, r = _residue(n)
    value = rho0_value(n)
    f = f_poly(n)
    single = rho0_single_formula(n)
    root = matrix_core.largest_real_root(f, 0.0, 2.0 * n)
    if abs(single - value) > 1e-10 or root is None or abs(root - value) > 1e-10:
        log_warning(f"rho0({n}) cross-check mismatch: closed={value!r} single={single!r} root={root!r}")
    best_q = scan_best_q(n)
    if best_q != predicted_best_q(n):
        log_warning(f"rho0({n}) maximizing q {best_q} differ from {predicted_best_q(n)}")
    return Rho0Breakdown(
        n=n,
        k=k,
        k_n=0 if r == 2 else 1,
        rho0=value,
        u_n=value - (4 * n - 5) / 3,
        f=f,
        best_q=best_q,
    )
