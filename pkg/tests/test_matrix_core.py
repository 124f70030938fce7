import math
import warnings

import numpy as np
import pytest

from ngbound.models.matrix import DenseMatrix, Partition, Polynomial
from ngbound.services import matrix_core, staircase
from ngbound.utils.errors import CapExceededError, ContractViolation, NoRealEigenvalueError


def _cycle(n):
    a = np.zeros((n, n))
    for i in range(n):
        a[i, (i + 1) % n] = a[(i + 1) % n, i] = 1
    return a


class TestSymmetricEigenvalues:
    def test_jacobi_matches_lapack(self):
        rng = np.random.default_rng(7)
        for n in (2, 5, 9):
            m = rng.normal(size=(n, n))
            m = m + m.T
            np.testing.assert_allclose(matrix_core.jacobi_eigenvalues(m), np.linalg.eigvalsh(m), atol=1e-9)

    def test_complete_graph(self):
        k5 = np.ones((5, 5)) - np.eye(5)
        assert matrix_core.sym_eigen_max(k5) == pytest.approx(4.0)

    def test_accepts_dense_matrix(self):
        assert matrix_core.sym_eigen_max(DenseMatrix(entries=[[2.0, 1.0], [1.0, 2.0]])) == pytest.approx(3.0)

    def test_rejects_nonsymmetric(self):
        with pytest.raises(ContractViolation):
            matrix_core.jacobi_eigenvalues([[0, 1], [0, 0]])

    def test_rejects_non_square(self):
        with pytest.raises(ContractViolation):
            matrix_core.as_array([[1, 2, 3]])

    def test_batch(self):
        stack = np.stack([_cycle(5), np.ones((5, 5)) - np.eye(5)])
        np.testing.assert_allclose(matrix_core.batch_sym_eigen_max(stack), [2.0, 4.0])
        assert matrix_core.batch_sym_eigen_max(np.zeros((0, 3, 3))).shape == (0,)


class TestPerronValue:
    def test_bipartite_converges(self):
        # C_6 is periodic; the shifted iteration still finds 2.
        assert matrix_core.spectral_radius_nonneg(_cycle(6)) == pytest.approx(2.0, abs=1e-9)

    def test_nonsymmetric(self):
        a = np.array([[0, 2], [1, 0]], dtype=float)
        assert matrix_core.spectral_radius_nonneg(a) == pytest.approx(math.sqrt(2), abs=1e-9)

    def test_rejects_negative(self):
        with pytest.raises(ContractViolation):
            matrix_core.spectral_radius_nonneg([[0, -1], [1, 0]])


class TestCharPoly:
    def test_exact_integer(self):
        assert matrix_core.char_poly([[2, 1], [1, 2]]).coeffs == [3.0, -4.0, 1.0]

    def test_triangle(self):
        k3 = np.ones((3, 3)) - np.eye(3)
        # (x - 2)(x + 1)^2
        assert matrix_core.char_poly(k3).coeffs == [-2.0, -3.0, 0.0, 1.0]

    def test_fractional_matches_numpy(self):
        m = np.array([[0.5, 1.25], [-0.75, 2.0]])
        got = matrix_core.char_poly(m).to_numpy()
        np.testing.assert_allclose(got, np.poly(m)[::-1], atol=1e-12)

    def test_order_cap(self):
        with pytest.raises(CapExceededError):
            matrix_core.char_poly(np.eye(17))


class TestRealRoots:
    def test_count_real_roots(self):
        # (x - 1)(x - 2)(x + 3)
        p = Polynomial.from_numpy(np.polynomial.polynomial.polyfromroots([1, 2, -3]))
        assert matrix_core.count_real_roots(p, -10, 10) == 3
        assert matrix_core.count_real_roots(p, 0, 1.5) == 1
        assert matrix_core.count_real_roots(p, 2, 10) == 0

    def test_largest_real_root(self):
        p = [-2.0, 0.0, 1.0]
        assert matrix_core.largest_real_root(p, 0, 5) == pytest.approx(math.sqrt(2), abs=1e-10)
        assert matrix_core.largest_real_root([1.0, 0.0, 1.0], -5, 5) is None

    def test_double_root(self):
        # (x - 1)^2 (x + 1): the largest root has even multiplicity
        assert matrix_core.largest_real_root([1.0, -1.0, -1.0, 1.0], -4, 4) == pytest.approx(1.0, abs=1e-9)

    def test_bad_interval(self):
        with pytest.raises(ContractViolation):
            matrix_core.largest_real_root([0.0, 1.0], 2, 2)

    def test_rho_r(self):
        assert matrix_core.rho_r([[2, 1], [1, -1]]) == pytest.approx((1 + math.sqrt(13)) / 2, abs=1e-10)
        assert matrix_core.rho_r([[0, 2], [1, 1]]) == pytest.approx(2.0, abs=1e-10)

    def test_rho_r_without_real_eigenvalue(self):
        with pytest.raises(NoRealEigenvalueError):
            matrix_core.rho_r([[0, -1], [1, 0]])


class TestQuotientsAndRooted:
    def test_equitable_quotient(self):
        path = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
        q = matrix_core.quotient(path, Partition(blocks=[[1], [0, 2]]))
        assert q.entries == [[0.0, 2.0], [1.0, 0.0]]

    def test_non_equitable_quotient(self):
        path = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
        assert matrix_core.quotient(path, Partition(blocks=[[0], [1, 2]])) is None

    def test_partition_must_cover(self):
        with pytest.raises(ContractViolation):
            matrix_core.quotient(np.eye(3), Partition(blocks=[[0], [1]]))

    def test_from_sizes_drops_empty_blocks(self):
        assert Partition.from_sizes([2, 0, 1]).blocks == [[0, 1], [2]]

    def test_is_rooted(self):
        m = [[0, 1, 1, 1], [1, 0, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0]]
        assert matrix_core.is_rooted(m) is not None
        # last row has a negative entry
        assert matrix_core.is_rooted([[1, 1], [-1, 0]]) is None

    def test_kron_sum_spectrum(self):
        a = np.array([[2.0, 1.0], [1.0, -1.0]])
        b = np.array([[0.0, 1.0], [1.0, 0.0]])
        got = np.sort(np.linalg.eigvals(matrix_core.kron_sum(a, b).to_numpy()).real)
        want = np.sort([x + y for x in np.linalg.eigvalsh(a) for y in (-1.0, 1.0)])
        np.testing.assert_allclose(got, want, atol=1e-10)

    def test_sqrt_pair_sum(self):
        assert matrix_core.sqrt_pair_sum(4, 13) == pytest.approx(5.0)
        assert matrix_core.sqrt_pair_sum(1, 10) < matrix_core.sqrt_pair_sum(4, 10)
        with pytest.raises(ContractViolation):
            matrix_core.sqrt_pair_sum(11, 10)

    def test_rooted_domination_holds(self):
        c = np.ones((3, 3)) - np.eye(3)
        m = [[1, 1], [2, 0]]
        assert matrix_core.rooted_domination_violations(c, m, Partition(blocks=[[0, 1], [2]])) == []

    def test_rooted_domination_reports_block(self):
        c = np.ones((3, 3)) - np.eye(3)
        m = [[0, 1], [2, 0]]
        problems = matrix_core.rooted_domination_violations(c, m, Partition(blocks=[[0, 1], [2]]))
        assert problems and any("block" in p for p in problems)


def _max_matching_gap(got, want):
    """Greedy nearest-neighbour distance between two eigenvalue multisets."""
    remaining = list(np.asarray(got, dtype=complex))
    worst = 0.0
    for w in np.asarray(want, dtype=complex):
        i = int(np.argmin([abs(g - w) for g in remaining]))
        worst = max(worst, abs(remaining.pop(i) - w))
    return worst


def _equitable(rng, sizes):
    """Positive matrix with constant row sums on every block, rows shuffled into place."""
    n = sum(sizes)
    order = rng.permutation(n)
    starts = np.cumsum([0] + sizes)
    blocks = [sorted(int(i) for i in order[starts[b] : starts[b + 1]]) for b in range(len(sizes))]
    m = np.zeros((n, n))
    for rows in blocks:
        for cols in blocks:
            target = rng.uniform(0.5, 3.0)
            part = rng.uniform(0.1, 1.0, size=(len(rows), len(cols)))
            m[np.ix_(rows, cols)] = part / part.sum(axis=1, keepdims=True) * target
    return m, Partition(blocks=blocks)


class TestRandomizedKernels:
    def test_kron_sum_spectrum(self):
        rng = np.random.default_rng(2024)
        for _ in range(500):
            a = rng.normal(size=(rng.integers(1, 4),) * 2)
            b = rng.normal(size=(rng.integers(1, 4),) * 2)
            a, b = a + a.T, b + b.T
            got = np.linalg.eigvalsh(matrix_core.kron_sum(a, b).to_numpy())
            want = np.sort([x + y for x in np.linalg.eigvalsh(a) for y in np.linalg.eigvalsh(b)])
            np.testing.assert_allclose(got, want, atol=1e-7)

    def test_kron_sum_nonsymmetric(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            a = rng.normal(size=(rng.integers(1, 4),) * 2)
            b = rng.normal(size=(rng.integers(1, 4),) * 2)
            got = np.linalg.eigvals(matrix_core.kron_sum(a, b).to_numpy())
            want = [x + y for x in np.linalg.eigvals(a) for y in np.linalg.eigvals(b)]
            assert _max_matching_gap(got, want) <= 1e-7

    def test_quotient_keeps_perron_value(self):
        rng = np.random.default_rng(5)
        for _ in range(500):
            sizes = [int(x) for x in rng.integers(1, 4, size=rng.integers(2, 4))]
            m, partition = _equitable(rng, sizes)
            q = matrix_core.quotient(m, partition)
            assert q is not None
            rho = matrix_core.spectral_radius_nonneg(m)
            assert rho == pytest.approx(matrix_core.spectral_radius_nonneg(q), abs=1e-8)

    def test_transposed_quotient_keeps_largest_real_eigenvalue(self):
        rng = np.random.default_rng(6)
        for _ in range(500):
            sizes = [int(x) for x in rng.integers(1, 3, size=rng.integers(2, 4))]
            mt, partition = _equitable(rng, sizes)
            q = matrix_core.quotient(mt, partition)
            assert matrix_core.rho_r(mt.T) == pytest.approx(matrix_core.rho_r(q), abs=1e-7)

    def test_char_poly_roots_are_eigenvalues(self):
        rng = np.random.default_rng(3)
        for n in range(1, 7):
            for _ in range(30):
                m = rng.normal(size=(n, n))
                roots = np.polynomial.polynomial.polyroots(matrix_core.char_poly(m).to_numpy())
                assert _max_matching_gap(roots, np.linalg.eigvals(m)) <= 1e-7

    def test_char_poly_of_staircases(self):
        # integer coefficients are exact, so the trace and the edge count come out exactly
        for n in range(3, 7):
            for A in staircase.enumerate_Sstar_sym(n):
                coeffs = matrix_core.char_poly(A.to_array()).coeffs
                assert coeffs[n] == 1.0 and coeffs[n - 1] == 0.0
                assert coeffs[n - 2] == -A.to_array().sum() / 2

    def test_jacobi_agrees_with_perron_on_staircases(self):
        rng = np.random.default_rng(12)
        for n in range(3, 13):
            pool = list(staircase.enumerate_Sstar_sym(n))
            for i in rng.choice(len(pool), size=min(20, len(pool)), replace=False):
                a = pool[int(i)].to_array()
                assert abs(matrix_core.sym_eigen_max(a) - matrix_core.spectral_radius_nonneg(a)) <= 1e-8

    def test_jacobi_converges_quietly(self, monkeypatch):
        messages = []
        monkeypatch.setattr(matrix_core, "log_warning", messages.append)
        rng = np.random.default_rng(8)
        for n in (4, 12, 30):
            m = rng.normal(size=(n, n))
            np.testing.assert_allclose(matrix_core.jacobi_eigenvalues(m + m.T), np.linalg.eigvalsh(m + m.T), atol=1e-9)
        assert messages == []

    def test_jacobi_skips_negligible_entries(self):
        m = np.array([[0.0, 1.0, 1e-310], [1.0, 0.0, 0.0], [1e-310, 0.0, 3.0]])
        with warnings.catch_warnings():
            warnings.simplefilter("error", RuntimeWarning)
            got = matrix_core.jacobi_eigenvalues(m)
        np.testing.assert_allclose(got, [-1.0, 1.0, 3.0], atol=1e-12)


class TestBisectionLimit:
    def test_gives_up_with_a_warning(self, monkeypatch):
        messages = []
        monkeypatch.setattr(matrix_core, "log_warning", messages.append)
        # 400 halvings cannot shrink [-1e300, 1e300] to the stopping width
        root = matrix_core.largest_real_root([-1.0, 1.0], -1e300, 1e300)
        assert -1e300 < root < 1e300
        assert messages and "gave up" in messages[0]

    def test_quiet_when_converged(self, monkeypatch):
        messages = []
        monkeypatch.setattr(matrix_core, "log_warning", messages.append)
        assert matrix_core.largest_real_root([-2.0, 0.0, 1.0], 0, 5) == pytest.approx(math.sqrt(2), abs=1e-10)
        assert messages == []
