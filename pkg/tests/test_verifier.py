import math

import numpy as np
import pytest

from ngbound.models.staircase import ParamSix
from ngbound.services import bounds, staircase, verifier
from ngbound.utils.errors import CapExceededError, ContractViolation


class TestMaximizers:
    def test_labels(self):
        assert set(verifier.conjectured_maximizers(5)) == {"K1vN4", "K4+N1", "K2vN3", "K3+N2"}
        assert set(verifier.conjectured_maximizers(6)) == {"K2vN4", "K4+N2"}

    def test_fingerprint_ignores_labels(self):
        a = staircase.split_graph(5, 2).to_array()
        perm = np.array([3, 1, 4, 0, 2])
        assert verifier.fingerprint(a) == verifier.fingerprint(a[np.ix_(perm, perm)])
        assert verifier.fingerprint(a) != verifier.fingerprint(staircase.split_graph(5, 1).to_array())

    def test_run_chunks_keeps_order(self):
        assert verifier.run_chunks(abs, [-3, 2, -1], workers=1) == [3, 2, 1]


class TestBruteForce:
    def test_n3(self):
        report = verifier.verify_bruteforce(3, workers=1)
        assert report.passed
        assert report.instances_checked == 8
        assert report.max_value == pytest.approx(1 + math.sqrt(2), abs=1e-9)
        assert report.arg_max == ["K1vN2", "K2+N1"]

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_matches_rho0(self, n):
        report = verifier.verify_bruteforce(n, workers=1)
        assert report.passed, report.counterexamples
        assert report.instances_checked == 2 ** (n * (n - 1) // 2)
        assert abs(report.gap) <= 1e-9
        assert report.arg_max == report.expected_arg_max

    def test_caps(self):
        with pytest.raises(CapExceededError):
            verifier.verify_bruteforce(8)
        with pytest.raises(CapExceededError):
            verifier.verify_bruteforce(9, allow_large=True)
        with pytest.raises(CapExceededError):
            verifier.verify_bruteforce(2)


class TestStaircaseSweep:
    def test_cross_checked(self):
        report = verifier.verify_staircase(6, workers=1)
        assert report.passed
        assert report.search_space == "staircase_sym"
        assert report.instances_checked == 2**5 - 2
        assert report.cross_check_max == pytest.approx(report.max_value, abs=1e-9)

    @pytest.mark.parametrize("n", [8, 9, 10, 11])
    def test_beyond_brute_force(self, n):
        report = verifier.verify_staircase(n, workers=1)
        assert report.passed, report.counterexamples
        assert report.cross_check_max is None
        assert report.max_value == pytest.approx(bounds.rho0_value(n), abs=1e-9)

    def test_two_families_when_n_is_2_mod_3(self):
        report = verifier.verify_staircase(8, workers=1)
        assert report.arg_max == sorted(["K2vN6", "K6+N2", "K3vN5", "K5+N3"])

    def test_worker_count_does_not_change_the_report(self):
        serial = verifier.verify_staircase(9, workers=1, cross_check=False)
        pooled = verifier.verify_staircase(9, workers=2, cross_check=False)
        assert serial.model_dump(exclude={"elapsed"}) == pooled.model_dump(exclude={"elapsed"})

    def test_profiles_to_adjacency(self):
        A = staircase.from_profile([5, 4, 2, 2, 1])
        stack = verifier.profiles_to_adjacency(np.array([A.mu]))
        np.testing.assert_array_equal(stack[0], A.to_array())


class TestFinalCase:
    def test_instance(self):
        inst = verifier.final_case_instance(1, 1, 0)
        assert inst.M1.entries == [[2.0, 1.0], [1.0, -1.0]]
        assert inst.M2.entries == [[0.0, 1.0, 3.0], [2.0, 1.0, 0.0], [1.0, 0.0, 0.0]]
        assert inst.h.coeffs == [3.0, -5.0, -1.0, 1.0]
        assert inst.det_at_4k1 > 0
        assert inst.M.n == 6

    def test_h_values(self):
        for k in (1, 2, 3):
            for s in range(1, 3 * k + 1):
                for a in range(-k * (k - 1), 1):
                    h = verifier.final_case_h(k, s, a)
                    assert h(2 * k) == pytest.approx(k * (-3 * k - 1 + s))
                    assert h(2 * k + 1) == pytest.approx(s * (k + 1) + (k + 1) ** 2 + a)

    def test_instance_ranges(self):
        with pytest.raises(ContractViolation):
            verifier.final_case_instance(1, 4, 0)
        with pytest.raises(ContractViolation):
            verifier.final_case_instance(2, 1, -3)

    def test_certificate(self):
        report = verifier.final_case_certificate(6, workers=1)
        assert report.passed, report.failures[:5]
        assert [r.k for r in report.rows] == list(range(1, 7))
        assert report.rows[4].instances == 315
        assert all(r.min_margin > 0 for r in report.rows)

    def test_certificate_needs_positive_k(self):
        with pytest.raises(ContractViolation):
            verifier.final_case_certificate(0)


class TestRootedBound:
    def test_final_case_fixture(self, final_case_staircase):
        report = verifier.rooted_bound_check(final_case_staircase)
        assert report.final_case_shape and report.k == 1
        assert (report.s, report.a, report.first_block_sum) == (3, 0, 1)
        assert report.M3.entries == [
            [0.0, 1.0, 1.0, 1.0],
            [1.0, 0.0, 1.0, 0.0],
            [1.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]
        assert report.M2.entries == [[0.0, 1.0, 1.0], [2.0, 1.0, 0.0], [1.0, 0.0, 0.0]]
        assert report.matches_final_case_m2
        assert report.hypothesis_violations == []
        assert report.chain_holds
        assert report.rho_r_M2 == pytest.approx(report.rho_r_M3, abs=1e-8)

    @pytest.mark.parametrize("n", [8, 11])
    def test_reduction_keeps_largest_real_eigenvalue(self, n):
        seen = 0
        for A in staircase.enumerate_Sstar_sym(n):
            p = staircase.full_params(A)
            if not verifier.final_case_shape(n, p.c, p.cbar, p.v, p.vbar):
                continue
            report = verifier.rooted_bound_check(A)
            assert report.rho_r_M2 == pytest.approx(report.rho_r_M3, abs=1e-8), A.mu
            seen += 1
        assert seen > 0

    def test_other_shapes_are_reported(self):
        report = verifier.rooted_bound_check(staircase.split_graph(6, 2))
        assert not report.final_case_shape
        assert report.k is None and report.matches_final_case_m2 is None


class TestPropertySuite:
    def test_small_orders(self):
        report = verifier.property_suite(8)
        failed = [(c.name, c.first_failure) for c in report.checks if not c.passed]
        assert report.passed, failed
        names = {c.name for c in report.checks}
        assert {"row_sum_bound_soundness", "normalize_chain", "rooted_bound_chain", "quartic_at_rho0"} <= names
        populated = {
            "row_sum_bound_soundness",
            "equality_structure_iff",
            "shift_row_contract",
            "normalize_chain",
            "c_sum_window",
            "split_graph_extremal",
            "rooted_bound_chain",
        }
        assert all(c.instances > 0 for c in report.checks if c.name in populated)

    def test_order_ten(self):
        report = verifier.property_suite(10)
        assert report.passed, [(c.name, c.first_failure) for c in report.checks if not c.passed]

    def test_cap(self):
        with pytest.raises(CapExceededError):
            verifier.property_suite(15)

    def test_final_case_pair_left_to_certificate(self):
        p = ParamSix(c=3, v=2, s=2, cbar=3, vbar=1, sbar=2)
        assert p in bounds.closed_form_fixtures(5)
        assert float(bounds.g_quartic(p)(bounds.rho0_value(5))) == pytest.approx(-32.0, abs=1e-6)
        (check,) = [c for c in verifier.property_suite(5).checks if c.name == "quartic_at_rho0"]
        assert check.passed, check.first_failure

    def test_diagonal_corner(self):
        A = staircase.from_profile([4, 4, 0, 0])
        assert staircase.membership(A).in_Sstar and not staircase.is_symmetric(A)
        p = staircase.full_params(A)
        assert (p.c, p.v, p.cbar, p.vbar) == (2, 0, 1, 1)
        assert verifier._corner_implication(4, A, p) is None
        (check,) = [c for c in verifier.property_suite(5).checks if c.name == "complement_duality"]
        assert check.passed, check.first_failure

    def test_corner_implications(self):
        for n in range(3, 8):
            for A in staircase.enumerate_Sstar(n):
                p = staircase.full_params(A)
                assert verifier._corner_implication(n, A, p) is not False, A.mu
