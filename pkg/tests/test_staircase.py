import itertools

import networkx as nx
import networkx.algorithms.threshold
import numpy as np
import pytest

from ngbound.services import staircase
from ngbound.utils.errors import CapExceededError, ContractViolation, ProfileError


class TestEncoding:
    def test_canonical_profile(self):
        assert staircase.from_profile([2, 2, 0]).mu == (2, 1, 0)
        assert staircase.from_profile([3, 3, 3]).mu == (3, 3, 2)

    def test_profile_errors_name_the_row(self):
        with pytest.raises(ProfileError) as info:
            staircase.from_profile([1, 2, 0])
        assert info.value.index == 1
        with pytest.raises(ProfileError):
            staircase.from_profile([4, 1, 0])

    def test_row_sums(self, first_staircase):
        assert first_staircase.row_sums == (5, 3, 2, 3, 2, 1)

    def test_dense_round_trip(self, second_staircase):
        assert staircase.from_dense(second_staircase.to_array()) == second_staircase

    def test_from_dense_rejects_gaps(self):
        with pytest.raises(ContractViolation):
            staircase.from_dense([[0, 0, 1], [1, 0, 0], [0, 0, 0]])


class TestGraphs:
    def test_split_graph_from_shuffled_labels(self):
        A = staircase.split_graph(6, 2)
        perm = np.array([4, 0, 5, 2, 1, 3])
        shuffled = A.to_array()[np.ix_(perm, perm)]
        assert staircase.from_graph(shuffled).mu == A.mu

    def test_threshold_detection_matches_networkx(self):
        n = 5
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = nx.Graph()
            g.add_nodes_from(range(n))
            g.add_edges_from(p for b, p in enumerate(pairs) if mask >> b & 1)
            a = nx.to_numpy_array(g, nodelist=range(n), dtype=int)
            if nx.algorithms.threshold.is_threshold_graph(g):
                A = staircase.from_graph(a)
                assert sorted(A.row_sums) == sorted(d for _, d in g.degree())
            else:
                with pytest.raises(ContractViolation):
                    staircase.from_graph(a)

    def test_builders(self):
        assert staircase.split_graph(5, 2).mu == (5, 5, 2, 2, 2)
        assert staircase.clique_union(5, 3).mu == (3, 3, 2, 0, 0)
        assert staircase.join_union(6, 3, 4).row_sums == (4, 4, 2, 2, 2, 0)
        with pytest.raises(ContractViolation):
            staircase.split_graph(4, 0)


class TestMembership:
    def test_first_is_nonsymmetric(self, first_staircase):
        m = staircase.membership(first_staircase)
        assert m.in_Sstar and not m.in_Sstar_sym

    def test_symmetric(self, final_case_staircase):
        assert staircase.membership(final_case_staircase).in_Sstar_sym

    def test_outside_sstar(self):
        # mu_1 < 2
        A = staircase.from_profile([1, 1, 0])
        assert not staircase.membership(A).in_Sstar
        with pytest.raises(ContractViolation):
            staircase.params(A)


class TestParameters:
    def test_first(self, first_staircase):
        p = staircase.full_params(first_staircase)
        assert p.triple == (4, 2, 1)
        assert p.bar_triple == (4, 1, 1)
        assert p.T == 0

    def test_second(self, second_staircase):
        p = staircase.full_params(second_staircase)
        assert (p.c, p.v, p.s, p.cbar, p.vbar, p.sbar) == (4, 4, 1, 3, 1, 4)
        assert p.T == 3

    def test_final_case(self, final_case_staircase):
        p = staircase.full_params(final_case_staircase)
        assert p.triple == (3, 2, 3)
        assert p.bar_triple == (3, 1, 1)

    def test_reflection_is_an_involution(self):
        for A in staircase.enumerate_Sstar(6):
            bar = staircase.reflect_complement(A)
            assert staircase.membership(bar).in_Sstar
            assert staircase.reflect_complement(bar) == A

    def test_symmetric_reflection_is_the_complement(self):
        for A in staircase.enumerate_Sstar_sym(7):
            a = A.to_array()
            comp = 1 - a - np.eye(A.n, dtype=a.dtype)
            rho = np.linalg.eigvalsh(comp.astype(float))[-1]
            bar = staircase.reflect_complement(A).to_array().astype(float)
            assert np.linalg.eigvalsh(bar)[-1] == pytest.approx(rho, abs=1e-9)

    def test_params_entry(self, second_staircase):
        entry = staircase.params_entry(second_staircase)
        assert entry.mu == [5, 4, 4, 4, 4, 0]
        assert entry.params.vbar == 1
        assert entry.membership.in_Sstar


class TestEnumeration:
    def test_small_classes(self):
        assert [A.mu for A in staircase.enumerate_Sstar_sym(3)] == [(3, 1, 1), (2, 1, 0)]
        assert {A.mu for A in staircase.enumerate_Sstar(3)} == {(3, 1, 1), (3, 1, 0), (2, 1, 1), (2, 1, 0)}

    @pytest.mark.parametrize("n", range(3, 11))
    def test_symmetric_count(self, n):
        assert sum(1 for _ in staircase.enumerate_Sstar_sym(n)) == 2 ** (n - 1) - 2

    def test_symmetric_members_are_valid_and_ordered(self):
        mus = [A.mu for A in staircase.enumerate_Sstar_sym(8)]
        assert mus == sorted(mus, reverse=True)
        assert len(set(mus)) == len(mus)
        for mu in mus:
            A = staircase.from_profile(mu)
            assert A.mu == mu
            assert staircase.membership(A).in_Sstar_sym

    @pytest.mark.parametrize("n", range(3, 8))
    def test_symmetric_class_is_threshold_graphs(self, n):
        oracle = []
        for steps in itertools.product("di", repeat=n - 1):
            g = nx.algorithms.threshold.threshold_graph(["i", *steps])
            if 0 < g.number_of_edges() < n * (n - 1) // 2:
                oracle.append(g)
        found = [nx.from_numpy_array(A.to_array()) for A in staircase.enumerate_Sstar_sym(n)]
        assert len(found) == len(oracle) == 2 ** (n - 1) - 2
        for g in found:
            matches = [h for h in oracle if nx.is_isomorphic(g, h)]
            assert len(matches) == 1
            oracle.remove(matches[0])
        assert oracle == []

    def test_first_row_filter(self):
        everything = [A.mu for A in staircase.enumerate_Sstar_sym(7)]
        filtered = [A.mu for first in range(7, 1, -1) for A in staircase.enumerate_Sstar_sym(7, first)]
        assert filtered == everything

    def test_general_contains_symmetric(self):
        general = {A.mu for A in staircase.enumerate_Sstar(6)}
        sym = {A.mu for A in staircase.enumerate_Sstar_sym(6)}
        assert sym < general
        for mu in general:
            assert staircase.membership(staircase.from_profile(mu)).in_Sstar

    def test_caps(self):
        with pytest.raises(CapExceededError):
            list(staircase.enumerate_Sstar_sym(25))
        with pytest.raises(CapExceededError):
            list(staircase.enumerate_Sstar(17))
