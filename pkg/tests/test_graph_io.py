import json

import networkx as nx
import numpy as np
import pytest

from ngbound.services import graph_io, staircase
from ngbound.utils.errors import ContractViolation, GraphFormatError, ProfileError


class TestGraph6:
    def test_triangle(self):
        a = graph_io.parse_graph6("Bw")
        np.testing.assert_array_equal(a, np.ones((3, 3)) - np.eye(3))
        assert a.dtype == np.int8

    def test_header_and_round_trip(self):
        a = staircase.split_graph(6, 2).to_array()
        text = graph_io.to_graph6(a)
        np.testing.assert_array_equal(graph_io.parse_graph6(text), a)
        np.testing.assert_array_equal(graph_io.parse_graph6(graph_io.GRAPH6_HEADER + text), a)

    def test_bad_byte(self):
        with pytest.raises(GraphFormatError) as info:
            graph_io.parse_graph6("B!")
        assert (info.value.token, info.value.offset) == ("!", 1)

    def test_bad_byte_after_header(self):
        with pytest.raises(GraphFormatError) as info:
            graph_io.parse_graph6(">>graph6<<B!")
        assert info.value.offset == 11

    def test_wrong_length(self):
        with pytest.raises(GraphFormatError) as info:
            graph_io.parse_graph6("Bww")
        assert info.value.offset == 2

    def test_lines_carry_offsets(self):
        with pytest.raises(GraphFormatError) as info:
            graph_io.parse_graph6_lines("Bw\nB!\n")
        assert info.value.offset == 4
        assert len(graph_io.parse_graph6_lines("Bw\n\nA_\n")) == 2


class TestEdgeList:
    def test_parse(self):
        a = graph_io.parse_edge_list("1 2\n2 3  # comment\n\n")
        assert a.shape == (3, 3)
        assert a[0, 1] == a[1, 0] == a[1, 2] == 1
        assert a.sum() == 4

    def test_order_from_largest_id(self):
        a = graph_io.parse_edge_list("1 2\n1 3\n1 4\n")
        np.testing.assert_array_equal(a, staircase.split_graph(4, 1).to_array())

    def test_order_line_keeps_isolated_vertices(self):
        a = graph_io.parse_edge_list("5\n1 2\n")
        assert a.shape == (5, 5)
        assert a.sum() == 2

    def test_vertex_out_of_range(self):
        with pytest.raises(GraphFormatError) as info:
            graph_io.parse_edge_list("3\n1 5\n")
        assert info.value.token == "5"
        assert info.value.offset == 4

    def test_zero_is_not_a_vertex(self):
        with pytest.raises(GraphFormatError) as info:
            graph_io.parse_edge_list("0 1\n")
        assert (info.value.token, info.value.offset) == ("0", 0)

    def test_loop(self):
        with pytest.raises(GraphFormatError):
            graph_io.parse_edge_list("1 1\n")

    def test_empty(self):
        with pytest.raises(GraphFormatError):
            graph_io.parse_edge_list("# nothing\n")

    def test_emit(self):
        assert graph_io.to_edge_list(staircase.split_graph(4, 1)) == "1 2\n1 3\n1 4\n"
        assert graph_io.to_edge_list(staircase.clique_union(4, 2)) == "4\n1 2\n"

    def test_round_trip_over_sstar_sym(self):
        for n in range(3, 8):
            for A in staircase.enumerate_Sstar_sym(n):
                text = graph_io.to_edge_list(A)
                np.testing.assert_array_equal(graph_io.parse_edge_list(text), A.to_array())
                (back,) = graph_io.load_staircases(text, "edges")
                assert back.mu == A.mu

    def test_emit_needs_symmetric(self, first_staircase):
        with pytest.raises(GraphFormatError):
            graph_io.to_edge_list(first_staircase)


class TestProfiles:
    def test_shapes(self):
        for text in ("[5, 4, 2, 2, 1]", '{"n": 5, "mu": [5, 4, 2, 2, 1]}', '[[5, 4, 2, 2, 1]]'):
            (A,) = graph_io.parse_profiles(text)
            assert A.mu == (5, 4, 2, 2, 1)

    def test_array_of_objects(self):
        items = [graph_io.profile_json(A) for A in staircase.enumerate_Sstar_sym(5)]
        parsed = graph_io.parse_profiles(json.dumps(items))
        assert [list(A.mu) for A in parsed] == [item["mu"] for item in items]

    def test_bad_json(self):
        with pytest.raises(GraphFormatError) as info:
            graph_io.parse_profiles("[5, 4,")
        assert info.value.offset > 0

    def test_bad_profile(self):
        with pytest.raises(ProfileError) as info:
            graph_io.parse_profiles("[1, 2]")
        assert info.value.index == 1


class TestLoad:
    def test_graph6_reorders_threshold_graphs(self):
        g = nx.relabel_nodes(nx.star_graph(4), {0: 3, 3: 0})
        text = graph_io.to_graph6(nx.to_numpy_array(g, nodelist=range(5)))
        (A,) = graph_io.load_staircases(text, "graph6")
        assert A.mu == staircase.split_graph(5, 1).mu

    def test_non_threshold_graph(self):
        text = graph_io.to_graph6(nx.to_numpy_array(nx.path_graph(4)))
        with pytest.raises(ContractViolation):
            graph_io.load_staircases(text, "graph6")

    def test_reads_files(self, tmp_path):
        path = tmp_path / "graphs.g6"
        path.write_text("Bw\nA_\n")
        assert len(graph_io.load_staircases(str(path), "graph6")) == 2

    def test_unknown_kind(self):
        with pytest.raises(GraphFormatError):
            graph_io.load_staircases("Bw", "dot")
