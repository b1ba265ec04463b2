import unittest

import networkx as nx
from hypothesis import given, settings, strategies as st

from src.models.graph import (
    Graph,
    Graph6ParseError,
    JoinFamilySpec,
    build_family,
    complete,
    components,
    delete,
    is_connected,
    iter_graph6,
    join,
    members,
    neighborhood,
    odd_components,
    parse_graph6,
    union,
    vertex_set,
    write_graph6,
)
from tests.strategies import fixture_lines, graphs, to_networkx

class TestGraph(unittest.TestCase):

    def setUp(self):
        self.path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])

    def test_from_edges(self):
        self.assertEqual(self.path.n, 4)
        self.assertEqual(self.path.edge_count, 3)
        self.assertEqual(self.path.edges(), [(0, 1), (1, 2), (2, 3)])
        self.assertEqual(self.path.degrees(), [1, 2, 2, 1])
        self.assertEqual(self.path.min_degree, 1)

    def test_rejects_loops_and_asymmetry(self):
        with self.assertRaises(ValueError):
            Graph.from_edges(3, [(1, 1)])
        with self.assertRaises(ValueError):
            Graph(2, (0b10, 0))
        with self.assertRaises(ValueError):
            Graph(2, (0b100, 0))

    def test_add_and_remove_edge(self):
        g = self.path.add_edge(0, 3)
        self.assertTrue(g.has_edge(3, 0))
        self.assertEqual(g.remove_edge(3, 0), self.path)
        with self.assertRaises(ValueError):
            self.path.remove_edge(0, 2)

    def test_permute(self):
        g = self.path.permute([3, 2, 1, 0])
        self.assertEqual(g, self.path)
        with self.assertRaises(ValueError):
            self.path.permute([0, 0, 1, 2])

    def test_vertex_sets(self):
        self.assertEqual(vertex_set([0, 2, 5]), 0b100101)
        self.assertEqual(members(0b100101), [0, 2, 5])
        self.assertEqual(neighborhood(self.path, vertex_set([0, 3])), vertex_set([1, 2]))

    def test_to_numpy(self):
        matrix = self.path.to_numpy()
        self.assertEqual(matrix.shape, (4, 4))
        self.assertTrue((matrix == matrix.T).all())
        self.assertEqual(matrix.sum(), 6)

class TestConstructors(unittest.TestCase):

    def test_complete(self):
        k5 = complete(5)
        self.assertEqual(k5.edge_count, 10)
        self.assertEqual(set(k5.degrees()), {4})
        self.assertEqual(complete(0).n, 0)

    def test_union_and_join(self):
        g = union(complete(2), complete(3))
        self.assertEqual(g.edge_count, 4)
        self.assertEqual(len(components(g)), 2)
        h = join(complete(1), g)
        self.assertEqual(h.edge_count, 4 + 5)
        self.assertTrue(is_connected(h))

    def test_build_family_layout(self):
        spec = JoinFamilySpec(1, (13, 1, 3))
        g = build_family(spec)
        self.assertEqual(spec.parts, (1, 3, 13))
        self.assertEqual(g.n, 18)
        # Apex first, then K1, K3, K13 in consecutive blocks.
        self.assertEqual(g.degree(0), 17)
        self.assertEqual(g.degree(1), 1)
        self.assertEqual([g.degree(v) for v in range(2, 5)], [3, 3, 3])
        self.assertEqual(g.degree(5), 13)
        self.assertEqual(spec.cells, (0b1, 0b10, 0b11100, ((1 << 13) - 1) << 5))

    def test_spec_parse_and_transfer(self):
        spec = JoinFamilySpec.parse("2,3,3")
        self.assertEqual((spec.s, spec.parts, spec.n, spec.q), (2, (3, 3), 8, 2))
        self.assertEqual(spec.transfer(1, 0), JoinFamilySpec(2, (2, 4)))
        self.assertEqual(str(JoinFamilySpec(1, (1, 3))), "K1 v (K1 u K3)")
        with self.assertRaises(ValueError):
            JoinFamilySpec.parse("2")
        with self.assertRaises(ValueError):
            JoinFamilySpec.parse("a,b")
        with self.assertRaises(ValueError):
            JoinFamilySpec(1, (1, 3)).transfer(1, 0)

    def test_spec_without_apex(self):
        spec = JoinFamilySpec(0, (6,))
        self.assertEqual(spec.cell_sizes, (6,))
        self.assertEqual(build_family(spec), complete(6))

class TestStructure(unittest.TestCase):

    def test_delete(self):
        g = build_family(JoinFamilySpec(1, (1, 3, 5)))
        rest = delete(g, 0b1)
        self.assertEqual(rest.n, 9)
        self.assertEqual(len(components(rest)), 3)

    def test_odd_components(self):
        g = build_family(JoinFamilySpec(1, (1, 3, 5)))
        self.assertEqual(odd_components(g, 0), 0)
        self.assertEqual(odd_components(g, 0b1), 3)

    def test_empty_graph_is_connected(self):
        self.assertTrue(is_connected(Graph(0, ())))
        self.assertFalse(is_connected(Graph(2, (0, 0))))

    def test_odd_and_even_components_partition(self):
        g = union(union(complete(3), complete(2)), union(complete(1), complete(4)))
        self.assertEqual(odd_components(g, 0), 2)
        self.assertEqual(len(components(g)), 4)

    @settings(max_examples=200, deadline=None)
    @given(graphs())
    def test_odd_components_count_odd_sizes(self, g):
        sizes = [c.bit_count() for c in components(g)]
        even = sum(1 for size in sizes if size % 2 == 0)
        self.assertEqual(odd_components(g, 0) + even, len(sizes))

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_order=8), graphs(max_order=8))
    def test_join_edge_count(self, g, h):
        self.assertEqual(join(g, h).edge_count, g.edge_count + h.edge_count + g.n * h.n)
        self.assertEqual(join(g, h).n, g.n + h.n)

    @settings(max_examples=100, deadline=None)
    @given(graphs())
    def test_components_match_networkx(self, g):
        expected = sorted(sorted(c) for c in nx.connected_components(to_networkx(g)))
        self.assertEqual(sorted(members(c) for c in components(g)), expected)

class TestGraph6(unittest.TestCase):

    def test_known_encodings(self):
        self.assertEqual(parse_graph6("C~"), complete(4))
        star = parse_graph6("D?{")
        self.assertEqual(star.degrees(), [1, 1, 1, 1, 4])
        self.assertEqual(write_graph6(complete(4)), b"C~")

    def test_header_and_newline(self):
        self.assertEqual(parse_graph6(b">>graph6<<C~\n"), complete(4))

    def test_long_form(self):
        g = complete(64)
        data = write_graph6(g)
        self.assertEqual(data[0], 126)
        self.assertEqual(parse_graph6(data), g)

    def test_errors_carry_offsets(self):
        with self.assertRaises(Graph6ParseError) as ctx:
            parse_graph6("C")
        self.assertEqual(ctx.exception.offset, 1)
        with self.assertRaises(Graph6ParseError) as ctx:
            parse_graph6("C~~")
        self.assertEqual(ctx.exception.offset, 2)
        with self.assertRaises(Graph6ParseError) as ctx:
            parse_graph6("C ~")
        self.assertEqual(ctx.exception.offset, 1)
        with self.assertRaises(Graph6ParseError):
            parse_graph6("")
        with self.assertRaises(Graph6ParseError):
            parse_graph6("~~??????")

    def test_nonzero_padding(self):
        # K2 uses one bit of its single data byte.
        with self.assertRaises(Graph6ParseError):
            parse_graph6("A~")

    def test_iter_skips_blank_lines(self):
        lines = [b"C~\n", b"\n", b"A_\n"]
        self.assertEqual([k for k, _ in iter_graph6(lines)], [1, 3])

    def test_fixture_corpora_match_networkx(self):
        for order, count in [(2, 2), (4, 11), (6, 156)]:
            lines = fixture_lines(order)
            self.assertEqual(len(lines), count)
            for line in lines:
                g = parse_graph6(line)
                self.assertTrue(nx.is_isomorphic(to_networkx(g), nx.from_graph6_bytes(line)))

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_order=12))
    def test_encoding_matches_networkx(self, g):
        expected = nx.to_graph6_bytes(to_networkx(g), header=False).strip()
        self.assertEqual(write_graph6(g), expected)

    @settings(max_examples=1000, deadline=None)
    @given(graphs(max_order=20))
    def test_parse_inverts_write(self, g):
        self.assertEqual(parse_graph6(write_graph6(g)), g)

if __name__ == '__main__':
    unittest.main()
