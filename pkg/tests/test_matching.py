import unittest

import networkx as nx
from hypothesis import assume, given, settings, strategies as st

from src.models.graph import CapacityError, Graph, JoinFamilySpec, build_family, complete, odd_components, parse_graph6
from src.models.matching import Matching, deficiency, has_perfect_matching, max_matching, tutte_witness
from tests.strategies import fixture_lines, graphs, to_networkx

class TestMatching(unittest.TestCase):

    def test_matching_type(self):
        m = Matching((1, 0, None))
        self.assertEqual(m.size, 1)
        self.assertFalse(m.is_perfect)
        self.assertEqual(m.pairs(), [(0, 1)])
        with self.assertRaises(ValueError):
            Matching((1, 2, None))

    def test_complete_graphs(self):
        self.assertTrue(has_perfect_matching(complete(6)))
        self.assertFalse(has_perfect_matching(complete(5)))
        self.assertEqual(max_matching(complete(5)).size, 2)
        self.assertTrue(has_perfect_matching(Graph(0, ())))

    def test_odd_cycle_with_pendant(self):
        # C5 plus a pendant vertex needs a blossom contraction.
        g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
        self.assertTrue(has_perfect_matching(g))
        self.assertEqual(deficiency(g), 0)

    def test_extremal_graph(self):
        g = build_family(JoinFamilySpec(1, (1, 3, 13)))
        self.assertFalse(has_perfect_matching(g))
        self.assertEqual(deficiency(g), 2)
        self.assertEqual(odd_components(g, 0b1), 3)

    def test_star(self):
        star = parse_graph6("D?{")
        self.assertEqual(max_matching(star).size, 1)
        self.assertEqual(deficiency(star), 3)

    @settings(max_examples=200, deadline=None)
    @given(graphs(max_order=12))
    def test_size_matches_networkx(self, g):
        m = max_matching(g)
        expected = len(nx.max_weight_matching(to_networkx(g), maxcardinality=True))
        self.assertEqual(m.size, expected)
        for u, v in m.pairs():
            self.assertTrue(g.has_edge(u, v))

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_adding_an_edge_never_shrinks_matching(self, data):
        g = data.draw(graphs(min_order=2, max_order=12))
        missing = [(u, v) for v in range(1, g.n) for u in range(v) if not g.has_edge(u, v)]
        assume(missing)
        u, v = data.draw(st.sampled_from(missing))
        self.assertGreaterEqual(max_matching(g.add_edge(u, v)).size, max_matching(g).size)

class TestTutte(unittest.TestCase):

    def test_witness_for_extremal_analogue(self):
        g = build_family(JoinFamilySpec(1, (1, 3, 5)))
        witness = tutte_witness(g)
        self.assertEqual(witness.s, 0b1)
        self.assertEqual(witness.odd_count, 3)

    def test_no_witness_with_perfect_matching(self):
        self.assertIsNone(tutte_witness(complete(6)))

    def test_odd_order_has_empty_witness(self):
        witness = tutte_witness(complete(3))
        self.assertEqual((witness.s, witness.odd_count), (0, 1))

    def test_capacity(self):
        with self.assertRaises(CapacityError):
            tutte_witness(complete(25))
        with self.assertRaises(CapacityError):
            tutte_witness(complete(8), cap=6)

    def test_corpora_agree(self):
        for order in (2, 4, 6):
            for line in fixture_lines(order):
                g = parse_graph6(line)
                self.assertEqual(has_perfect_matching(g), tutte_witness(g) is None, line)

if __name__ == '__main__':
    unittest.main()
