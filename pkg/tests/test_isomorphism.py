import unittest

import networkx as nx
from hypothesis import given, settings, strategies as st

from src.models.graph import Graph, JoinFamilySpec, build_family, complete, parse_graph6
from src.models.isomorphism import are_isomorphic, find_isomorphism, refine_colors
from tests.strategies import fixture_lines, graphs, to_networkx

class TestIsomorphism(unittest.TestCase):

    def setUp(self):
        self.g = build_family(JoinFamilySpec(1, (1, 3, 5)))

    def test_refinement_separates_cells(self):
        (colors,) = refine_colors((self.g,))
        self.assertEqual(len(set(colors)), 4)
        self.assertEqual(len({colors[v] for v in range(2, 5)}), 1)

    def test_permutation_is_found(self):
        perm = [9, 3, 0, 8, 1, 7, 2, 6, 5, 4]
        h = self.g.permute(perm)
        found = find_isomorphism(self.g, h)
        self.assertIsNotNone(found)
        self.assertEqual(self.g.permute(found), h)

    def test_non_isomorphic(self):
        self.assertFalse(are_isomorphic(self.g, build_family(JoinFamilySpec(1, (3, 3, 3)))))
        self.assertFalse(are_isomorphic(complete(3), complete(4)))
        # Same degree sequence: C6 against two triangles.
        c6 = Graph.from_edges(6, [(k, (k + 1) % 6) for k in range(6)])
        self.assertFalse(are_isomorphic(c6, build_family(JoinFamilySpec(0, (3, 3)))))

    def test_regular_graphs(self):
        # Refinement cannot split regular graphs; backtracking decides.
        prism = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
        k33 = Graph.from_edges(6, [(u, v) for u in range(3) for v in range(3, 6)])
        self.assertFalse(are_isomorphic(prism, k33))
        self.assertTrue(are_isomorphic(k33, k33.permute([1, 3, 5, 0, 2, 4])))

    def test_corpus_is_pairwise_distinct(self):
        corpus = [parse_graph6(line) for line in fixture_lines(4)]
        for i, g in enumerate(corpus):
            for h in corpus[i + 1:]:
                self.assertFalse(are_isomorphic(g, h))

    @settings(max_examples=100, deadline=None)
    @given(graphs(max_order=8), graphs(max_order=8))
    def test_agrees_with_networkx(self, g, h):
        self.assertEqual(are_isomorphic(g, h), nx.is_isomorphic(to_networkx(g), to_networkx(h)))

    @settings(max_examples=50, deadline=None)
    @given(graphs(max_order=9), st.randoms(use_true_random=False))
    def test_relabelling_invariance(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        found = find_isomorphism(g, g.permute(perm))
        self.assertEqual(g.permute(found), g.permute(perm))

if __name__ == '__main__':
    unittest.main()
