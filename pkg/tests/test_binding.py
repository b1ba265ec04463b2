import unittest
from fractions import Fraction
from itertools import combinations

from hypothesis import given, settings, strategies as st

from src.models.binding import binding_number, binding_ratio, is_one_binding
from src.models.graph import CapacityError, Graph, JoinFamilySpec, build_family, complete, neighborhood, parse_graph6, vertex_set
from tests.strategies import graphs


def brute_force_binding(g):
    best = None
    for k in range(1, g.n + 1):
        for x in combinations(range(g.n), k):
            nbr = neighborhood(g, vertex_set(x))
            if nbr == g.vertex_set:
                continue
            ratio = Fraction(nbr.bit_count(), k)
            if best is None or ratio < best:
                best = ratio
    return best

class TestBindingNumber(unittest.TestCase):

    def test_star(self):
        result = binding_number(parse_graph6("D?{"))
        self.assertEqual(result.value, Fraction(1, 4))
        # All four leaves share the neighborhood {4}.
        self.assertEqual(result.witness, 0b1111)

    def test_claw(self):
        claw = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
        self.assertEqual(binding_number(claw).value, Fraction(1, 3))

    def test_complete_graph(self):
        self.assertEqual(binding_number(complete(5)).value, Fraction(4, 1))

    def test_extremal_analogue(self):
        g = build_family(JoinFamilySpec(1, (1, 3, 5)))
        result = binding_number(g)
        self.assertEqual(result.value, Fraction(1))
        self.assertEqual(result.witness, 0b10)
        self.assertTrue(is_one_binding(g))

    def test_extremal_graph_is_one_binding(self):
        g = build_family(JoinFamilySpec(1, (1, 3, 13)))
        self.assertTrue(is_one_binding(g))
        self.assertEqual(binding_number(g).value, Fraction(1))

    def test_workers_give_same_result(self):
        g = build_family(JoinFamilySpec(1, (1, 3, 13)))
        self.assertEqual(binding_number(g, workers=2), binding_number(g, workers=1))

    def test_not_one_binding(self):
        self.assertFalse(is_one_binding(parse_graph6("D?{")))
        self.assertFalse(is_one_binding(Graph(1, (0,))))

    def test_binding_ratio(self):
        star = parse_graph6("D?{")
        self.assertEqual(binding_ratio(star, 0b11), Fraction(1, 2))
        self.assertIsNone(binding_ratio(star, 0))
        # N({4, 0}) is everything.
        self.assertIsNone(binding_ratio(star, 0b10001))

    def test_apex_over_independent_set(self):
        # K_s v (s + 1)K_1: the independent set sees only the s apex vertices.
        for s in range(1, 6):
            spec = JoinFamilySpec(s, (1,) * (s + 1))
            g = build_family(spec)
            independent = sum(spec.cells[1:])
            self.assertEqual(binding_ratio(g, independent), Fraction(s, s + 1))
            self.assertLess(binding_number(g).value, 1)
            self.assertFalse(is_one_binding(g))

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_relabeling_keeps_value(self, data):
        g = data.draw(graphs(min_order=1, max_order=10))
        order = data.draw(st.permutations(range(g.n)))
        self.assertEqual(binding_number(g.permute(list(order))).value, binding_number(g).value)

    def test_limits(self):
        with self.assertRaises(ValueError):
            binding_number(Graph(0, ()))
        with self.assertRaises(CapacityError):
            binding_number(complete(25))
        with self.assertRaises(CapacityError):
            is_one_binding(complete(10), cap=8)

    @settings(max_examples=100, deadline=None)
    @given(graphs(min_order=1, max_order=9))
    def test_matches_brute_force(self, g):
        result = binding_number(g)
        self.assertEqual(result.value, brute_force_binding(g))
        self.assertEqual(binding_ratio(g, result.witness), result.value)
        self.assertEqual(is_one_binding(g), result.value >= 1)

if __name__ == '__main__':
    unittest.main()
