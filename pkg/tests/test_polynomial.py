import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from hypothesis import given, settings, strategies as st

from src.models.polynomial import (
    FixtureFormatError,
    MPoly,
    SymbolicMatrix,
    charpoly,
    format_transcription,
    largest_root_interval,
    load_transcription,
    parse_transcription,
    to_fraction,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)

class TestMPoly(unittest.TestCase):

    def setUp(self):
        self.p = MPoly.parse("x^2 - 2*n*s + a/3")

    def test_terms(self):
        terms = self.p.terms()
        self.assertEqual(terms[(2, 0, 0, 0)], Fraction(1))
        self.assertEqual(terms[(0, 1, 1, 0)], Fraction(-2))
        self.assertEqual(terms[(0, 0, 0, 1)], Fraction(1, 3))
        self.assertEqual(self.p.coefficient((0, 0, 0, 0)), Fraction(0))
        self.assertEqual(self.p.degree('x'), 2)
        self.assertEqual(self.p.free_variables(), {'x', 'n', 's', 'a'})

    def test_terms_are_copies(self):
        self.p.terms()[(9, 9, 9, 9)] = Fraction(1)
        self.assertNotIn((9, 9, 9, 9), self.p.terms())

    def test_arithmetic(self):
        x, n = MPoly.variable('x'), MPoly.variable('n')
        self.assertEqual((x + n) ** 2, MPoly.parse("x^2 + 2*x*n + n^2"))
        self.assertEqual(x - x, 0)
        self.assertEqual(2 * x - x, x)
        self.assertEqual(-x + 1, 1 - x)
        self.assertTrue(MPoly.constant(0).is_zero)
        self.assertEqual(hash(MPoly.parse("n + s")), hash(MPoly.parse("s + n")))

    def test_from_terms(self):
        p = MPoly.from_terms({(1, 0, 0, 0): 2, (0, 0, 0, 0): Fraction(-1, 2), (0, 1, 0, 0): 0})
        self.assertEqual(p, MPoly.parse("2*x - 1/2"))
        self.assertTrue(MPoly.from_terms({}).is_zero)

    def test_evaluate(self):
        self.assertEqual(self.p.evaluate(x=3, n=2, s=1, a=Fraction(3, 4)), Fraction(9 - 4) + Fraction(1, 4))
        with self.assertRaises(ValueError):
            self.p.evaluate(x=1, n=1, s=1)
        self.assertEqual(MPoly.parse("n + 1").evaluate(n=2), 3)

    def test_floats_evaluate_exactly(self):
        value = MPoly.parse("n").evaluate(n=0.1 + 0.2)
        self.assertEqual(value, Fraction(0.1 + 0.2))
        self.assertNotEqual(value, Fraction(3, 10))
        self.assertEqual(to_fraction(0.375), Fraction(3, 8))

    def test_substitute_and_differentiate(self):
        p = MPoly.parse("x^3 + n*x")
        self.assertEqual(p.substitute('x', MPoly.parse('n - 5')), MPoly.parse("(n - 5)^3 + n*(n - 5)"))
        self.assertEqual(p.substitute('n', Fraction(1, 2)), MPoly.parse("x^3 + x/2"))
        self.assertEqual(p.differentiate('x'), MPoly.parse("3*x^2 + n"))
        self.assertEqual(p.coefficient_in('x', 1), MPoly.variable('n'))

    def test_divide_exact(self):
        p = MPoly.parse("(s - 1)*(x^2 + n)")
        self.assertEqual(p.divide_exact(MPoly.parse("s - 1")), MPoly.parse("x^2 + n"))
        self.assertIsNone(MPoly.parse("s^2 + 1").divide_exact(MPoly.parse("s - 1")))
        with self.assertRaises(ZeroDivisionError):
            p.divide_exact(MPoly.constant(0))

    def test_univariate(self):
        self.assertEqual(MPoly.parse("x^2 - 2").univariate().degree(), 2)
        with self.assertRaises(ValueError):
            MPoly.parse("x + n").univariate()

    @settings(max_examples=50, deadline=None)
    @given(small, small, small, small)
    def test_evaluation_is_a_ring_homomorphism(self, x, n, s, a):
        p, q = MPoly.parse("x*n - s^2 + 3"), MPoly.parse("a*x + 1/2")
        point = {'x': x, 'n': n, 's': s, 'a': a}
        self.assertEqual((p * q).evaluate(**point), p.evaluate(**point) * q.evaluate(**point))
        self.assertEqual((p - q).evaluate(**point), p.evaluate(**point) - q.evaluate(**point))

class TestSymbolicMatrix(unittest.TestCase):

    def test_charpoly(self):
        m = SymbolicMatrix.from_strings([['n', '1'], ['1', 'n']])
        self.assertEqual(charpoly(m), MPoly.parse("(x - n)^2 - 1"))

    def test_substitute(self):
        m = SymbolicMatrix.from_strings([['a*n', '0'], ['s', '1']]).substitute(n=2, a=Fraction(1, 2))
        self.assertEqual(m.entry(0, 0), MPoly.constant(1))
        self.assertEqual(m.order, 2)

    def test_shape_checks(self):
        with self.assertRaises(ValueError):
            SymbolicMatrix.from_strings([['1', '2']])
        with self.assertRaises(ValueError):
            SymbolicMatrix.from_strings([['0'] * 9] * 9)

    def test_largest_root_interval(self):
        lo, hi = largest_root_interval(MPoly.parse("x^2 - 2"))
        self.assertLessEqual(lo, hi)
        self.assertLessEqual(hi - lo, Fraction(1, 10**12))
        self.assertTrue(lo * lo <= 2 <= hi * hi)
        with self.assertRaises(ValueError):
            largest_root_interval(MPoly.parse("x^2 + 1"))

class TestTranscriptions(unittest.TestCase):

    def test_parse(self):
        p = parse_transcription(["# comment", "", "3/2 1 0 0 0", "-1/1 0 0 0 0  # trailing"])
        self.assertEqual(p, MPoly.parse("3*x/2 - 1"))

    def test_format_errors(self):
        cases = [
            ["1/1 0 0 0"],
            ["1/1 0 0 0 -1"],
            ["1/1 0 0 0 0", "2/1 0 0 0 0"],
            ["0/1 1 0 0 0"],
            ["1/0 1 0 0 0"],
            ["x 1 0 0 0"],
        ]
        for lines in cases:
            with self.assertRaises(FixtureFormatError):
                parse_transcription(lines)

    def test_error_line_number(self):
        with self.assertRaises(FixtureFormatError) as ctx:
            parse_transcription(["# header", "1/1 0 0 0 0", "bad"])
        self.assertEqual(ctx.exception.line, 3)

    def test_format_then_parse(self):
        p = load_transcription('order_cubic_at_six')
        self.assertEqual(parse_transcription(format_transcription(p)), p)
        self.assertEqual(p, MPoly.parse("-338*a^3 + 1382*a^2 - 1810*a + 626"))

    def test_load_from_directory(self):
        with tempfile.TemporaryDirectory() as root:
            Path(root, 'sample.txt').write_text("# sample\n2/1 0 1 0 0\n", encoding='ascii')
            self.assertEqual(load_transcription('sample', Path(root)), MPoly.parse("2*n"))

if __name__ == '__main__':
    unittest.main()
