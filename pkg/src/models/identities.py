###############################################################################
# IMPORTS
###############################################################################

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Optional, Sequence

from .polynomial import (
    IdentityViolation,
    MPoly,
    SymbolicMatrix,
    charpoly,
    largest_root_interval,
    load_transcription,
)

logger = logging.getLogger(__name__)

###############################################################################
# QUOTIENT MATRICES
###############################################################################

def reduced_quotient_symbolic() -> SymbolicMatrix:
    """
    Quotient of A_a(K_s v (K_{n-2s-3} u K_3 u sK_1)) over the cells
    (apex, big clique, triangle, isolated vertices).
    """

    return SymbolicMatrix.from_strings([
        ['a*n - a*s + s - 1', '(1 - a)*(n - 2*s - 3)', '3*(1 - a)', '(1 - a)*s'],
        ['(1 - a)*s', 'n + a*s - 2*s - 4', '0', '0'],
        ['(1 - a)*s', '0', 'a*s + 2', '0'],
        ['(1 - a)*s', '0', '0', 'a*s'],
    ])


def extremal_quotient_symbolic() -> SymbolicMatrix:
    """
    Quotient of A_a(K_1 v (K_{n-5} u K_3 u K_1)) over the same four cells.
    """

    return SymbolicMatrix.from_strings([
        ['a*n - a', '(1 - a)*(n - 5)', '3*(1 - a)', '1 - a'],
        ['1 - a', 'n + a - 6', '0', '0'],
        ['1 - a', '0', 'a + 2', '0'],
        ['1 - a', '0', '0', 'a'],
    ])

###############################################################################
# COMPARISONS
###############################################################################

@dataclass(frozen=True)
class IdentityCheck:
    """
    Outcome of comparing a derived polynomial with a transcribed one.

    Attributes:
        name (str): Transcription name.
        holds (bool): Whether the two agree term for term.
        mismatches (tuple): (exponents, expected, got) for every differing term.
    """

    name: str
    holds: bool
    mismatches: tuple = field(default=())

    def describe(self) -> list[dict]:
        return [
            {'exponents': list(exps), 'expected': str(expected), 'got': str(got)}
            for exps, expected, got in self.mismatches
        ]


def compare(name: str, derived: MPoly, expected: Optional[MPoly] = None) -> IdentityCheck:
    expected = load_transcription(name) if expected is None else expected
    want, got = expected.terms(), derived.terms()
    mismatches = tuple(
        (exps, want.get(exps, Fraction(0)), got.get(exps, Fraction(0)))
        for exps in sorted(set(want) | set(got), reverse=True)
        if want.get(exps) != got.get(exps)
    )
    for exps, expected_coeff, got_coeff in mismatches:
        logger.info(f"{name}: exponent {exps} expected {expected_coeff}, got {got_coeff}")
    return IdentityCheck(name, not mismatches, mismatches)

###############################################################################
# DERIVATIONS
###############################################################################

@lru_cache(maxsize=None)
def reduced_charpoly() -> MPoly:
    return charpoly(reduced_quotient_symbolic())


@lru_cache(maxsize=None)
def extremal_charpoly() -> MPoly:
    return charpoly(extremal_quotient_symbolic())


@lru_cache(maxsize=None)
def derive_difference_cubic() -> MPoly:
    """
    f = (phi_reduced - phi_extremal) / (s - 1), by exact division.

    Raises:
        IdentityViolation: If s - 1 does not divide the difference.
    """

    difference = reduced_charpoly() - extremal_charpoly()
    divisor = MPoly.parse('s - 1')
    f = difference.divide_exact(divisor)
    if f is None:
        raise IdentityViolation("quartic difference is not divisible by s - 1", difference.remainder(divisor))
    return f


def radius_cubic() -> MPoly:
    # f evaluated at the clique radius x = n - 5.
    return derive_difference_cubic().substitute('x', MPoly.parse('n - 5'))


def order_cubic() -> MPoly:
    return radius_cubic().substitute('n', MPoly.parse('2*s + 6'))


def axis_margin() -> MPoly:
    """
    f''(n - 5) / 2. Nonnegative exactly when the symmetry axis of the quadratic
    f' lies at or left of x = n - 5.
    """

    second = derive_difference_cubic().differentiate('x').differentiate('x')
    return second.substitute('x', MPoly.parse('n - 5')) * Fraction(1, 2)

###############################################################################
# VERIFICATIONS
###############################################################################

def verify_reduced_charpoly() -> bool:
    return compare('reduced_charpoly', reduced_charpoly()).holds


def verify_extremal_charpoly() -> bool:
    return compare('extremal_charpoly', extremal_charpoly()).holds


def verify_difference_cubic() -> bool:
    return compare('difference_cubic', derive_difference_cubic()).holds


def verify_boundary_chain() -> bool:
    """
    f(n - 5), then n := 2s + 6, then s := 6, each against its transcription.
    """

    h = order_cubic()
    return all([
        compare('radius_cubic', radius_cubic()).holds,
        compare('order_cubic', h).holds,
        compare('order_cubic_at_six', h.substitute('s', 6)).holds,
    ])


def verify_half_alpha_derivative() -> bool:
    half = derive_difference_cubic().differentiate('x').substitute('a', Fraction(1, 2))
    return all([
        compare('half_derivative', half).holds,
        compare('half_derivative_at_radius', half.substitute('x', MPoly.parse('n - 5'))).holds,
    ])


def reduce_axis_margin() -> tuple[MPoly, MPoly]:
    """
    Lower-bounds the axis margin at the region boundary.

    One copy of (1 - 2a)n is replaced by its floor 2 + 8a (n >= (2 + 8a)/(1 - 2a)),
    every other n by 2s + 6, and finally s by 2.

    Returns:
        tuple of MPoly: (linear form in s, value at s = 2).
    """

    margin = axis_margin()
    rest = margin - MPoly.parse('(1 - 2*a)*n')
    linear = rest.substitute('n', MPoly.parse('2*s + 6')) + MPoly.parse('2 + 8*a')
    return linear, linear.substitute('s', 2)


def verify_symmetry_axis_margin(step: Fraction = Fraction(1, 10)) -> bool:
    linear, floor = reduce_axis_margin()
    symbolic = compare('axis_margin_linear', linear).holds and compare('axis_margin_floor', floor).holds
    grid = sign_grid(axis_margin(), axis_margin_region(step))
    return symbolic and grid.min_value >= 0

###############################################################################
# BOUNDING CHAINS
###############################################################################

_N_MINUS_5 = 'n - 5'
_MIN_ORDER = '2*s + 6'

# (target, source, operation): every target is recomputed from its transcribed
# source, so a disagreement points at one displayed step.
BOUNDING_CHAIN = (
    ('difference_cubic_derivative', 'difference_cubic', ('diff', 'x')),
    ('derivative_at_radius', 'difference_cubic_derivative', ('subs', 'x', _N_MINUS_5)),
    ('derivative_at_min_order', 'derivative_at_radius', ('subs', 'n', _MIN_ORDER)),
    ('derivative_floor', 'derivative_at_min_order', ('subs', 's', '2')),
    ('half_derivative', 'difference_cubic_derivative', ('subs', 'a', '1/2')),
    ('half_derivative_at_radius', 'half_derivative', ('subs', 'x', _N_MINUS_5)),
    ('half_derivative_at_min_order', 'half_derivative_at_radius', ('subs', 'n', _MIN_ORDER)),
    ('half_derivative_at_eighteen', 'half_derivative_at_radius', ('subs', 'n', '18')),
    ('radius_cubic', 'difference_cubic', ('subs', 'x', _N_MINUS_5)),
    ('radius_cubic_derivative', 'radius_cubic', ('diff', 'n')),
    ('radius_derivative_at_min_order', 'radius_cubic_derivative', ('subs', 'n', _MIN_ORDER)),
    ('radius_derivative_floor', 'radius_derivative_at_min_order', ('subs', 's', '6')),
    ('radius_derivative_at_eighteen', 'radius_cubic_derivative', ('subs', 'n', '18')),
    *((f'radius_derivative_at_eighteen_s{k}', 'radius_derivative_at_eighteen', ('subs', 's', str(k))) for k in range(2, 6)),
    ('radius_cubic_at_eighteen', 'radius_cubic', ('subs', 'n', '18')),
    *((f'radius_cubic_at_eighteen_s{k}', 'radius_cubic_at_eighteen', ('subs', 's', str(k))) for k in range(2, 6)),
    ('order_cubic', 'radius_cubic', ('subs', 'n', _MIN_ORDER)),
    ('order_cubic_derivative', 'order_cubic', ('diff', 's')),
    ('order_derivative_floor', 'order_cubic_derivative', ('subs', 's', '6')),
    ('order_cubic_at_six', 'order_cubic', ('subs', 's', '6')),
)


def _apply(p: MPoly, operation) -> MPoly:
    if operation[0] == 'diff':
        return p.differentiate(operation[1])
    _, var, value = operation
    return p.substitute(var, MPoly.parse(value))


def check_bounding_chain() -> list[IdentityCheck]:
    return [
        compare(target, _apply(load_transcription(source), operation))
        for target, source, operation in BOUNDING_CHAIN
    ]


def order_derivative_constant() -> MPoly:
    """
    Constant term in s of h'(s), derived exactly from h.
    """

    return order_cubic().differentiate('s').coefficient_in('s', 0)

###############################################################################
# SIGN GRIDS
###############################################################################

Point = dict[str, Fraction]


@dataclass(frozen=True)
class GridRegion:
    """
    A finite rational grid: `ranges` maps each variable to (lo, hi, step), and
    every constraint must accept a point for it to be included.
    """

    ranges: Mapping[str, tuple[Fraction, Fraction, Fraction]]
    constraints: Sequence[Callable[[Point], bool]] = ()

    def points(self) -> Iterator[Point]:
        names = list(self.ranges)
        axes = []
        for name in names:
            lo, hi, step = (Fraction(v) for v in self.ranges[name])
            count = int((hi - lo) / step) + 1
            axes.append([lo + k * step for k in range(count)])
        # Lexicographic in the declared variable order.
        for values in itertools.product(*axes):
            point = dict(zip(names, values))
            if all(constraint(point) for constraint in self.constraints):
                yield point


@dataclass(frozen=True)
class SignGridReport:
    """
    Exact grid sample of a polynomial. A sampling certificate only.
    """

    points: int
    min_value: Fraction
    argmin: Point
    nonpositive: tuple[Point, ...]

    @property
    def positive(self) -> bool:
        return not self.nonpositive


def sign_grid(p: MPoly, region: GridRegion) -> SignGridReport:
    """
    Evaluates p exactly at every grid point of the region.

    Ties for the minimum keep the lexicographically first point.

    Raises:
        ValueError: If the region holds no point.
    """

    count, best, best_point, bad = 0, None, None, []
    for point in region.points():
        value = p.evaluate(**point)
        count += 1
        if best is None or value < best:
            best, best_point = value, point
        if value <= 0:
            bad.append(point)

    if not count:
        raise ValueError("sign grid region is empty")
    return SignGridReport(count, best, best_point, tuple(bad))


def threshold_order(a: Fraction) -> Fraction:
    """
    max(18, (2 + 8a)/(1 - 2a)) for a < 1/2, and 18 at a = 1/2.
    """

    a = Fraction(a)
    if not 0 <= a <= Fraction(1, 2):
        raise ValueError(f"alpha must lie in [0, 1/2], got {a}")
    if a == Fraction(1, 2):
        return Fraction(18)
    return max(Fraction(18), (2 + 8 * a) / (1 - 2 * a))


def _alpha_range(step):
    return (Fraction(0), Fraction(1, 2), Fraction(step))


def _above_threshold(point):
    return point['n'] >= threshold_order(point['a'])


def _above_min_order(point):
    return point['n'] >= 2 * point['s'] + 6


def derivative_region(step=Fraction(1, 20), max_order=60, max_apex=12) -> GridRegion:
    return GridRegion(
        {'a': _alpha_range(step), 's': (2, max_apex, 1), 'n': (18, max_order, 1)},
        (_above_threshold, _above_min_order),
    )


def radius_region(step=Fraction(1, 20), apex=(2, 5), max_order=60) -> GridRegion:
    return GridRegion(
        {'a': _alpha_range(step), 's': (apex[0], apex[1], 1), 'n': (18, max_order, 1)},
        (_above_threshold, _above_min_order),
    )


def order_region(step=Fraction(1, 20), max_apex=30) -> GridRegion:
    return GridRegion({'a': _alpha_range(step), 's': (6, max_apex, 1)})


def axis_margin_region(step=Fraction(1, 10), max_order=40) -> GridRegion:
    return GridRegion(
        {'a': (Fraction(0), Fraction(2, 5), Fraction(step)), 's': (2, 6, 1), 'n': (18, max_order, 1)},
        (_above_threshold, _above_min_order),
    )


def positivity_grids(step=Fraction(1, 20)) -> dict[str, tuple[MPoly, GridRegion]]:
    """
    The sampled positivity claims: f'(n - 5), f(n - 5) split at s = 6, and h(s).
    """

    derivative = derive_difference_cubic().differentiate('x').substitute('x', MPoly.parse('n - 5'))
    return {
        'derivative_at_radius': (derivative, derivative_region(step)),
        'radius_cubic_small_apex': (radius_cubic(), radius_region(step, (2, 5))),
        'radius_cubic_large_apex': (radius_cubic(), radius_region(step, (6, 12))),
        'order_cubic': (order_cubic(), order_region(step)),
    }

###############################################################################
# CERTIFIED SEPARATION
###############################################################################

@dataclass(frozen=True)
class Separation:
    """
    Isolating intervals of the largest roots of the two quartics at one point.
    """

    reduced: tuple[Fraction, Fraction]
    extremal: tuple[Fraction, Fraction]

    @property
    def certified(self) -> bool:
        return self.reduced[1] < self.extremal[0]

    @property
    def gap(self) -> Fraction:
        return self.extremal[0] - self.reduced[1]


def certified_separation(n: int, s: int, a: Fraction, eps: Fraction = Fraction(1, 10**12)) -> Separation:
    """
    Isolates the largest roots of both quotient characteristic polynomials at
    rational (n, s, a). The reduced graph's radius is certified below the
    extremal one when the intervals are disjoint and ordered.
    """

    point = {'n': n, 's': s, 'a': Fraction(a)}
    reduced = reduced_charpoly()
    extremal = extremal_charpoly()
    for var, value in point.items():
        reduced = reduced.substitute(var, value)
        if var != 's':
            extremal = extremal.substitute(var, value)
    return Separation(largest_root_interval(reduced, eps), largest_root_interval(extremal, eps))


def apex_range(n: int) -> range:
    # s values with n >= 2s + 6, from 2 upwards.
    return range(2, (n - 6) // 2 + 1)


def separation_grid(orders: Sequence[int], alphas: Sequence[Fraction]) -> Iterator[tuple[int, int, Fraction, Separation]]:
    for n in orders:
        for a in alphas:
            for s in apex_range(n):
                yield n, s, Fraction(a), certified_separation(n, s, a)