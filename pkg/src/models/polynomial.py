###############################################################################
# IMPORTS
###############################################################################

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import sympy
from sympy import QQ, Poly, Rational, symbols
from sympy.parsing.sympy_parser import parse_expr

###############################################################################
# VARIABLES
###############################################################################

# Fixed, ordered variable set. Exponent vectors are (e_x, e_n, e_s, e_a).
VARIABLES = ('x', 'n', 's', 'a')
X, N, S, A = GENS = symbols(VARIABLES)
_SYMBOL = dict(zip(VARIABLES, GENS))

TRANSCRIPTIONS = Path(__file__).resolve().parents[1] / 'data' / 'transcriptions'

Number = Union[int, Fraction]

###############################################################################
# ERRORS
###############################################################################

class FixtureFormatError(ValueError):
    """
    Raised for a malformed line in a transcription file.
    """

    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class IdentityViolation(ArithmeticError):
    """
    Raised when an exact division expected by a derivation leaves a remainder.
    """

    def __init__(self, message, remainder):
        super().__init__(f"{message}; remainder {remainder}")
        self.remainder = remainder

###############################################################################
# CONVERSIONS
###############################################################################

def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # The exact binary value; 0.1 is not 1/10.
        return Fraction(value)
    if not hasattr(value, 'p'):
        # Ground-domain elements of QQ (PythonMPQ or gmpy2.mpq).
        if hasattr(value, 'numerator'):
            return Fraction(int(value.numerator), int(value.denominator))
        value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def to_rational(value) -> Rational:
    value = to_fraction(value)
    return Rational(value.numerator, value.denominator)

###############################################################################
# MULTIVARIATE POLYNOMIAL
###############################################################################

class MPoly:
    """
    Exact polynomial over the rationals in the variables x, n, s, a.

    A thin wrapper around sympy's Poly over QQ with the generators fixed, so
    that structural equality is mathematical equality and every result stays
    in the same ring.

    Attributes:
        poly (sympy.Poly): The underlying polynomial.

    Methods:
        parse(text): Builds a polynomial from an expression string.
        from_terms(terms): Builds a polynomial from {exponents: coefficient}.
        terms(): Exponent vector -> Fraction map (zero terms omitted).
        evaluate(**values): Exact value at a full assignment.
        substitute(var, value): Replaces a variable by a number or polynomial.
        differentiate(var): Partial derivative.
        divide_exact(divisor): Exact quotient, or None with a remainder.
    """

    __slots__ = ('poly', '_terms')

    def __init__(self, poly: Poly):
        if tuple(poly.gens) != GENS:
            poly = Poly(poly.as_expr(), *GENS, domain=QQ)
        elif poly.get_domain() != QQ:
            poly = poly.set_domain(QQ)
        self.poly = poly
        self._terms = None

    ###########################################################################
    # CONSTRUCTION
    ###########################################################################

    @classmethod
    def parse(cls, text: str) -> MPoly:
        expr = parse_expr(text.replace('^', '**'), local_dict=dict(_SYMBOL))
        return cls(Poly(expr, *GENS, domain=QQ))

    @classmethod
    def constant(cls, value: Number) -> MPoly:
        return cls(Poly(to_rational(value), *GENS, domain=QQ))

    @classmethod
    def variable(cls, name: str) -> MPoly:
        return cls(Poly(_SYMBOL[name], *GENS, domain=QQ))

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int, int, int], Number]) -> MPoly:
        rep = {exps: to_rational(coeff) for exps, coeff in terms.items() if coeff != 0}
        if not rep:
            return cls.constant(0)
        return cls(Poly.from_dict(rep, *GENS, domain=QQ))

    @staticmethod
    def coerce(value) -> MPoly:
        return value if isinstance(value, MPoly) else MPoly.constant(value)

    ###########################################################################
    # ARITHMETIC
    ###########################################################################

    def __add__(self, other):
        return MPoly(self.poly + MPoly.coerce(other).poly)

    __radd__ = __add__

    def __sub__(self, other):
        return MPoly(self.poly - MPoly.coerce(other).poly)

    def __rsub__(self, other):
        return MPoly(MPoly.coerce(other).poly - self.poly)

    def __mul__(self, other):
        return MPoly(self.poly * MPoly.coerce(other).poly)

    __rmul__ = __mul__

    def __neg__(self):
        return MPoly(-self.poly)

    def __pow__(self, k: int):
        return MPoly(self.poly ** k)

    def __eq__(self, other):
        if not isinstance(other, (MPoly, int, Fraction)):
            return NotImplemented
        return (self - other).is_zero

    def __hash__(self):
        return hash(tuple(sorted(self.terms().items())))

    def __repr__(self):
        return f"MPoly({self.poly.as_expr()})"

    def __str__(self):
        return str(self.poly.as_expr())

    ###########################################################################
    # QUERIES
    ###########################################################################

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        if self._terms is None:
            self._terms = {} if self.poly.is_zero else {
                exps: to_fraction(coeff) for exps, coeff in self.poly.terms()
            }
        return dict(self._terms)

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self.terms().get(tuple(exponents), Fraction(0))

    def degree(self, var: str) -> int:
        return max((exps[VARIABLES.index(var)] for exps in self.terms()), default=0)

    def coefficient_in(self, var: str, power: int) -> MPoly:
        """
        Coefficient of var**power, as a polynomial in the remaining variables.
        """

        k = VARIABLES.index(var)
        return MPoly.from_terms({
            exps[:k] + (0,) + exps[k + 1:]: coeff
            for exps, coeff in self.terms().items() if exps[k] == power
        })

    def free_variables(self) -> set[str]:
        return {var for k, var in enumerate(VARIABLES) if any(exps[k] for exps in self.terms())}

    ###########################################################################
    # OPERATIONS
    ###########################################################################

    def evaluate(self, **values: Number) -> Fraction:
        """
        Exact value at a rational assignment. Every variable that occurs must
        be assigned; variables that do not occur may be omitted.
        """

        missing = self.free_variables() - values.keys()
        if missing:
            raise ValueError(f"no value for {sorted(missing)}")
        point = [to_fraction(values.get(var, 0)) for var in VARIABLES]

        total = Fraction(0)
        for exps, coeff in self.terms().items():
            term = coeff
            for value, e in zip(point, exps):
                if e:
                    term *= value ** e
            total += term
        return total

    def substitute(self, var: str, value) -> MPoly:
        replacement = value.poly.as_expr() if isinstance(value, MPoly) else to_rational(value)
        return MPoly(Poly(self.poly.as_expr().subs(_SYMBOL[var], replacement), *GENS, domain=QQ))

    def differentiate(self, var: str) -> MPoly:
        return MPoly(self.poly.diff(_SYMBOL[var]))

    def divide_exact(self, divisor: MPoly) -> Optional[MPoly]:
        """
        Returns q with q * divisor == self, or None when divisor does not divide
        self exactly.
        """

        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        quotient, remainder = self.poly.div(divisor.poly)
        if not remainder.is_zero or quotient * divisor.poly != self.poly:
            return None
        return MPoly(quotient)

    def remainder(self, divisor: MPoly) -> MPoly:
        return MPoly(self.poly.rem(divisor.poly))

    def univariate(self, var: str = 'x') -> Poly:
        """
        The polynomial as a univariate sympy Poly; every other variable must
        already be substituted away.
        """

        extra = self.free_variables() - {var}
        if extra:
            raise ValueError(f"variables {sorted(extra)} are still free")
        return Poly(self.poly.as_expr(), _SYMBOL[var], domain=QQ)

###############################################################################
# SYMBOLIC MATRICES
###############################################################################

@dataclass(frozen=True)
class SymbolicMatrix:
    """
    Square matrix of MPoly entries in n, s, a.
    """

    rows: tuple[tuple[MPoly, ...], ...]

    def __post_init__(self):
        r = len(self.rows)
        if r > 8:
            raise ValueError(f"symbolic matrices are limited to order 8, got {r}")
        if any(len(row) != r for row in self.rows):
            raise ValueError("matrix is not square")

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]]) -> SymbolicMatrix:
        return cls(tuple(tuple(MPoly.parse(entry) for entry in row) for row in rows))

    @property
    def order(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> MPoly:
        return self.rows[i][j]

    def substitute(self, **values: Number) -> SymbolicMatrix:
        rows = []
        for row in self.rows:
            out = []
            for entry in row:
                for var, value in values.items():
                    entry = entry.substitute(var, value)
                out.append(entry)
            rows.append(tuple(out))
        return SymbolicMatrix(tuple(rows))

    def to_sympy(self) -> sympy.Matrix:
        return sympy.Matrix([[entry.poly.as_expr() for entry in row] for row in self.rows])


def charpoly(m: SymbolicMatrix) -> MPoly:
    """
    det(x*I - m) by cofactor expansion, expanded exactly.
    """

    shifted = X * sympy.eye(m.order) - m.to_sympy()
    return MPoly(Poly(shifted.det(method='laplace'), *GENS, domain=QQ))


def largest_root_interval(p: MPoly, eps: Fraction = Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
    """
    Isolating interval of the largest real root of a polynomial in x alone.

    Parameters:
        p (MPoly): Polynomial whose only free variable is x.
        eps (Fraction): Interval width to refine to.

    Returns:
        tuple of Fraction: (lo, hi) with exactly one root of p inside.
    """

    intervals = p.univariate('x').intervals(eps=to_rational(eps))
    if not intervals:
        raise ValueError(f"{p} has no real root")
    (lo, hi), _ = max(intervals, key=lambda item: item[0][1])
    return to_fraction(lo), to_fraction(hi)

###############################################################################
# TRANSCRIPTIONS
###############################################################################

def parse_transcription(lines: Sequence[str]) -> MPoly:
    """
    Parses the fixture format: one term per line, "num/den e_x e_n e_s e_a",
    with '#' comments and blank lines ignored.
    """

    terms = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue

        fields = line.split()
        if len(fields) != 5:
            raise FixtureFormatError(f"expected 5 fields, got {len(fields)}", lineno)
        try:
            num, _, den = fields[0].partition('/')
            coeff = Fraction(int(num), int(den) if den else 1)
            exps = tuple(int(field) for field in fields[1:])
        except (ValueError, ZeroDivisionError) as exc:
            raise FixtureFormatError(f"bad term {line!r}", lineno) from exc

        if any(e < 0 for e in exps):
            raise FixtureFormatError("negative exponent", lineno)
        if exps in terms:
            raise FixtureFormatError(f"repeated exponent vector {exps}", lineno)
        if coeff == 0:
            raise FixtureFormatError("zero coefficient", lineno)
        terms[exps] = coeff

    return MPoly.from_terms(terms)


@lru_cache(maxsize=None)
def load_transcription(name: str, root: Path = TRANSCRIPTIONS) -> MPoly:
    path = Path(root) / f"{name}.txt"
    with open(path, encoding='ascii') as f:
        return parse_transcription(f.read().splitlines())


def format_transcription(p: MPoly) -> list[str]:
    # Descending exponent vectors, matching the fixture files.
    return [
        f"{coeff.numerator}/{coeff.denominator} " + " ".join(map(str, exps))
        for exps, coeff in sorted(p.terms().items(), reverse=True)
    ]
