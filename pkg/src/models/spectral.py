###############################################################################
# IMPORTS
###############################################################################

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .graph import Graph, VertexSet, members

# Asymmetry tolerated before a matrix is rejected.
SYMMETRY_TOL = 1e-12

# Off-diagonal Frobenius norm at which Jacobi sweeps stop, relative to max(1, |M|_F).
OFF_TOL = 1e-12

MAX_SWEEPS = 100

###############################################################################
# ERRORS
###############################################################################

class NotSymmetricError(ValueError):
    pass


class ConvergenceError(ArithmeticError):
    pass

###############################################################################
# TYPES
###############################################################################

@dataclass(frozen=True, eq=False)
class AlphaMatrix:
    """
    A_alpha(G) = alpha * D(G) + (1 - alpha) * A(G) as a dense array.
    """

    alpha: float
    entries: np.ndarray

    @property
    def order(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class Partition:
    """
    Ordered vertex partition; cells are bitmasks.
    """

    cells: tuple[VertexSet, ...]

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> Partition:
        # Consecutive blocks: the first sizes[0] indices, then the next sizes[1], ...
        cells, start = [], 0
        for size in sizes:
            cells.append(((1 << size) - 1) << start)
            start += size
        return cls(tuple(cells))

    @classmethod
    def discrete(cls, order: int) -> Partition:
        return cls(tuple(1 << v for v in range(order)))

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(cell.bit_count() for cell in self.cells)

    def validate(self, order: int):
        covered = 0
        for k, cell in enumerate(self.cells):
            if not cell:
                raise ValueError(f"cell {k} is empty")
            if cell & covered:
                raise ValueError(f"cell {k} overlaps an earlier cell")
            covered |= cell
        if covered != (1 << order) - 1:
            raise ValueError(f"cells do not cover the {order} indices exactly")


@dataclass(frozen=True, eq=False)
class QuotientMatrix:
    """
    Matrix of average block row sums. `cell_sizes` is None when the quotient
    was not built from a partition.
    """

    entries: np.ndarray
    cell_sizes: Optional[tuple[int, ...]] = None

    @property
    def order(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Eigenvalues in descending order with the convergence data of the solver.
    """

    eigenvalues: np.ndarray
    sweeps: int
    off_norm: float

    @property
    def radius(self) -> float:
        return float(self.eigenvalues[0])

###############################################################################
# ASSEMBLY
###############################################################################

def alpha_matrix(g: Graph, alpha: Union[float, Fraction]) -> AlphaMatrix:
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    alpha = float(alpha)
    adjacency = g.to_numpy()
    degrees = adjacency.sum(axis=1)
    return AlphaMatrix(alpha, alpha * np.diag(degrees) + (1 - alpha) * adjacency)


def _as_array(m) -> np.ndarray:
    return np.array(getattr(m, 'entries', m), dtype=float)


def _check_symmetric(a):
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {a.shape}")
    if a.size and np.max(np.abs(a - a.T)) > SYMMETRY_TOL:
        raise NotSymmetricError(f"max asymmetry {np.max(np.abs(a - a.T)):.3e} exceeds {SYMMETRY_TOL}")

###############################################################################
# EIGENSOLVER
###############################################################################

def _off_norm(a):
    return float(np.sqrt(np.sum(np.square(a - np.diag(np.diag(a))))))


def jacobi_spectrum(m, off_tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """
    Full spectrum of a symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits the pairs (p, q), p < q, in row order and annihilates
    a[p, q] with a plane rotation. Sweeps stop once the off-diagonal
    Frobenius norm falls below off_tol * max(1, |M|_F).

    Parameters:
        m (array-like or AlphaMatrix): Symmetric matrix.
        off_tol (float): Relative stopping tolerance.
        max_sweeps (int): Sweep cap.

    Returns:
        Spectrum: Eigenvalues sorted descending.

    Raises:
        NotSymmetricError: If the input is not symmetric.
        ConvergenceError: If the sweep cap is reached above tolerance.
    """

    a = _as_array(m)
    _check_symmetric(a)
    a = (a + a.T) / 2
    n = a.shape[0]
    threshold = off_tol * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    off = _off_norm(a)
    while off >= threshold:
        if sweeps == max_sweeps:
            raise ConvergenceError(f"off-diagonal norm {off:.3e} after {max_sweeps} sweeps")

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue

                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q

                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q

                a[p, q] = a[q, p] = 0.0

        sweeps += 1
        off = _off_norm(a)

    return Spectrum(np.sort(np.diag(a))[::-1].copy(), sweeps, off)


def spectral_radius(m, tol: float = 1e-10) -> float:
    """
    Largest eigenvalue of a symmetric matrix. The off-diagonal norm bounds the
    eigenvalue error, so sweeps continue until it is below min(tol, OFF_TOL).
    """

    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if _as_array(m).shape[0] == 0:
        raise ValueError("the empty matrix has no spectral radius")
    return jacobi_spectrum(m, off_tol=min(tol, OFF_TOL)).radius

###############################################################################
# QUOTIENTS
###############################################################################

def _blocks(a, p):
    index = [members(cell) for cell in p.cells]
    # sums[i, j] = row sums of block (i, j), one entry per row of cell i.
    return [[a[np.ix_(rows, cols)].sum(axis=1) for cols in index] for rows in index]


def quotient(m, p: Partition) -> QuotientMatrix:
    a = _as_array(m)
    p.validate(a.shape[0])
    sums = _blocks(a, p)
    r = len(p.cells)
    entries = np.array([[sums[i][j].mean() for j in range(r)] for i in range(r)])
    return QuotientMatrix(entries, p.sizes)


def is_equitable(m, p: Partition, tol: float = 1e-12) -> bool:
    a = _as_array(m)
    p.validate(a.shape[0])
    return all(np.ptp(block) <= tol for row in _blocks(a, p) for block in row)


def symmetrize(q: QuotientMatrix) -> np.ndarray:
    """
    D^(1/2) Q D^(-1/2) with D = diag(cell sizes). For a quotient of a symmetric
    matrix this is symmetric and has the eigenvalues of Q.
    """

    if q.cell_sizes is None:
        raise ValueError("quotient has no cell sizes")
    sizes = np.array(q.cell_sizes, dtype=float)
    if np.any(sizes <= 0):
        raise ValueError(f"cell sizes must be positive, got {q.cell_sizes}")
    root = np.sqrt(sizes)
    return root[:, None] * q.entries / root[None, :]


def quotient_largest_eigenvalue(q: QuotientMatrix) -> float:
    """
    Largest real eigenvalue of a quotient matrix.

    Uses the symmetrized similarity and the Jacobi solver when cell sizes are
    known; otherwise the largest real root of the characteristic polynomial
    (orders up to 4).
    """

    if q.order == 1:
        return float(q.entries[0, 0])
    if q.cell_sizes is not None:
        return spectral_radius(symmetrize(q))
    if q.order > 4:
        raise ValueError("quotients without cell sizes are limited to order 4")

    roots = np.roots(np.poly(q.entries))
    real = roots[np.abs(roots.imag) <= 1e-9 * max(1.0, float(np.max(np.abs(roots))))].real
    return float(np.max(real))

###############################################################################
# INTERLACING
###############################################################################

def interlacing_check(m, rows: Sequence[int], slack: float = 1e-9) -> bool:
    """
    Checks lambda_i >= mu_i >= lambda_{order - t + i} for the principal
    submatrix on `rows` (t = len(rows)).
    """

    a = _as_array(m)
    rows = sorted(set(rows))
    if any(not 0 <= r < a.shape[0] for r in rows):
        raise ValueError("row index out of range")
    if not rows:
        return True

    lam = jacobi_spectrum(a).eigenvalues
    mu = jacobi_spectrum(a[np.ix_(rows, rows)]).eigenvalues
    order, t = len(lam), len(mu)

    return all(
        lam[i] + slack >= mu[i] >= lam[order - t + i] - slack
        for i in range(t)
    )
