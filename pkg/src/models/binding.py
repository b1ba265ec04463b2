###############################################################################
# IMPORTS
###############################################################################

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .graph import CapacityError, Graph, VertexSet, neighborhood

# Largest order accepted by the exhaustive subset scan.
BINDING_CAP = 24

# Subsets are scanned as (high prefix, low table) pairs; the low table covers
# this many bits.
_LOW_BITS = 16

###############################################################################
# RESULT
###############################################################################

@dataclass(frozen=True)
class BindingResult:
    """
    Exact binding number together with the set that attains it.

    Attributes:
        value (Fraction): min |N(X)| / |X| over admissible X.
        witness (int): Bitmask of the smallest minimizing X.
    """

    value: Fraction
    witness: VertexSet

###############################################################################
# SUBSET TABLES
###############################################################################

def _low_neighborhoods(adj, low_bits):
    """
    N(X) for every X inside the low `low_bits` vertices, indexed by bitmask.
    """

    table = np.zeros(1 << low_bits, dtype=np.uint32)
    for b in range(low_bits):
        table[1 << b:2 << b] = table[:1 << b] | np.uint32(adj[b])
    return table


def _chunk(adj, n, prefix, low_bits, low_table, low_sizes):
    # Neighborhood sizes and subset sizes for all masks sharing the prefix.
    high = prefix << low_bits
    high_nbr = np.uint32(_mask_neighborhood(adj, high))
    nbr = low_table | high_nbr
    sizes = low_sizes + np.int64(high.bit_count())
    full = np.uint32((1 << n) - 1)
    admissible = (sizes > 0) & (nbr != full)
    return np.bitwise_count(nbr).astype(np.int64), sizes, admissible


def _mask_neighborhood(adj, mask):
    out = 0
    while mask:
        low = mask & -mask
        out |= adj[low.bit_length() - 1]
        mask ^= low
    return out


def _split(n):
    low_bits = min(n, _LOW_BITS)
    return low_bits, n - low_bits


def _scan_prefixes(adj, n, start, stop):
    """
    Best (numerator, denominator, mask) over the prefixes [start, stop), or None
    when that range holds no admissible set.
    """

    low_bits, _ = _split(n)
    low_table = _low_neighborhoods(adj, low_bits)
    low_sizes = np.bitwise_count(np.arange(1 << low_bits, dtype=np.uint32)).astype(np.int64)

    best = None
    for prefix in range(start, stop):
        nbr_sizes, sizes, admissible = _chunk(adj, n, prefix, low_bits, low_table, low_sizes)
        if not admissible.any():
            continue

        ratios = np.where(admissible, nbr_sizes / np.maximum(sizes, 1), np.inf)
        # argmin returns the first occurrence, i.e. the smallest mask in the chunk.
        k = int(np.argmin(ratios))
        candidate = (int(nbr_sizes[k]), int(sizes[k]), prefix << low_bits | k)

        if best is None or candidate[0] * best[1] < best[0] * candidate[1]:
            best = candidate

    return best


def _prefix_ranges(count, workers):
    step = -(-count // workers)
    return [(lo, min(lo + step, count)) for lo in range(0, count, step)]

###############################################################################
# OPERATIONS
###############################################################################

def _check_order(g, cap):
    if g.n < 1:
        raise ValueError("binding number needs at least one vertex")
    if g.n > cap:
        raise CapacityError(f"binding scan is capped at n <= {cap}, got n = {g.n}")


def binding_number(g: Graph, workers: int = 1, cap: int = BINDING_CAP) -> BindingResult:
    """
    Exact binding number by scanning every nonempty X with N(X) != V(G).

    The scan is split over high-bit prefixes; with workers > 1 the prefix
    ranges run in a process pool and are reduced in ascending order, which
    gives the same witness as the sequential scan.

    Parameters:
        g (Graph): Graph with 1 <= n <= cap.
        workers (int): Number of worker processes.
        cap (int): Largest order accepted.

    Returns:
        BindingResult: The minimum ratio and the smallest minimizing bitmask.
    """

    _check_order(g, cap)
    _, high_bits = _split(g.n)
    ranges = _prefix_ranges(1 << high_bits, max(1, workers))

    if workers > 1 and len(ranges) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_scan_prefixes, g.adj, g.n, lo, hi) for lo, hi in ranges]
            partials = [future.result() for future in futures]
    else:
        partials = [_scan_prefixes(g.adj, g.n, lo, hi) for lo, hi in ranges]

    best = None
    for part in partials:
        if part is not None and (best is None or part[0] * best[1] < best[0] * part[1]):
            best = part

    # X = {v} is always admissible in a loop-free graph.
    num, den, mask = best
    return BindingResult(Fraction(num, den), mask)


def is_one_binding(g: Graph, cap: int = BINDING_CAP) -> bool:
    """
    True iff bind(G) >= 1. Stops at the first admissible X with |N(X)| < |X|.
    """

    _check_order(g, cap)
    low_bits, high_bits = _split(g.n)
    low_table = _low_neighborhoods(g.adj, low_bits)
    low_sizes = np.bitwise_count(np.arange(1 << low_bits, dtype=np.uint32)).astype(np.int64)

    for prefix in range(1 << high_bits):
        nbr_sizes, sizes, admissible = _chunk(g.adj, g.n, prefix, low_bits, low_table, low_sizes)
        if (admissible & (nbr_sizes < sizes)).any():
            return False

    return True


def binding_ratio(g: Graph, x: VertexSet) -> Optional[Fraction]:
    """
    |N(X)| / |X| for a single set, or None when X is empty or N(X) = V(G).
    """

    nbr = neighborhood(g, x)
    if not x or nbr == g.vertex_set:
        return None
    return Fraction(nbr.bit_count(), x.bit_count())
