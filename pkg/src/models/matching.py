###############################################################################
# IMPORTS
###############################################################################

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .graph import CapacityError, Graph, VertexSet, members, odd_components

# Largest order accepted by the exhaustive Tutte scan.
TUTTE_CAP = 24

###############################################################################
# TYPES
###############################################################################

@dataclass(frozen=True)
class Matching:
    """
    A matching stored as a partial involution: mate[v] is the partner of v, or
    None when v is exposed.
    """

    mate: tuple[Optional[int], ...]

    def __post_init__(self):
        for v, u in enumerate(self.mate):
            if u is not None and self.mate[u] != v:
                raise ValueError(f"mate is not an involution at vertex {v}")

    @property
    def size(self) -> int:
        return sum(u is not None for u in self.mate) // 2

    @property
    def is_perfect(self) -> bool:
        return all(u is not None for u in self.mate)

    def pairs(self) -> list[tuple[int, int]]:
        return [(v, u) for v, u in enumerate(self.mate) if u is not None and v < u]


@dataclass(frozen=True)
class TutteWitness:
    """
    A vertex set S whose deletion leaves more odd components than |S|.
    """

    s: VertexSet
    odd_count: int

###############################################################################
# BLOSSOM SEARCH
###############################################################################

class _BlossomSearch:
    """
    Edmonds' augmenting-path search with blossom contraction.

    Blossoms are contracted implicitly through the `base` array; `parent`
    records the alternating tree. One instance serves a whole max_matching
    call; each root gets a fresh search state.
    """

    def __init__(self, g: Graph):
        self.n = g.n
        self.nbrs = [members(row) for row in g.adj]
        self.match = [-1] * g.n

    ###########################################################################
    # TREE HELPERS
    ###########################################################################

    def _lca(self, a, b):
        seen = [False] * self.n
        while True:
            a = self.base[a]
            seen[a] = True
            if self.match[a] == -1:
                break
            a = self.parent[self.match[a]]
        while True:
            b = self.base[b]
            if seen[b]:
                return b
            b = self.parent[self.match[b]]

    def _mark_path(self, v, b, child):
        while self.base[v] != b:
            self.blossom[self.base[v]] = True
            self.blossom[self.base[self.match[v]]] = True
            self.parent[v] = child
            child = self.match[v]
            v = self.parent[self.match[v]]

    ###########################################################################
    # SEARCH
    ###########################################################################

    def find_path(self, root):
        """
        Grows an alternating tree from `root`. Returns the exposed vertex that
        ends an augmenting path, or -1 when none exists.
        """

        n = self.n
        self.used = [False] * n
        self.parent = [-1] * n
        self.base = list(range(n))

        self.used[root] = True
        queue = deque([root])

        while queue:
            v = queue.popleft()
            for to in self.nbrs[v]:
                if self.base[v] == self.base[to] or self.match[v] == to:
                    continue

                if to == root or (self.match[to] != -1 and self.parent[self.match[to]] != -1):
                    # Odd cycle: contract the blossom onto its base.
                    cur = self._lca(v, to)
                    self.blossom = [False] * n
                    self._mark_path(v, cur, to)
                    self._mark_path(to, cur, v)
                    for i in range(n):
                        if self.blossom[self.base[i]]:
                            self.base[i] = cur
                            if not self.used[i]:
                                self.used[i] = True
                                queue.append(i)

                elif self.parent[to] == -1:
                    self.parent[to] = v
                    if self.match[to] == -1:
                        return to
                    self.used[self.match[to]] = True
                    queue.append(self.match[to])

        return -1

    def augment(self, end):
        v = end
        while v != -1:
            pv = self.parent[v]
            ppv = self.match[pv]
            self.match[v] = pv
            self.match[pv] = v
            v = ppv

    def run(self) -> Matching:
        for root in range(self.n):
            if self.match[root] == -1:
                end = self.find_path(root)
                if end != -1:
                    self.augment(end)
        return Matching(tuple(None if u == -1 else u for u in self.match))

###############################################################################
# OPERATIONS
###############################################################################

def max_matching(g: Graph) -> Matching:
    """
    Maximum-cardinality matching. Roots are tried in ascending vertex order,
    so the result is reproducible for a given labelling.
    """

    return _BlossomSearch(g).run()


def has_perfect_matching(g: Graph) -> bool:
    if g.n % 2:
        return False
    return max_matching(g).is_perfect


def deficiency(g: Graph) -> int:
    """
    Number of vertices left exposed by a maximum matching, n - 2*nu(G).
    """

    return g.n - 2 * max_matching(g).size


def tutte_witness(g: Graph, cap: int = TUTTE_CAP) -> Optional[TutteWitness]:
    """
    Exhaustive search for a set S with o(G - S) > |S|.

    Subsets are scanned in ascending bitmask order and the first violator is
    returned, so the witness is the smallest one by bitmask value.

    Parameters:
        g (Graph): The graph to scan.
        cap (int): Largest order accepted.

    Returns:
        TutteWitness or None: The smallest violating set, or None if Tutte's
        condition holds everywhere.

    Raises:
        CapacityError: If g.n exceeds cap.
    """

    if g.n > cap:
        raise CapacityError(f"Tutte scan is capped at n <= {cap}, got n = {g.n}")

    for s in range(1 << g.n):
        size = s.bit_count()
        # At most n - |S| components remain.
        if g.n - size <= size:
            continue
        odd = odd_components(g, s)
        if odd > size:
            return TutteWitness(s, odd)

    return None
