###############################################################################
# IMPORTS
###############################################################################

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

###############################################################################
# ERRORS
###############################################################################

class CapacityError(ValueError):
    """
    Raised when an exhaustive oracle is asked to scan a graph larger than its cap.
    """


class Graph6ParseError(ValueError):
    """
    Raised for malformed graph6 input. `offset` is the index of the offending byte.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset

###############################################################################
# VERTEX SETS
###############################################################################

# Vertex sets are int bitmasks: bit v set <=> vertex v is a member. Python ints
# grow as needed, so the same representation serves any order.
VertexSet = int


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> list[int]:
    """
    Returns the members of a bitmask vertex set in ascending order.
    """

    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out

###############################################################################
# GRAPH
###############################################################################

@dataclass(frozen=True)
class Graph:
    """
    Immutable simple undirected graph on the vertices 0..n-1.

    Row i of `adj` is the bitmask of the neighbors of vertex i. Every
    construction is validated: rows must be symmetric, loop-free and confined
    to [0, n).

    Attributes:
        n (int): Number of vertices.
        adj (tuple of int): Neighborhood bitmask of each vertex.

    Methods:
        from_edges(n, edges): Builds a graph from an edge list.
        edges(): Lists edges as ascending (u, v) pairs with u < v.
        degrees(): Degree of every vertex.
        permute(perm): Relabels vertex v as perm[v].
        add_edge(u, v) / remove_edge(u, v): Single-edge modifications.
        to_numpy(): Dense 0/1 adjacency matrix.
    """

    n: int
    adj: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.adj)}")

        full = self.vertex_set
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbor outside [0, {self.n})")
            if row >> v & 1:
                raise ValueError(f"vertex {v} has a loop")
            for u in members(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"edge {v}-{u} is not symmetric")

    ###########################################################################
    # CONSTRUCTION
    ###########################################################################

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} outside [0, {n})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    def add_edge(self, u: int, v: int) -> Graph:
        return Graph.from_edges(self.n, self.edges() + [(u, v)])

    def remove_edge(self, u: int, v: int) -> Graph:
        if not self.adj[u] >> v & 1:
            raise ValueError(f"{u}-{v} is not an edge")
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def permute(self, perm: Sequence[int]) -> Graph:
        """
        Relabels vertex v as perm[v]. `perm` must be a permutation of range(n).
        """

        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the vertex set")
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    ###########################################################################
    # QUERIES
    ###########################################################################

    @property
    def vertex_set(self) -> VertexSet:
        return (1 << self.n) - 1

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in members(self.adj[u] >> (u + 1) << (u + 1))]

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def to_numpy(self) -> np.ndarray:
        matrix = np.zeros((self.n, self.n), dtype=float)
        for u, v in self.edges():
            matrix[u, v] = matrix[v, u] = 1.0
        return matrix

###############################################################################
# JOIN FAMILIES
###############################################################################

@dataclass(frozen=True)
class JoinFamilySpec:
    """
    Parametric description of K_s join (K_{n_1} union ... union K_{n_q}).

    Parts are stored sorted non-decreasing, so two specs describing the same
    graph compare equal.

    Attributes:
        s (int): Size of the apex clique.
        parts (tuple of int): Clique sizes of the components, ascending.
    """

    s: int
    parts: tuple[int, ...]

    def __post_init__(self):
        if self.s < 0:
            raise ValueError(f"apex size must be non-negative, got {self.s}")
        if any(part < 1 for part in self.parts):
            raise ValueError(f"parts must be positive, got {self.parts}")
        object.__setattr__(self, 'parts', tuple(sorted(self.parts)))

    @classmethod
    def parse(cls, text: str) -> JoinFamilySpec:
        """
        Parses "s,n1,n2,..." as used on the command line, e.g. "1,1,3,13".
        """

        try:
            values = [int(token) for token in text.split(',')]
        except ValueError as exc:
            raise ValueError(f"family must be comma-separated integers: {text!r}") from exc
        if len(values) < 2:
            raise ValueError(f"family needs an apex size and at least one part: {text!r}")
        return cls(values[0], tuple(values[1:]))

    @property
    def n(self) -> int:
        return self.s + sum(self.parts)

    @property
    def q(self) -> int:
        return len(self.parts)

    @property
    def cell_sizes(self) -> tuple[int, ...]:
        """
        Sizes of the natural vertex partition: the apex cell (if s > 0) then one
        cell per part, in the layout produced by build_family.
        """

        return ((self.s,) if self.s else ()) + self.parts

    @property
    def cells(self) -> tuple[VertexSet, ...]:
        out, start = [], 0
        for size in self.cell_sizes:
            out.append(((1 << size) - 1) << start)
            start += size
        return tuple(out)

    def transfer(self, i: int, j: int) -> JoinFamilySpec:
        """
        Moves one vertex from part j to part i, i.e. (n_i, n_j) -> (n_i + 1, n_j - 1).
        Indices refer to the sorted parts; the result is re-canonicalised.

        Parameters:
            i (int): Index of the receiving part.
            j (int): Index of the donating part (needs n_j >= 2).

        Returns:
            JoinFamilySpec: The spec after the move.
        """

        if i == j:
            raise ValueError("transfer needs two distinct parts")
        if self.parts[j] < 2:
            raise ValueError(f"part {j} has a single vertex and cannot donate")
        parts = list(self.parts)
        parts[i] += 1
        parts[j] -= 1
        return JoinFamilySpec(self.s, tuple(parts))

    def __str__(self):
        return f"K{self.s} v (" + " u ".join(f"K{part}" for part in self.parts) + ")"

###############################################################################
# CONSTRUCTORS
###############################################################################

def complete(k: int) -> Graph:
    if k < 0:
        raise ValueError(f"order must be non-negative, got {k}")
    full = (1 << k) - 1
    return Graph(k, tuple(full & ~(1 << v) for v in range(k)))


def union(g1: Graph, g2: Graph) -> Graph:
    """
    Disjoint union; vertices of g2 are shifted up by g1.n.
    """

    shift = g1.n
    return Graph(g1.n + g2.n, g1.adj + tuple(row << shift for row in g2.adj))


def join(g1: Graph, g2: Graph) -> Graph:
    """
    Disjoint union plus every edge between V(g1) and V(g2).
    """

    shift = g1.n
    left = ((1 << g2.n) - 1) << shift
    right = (1 << g1.n) - 1
    rows = tuple(row | left for row in g1.adj) + tuple((row << shift) | right for row in g2.adj)
    return Graph(g1.n + g2.n, rows)


def build_family(spec: JoinFamilySpec) -> Graph:
    """
    Builds K_s join (K_{n_1} union ... union K_{n_q}).

    Layout contract: the apex vertices take indices 0..s-1, then each part
    occupies a consecutive block in the order of spec.parts. Spectral
    partitions index into this layout through JoinFamilySpec.cells.
    """

    body = Graph(0, ())
    for part in spec.parts:
        body = union(body, complete(part))
    return join(complete(spec.s), body)

###############################################################################
# STRUCTURE
###############################################################################

def neighborhood(g: Graph, x: VertexSet) -> VertexSet:
    out = 0
    for v in members(x):
        out |= g.adj[v]
    return out


def delete(g: Graph, s: VertexSet) -> Graph:
    """
    Induced subgraph on V(g) minus s. Surviving vertices keep their relative order.
    """

    keep = members(g.vertex_set & ~s)
    index = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        rows.append(vertex_set(index[u] for u in members(g.adj[v] & ~s)))
    return Graph(len(keep), tuple(rows))


def components_within(g: Graph, allowed: VertexSet) -> list[VertexSet]:
    """
    Connected components of the subgraph induced by `allowed`, as bitmasks in the
    original labelling, ordered by smallest member.
    """

    out = []
    remaining = allowed
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            reach = 0
            for v in members(frontier):
                reach |= g.adj[v]
            frontier = reach & remaining & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def components(g: Graph) -> list[VertexSet]:
    return components_within(g, g.vertex_set)


def odd_components(g: Graph, s: VertexSet) -> int:
    """
    o(G - S): number of odd-order components left after deleting s.
    """

    return sum(comp.bit_count() & 1 for comp in components_within(g, g.vertex_set & ~s))


def is_connected(g: Graph) -> bool:
    # The empty graph counts as connected.
    return len(components(g)) <= 1

###############################################################################
# GRAPH6
###############################################################################

_HEADER = b'>>graph6<<'


def _encode_order(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63])
    raise ValueError(f"graph6 cannot encode order {n}")


def write_graph6(g: Graph) -> bytes:
    """
    Encodes g in graph6 (no header, no trailing newline). Adjacency bits follow
    the upper triangle column by column: (0,1), (0,2), (1,2), (0,3), ...
    """

    bits = [g.adj[i] >> j & 1 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)

    body = bytearray()
    for k in range(0, len(bits), 6):
        chunk = 0
        for bit in bits[k:k + 6]:
            chunk = chunk << 1 | bit
        body.append(chunk + 63)

    return _encode_order(g.n) + bytes(body)


def parse_graph6(data: bytes | str) -> Graph:
    """
    Decodes one graph6 record.

    Parameters:
        data (bytes or str): The encoding, optionally preceded by ">>graph6<<" and
            followed by a line break.

    Returns:
        Graph: The decoded graph.

    Raises:
        Graph6ParseError: On an empty record, a byte outside 63..126, an
            unsupported header, a truncated or over-long bit stream, or nonzero
            padding bits.
    """

    if isinstance(data, str):
        try:
            data = data.encode('ascii')
        except UnicodeEncodeError as exc:
            raise Graph6ParseError("non-ASCII character", exc.start) from exc

    start = len(_HEADER) if data.startswith(_HEADER) else 0
    end = len(data)
    while end > start and data[end - 1] in b'\r\n':
        end -= 1

    for offset in range(start, end):
        if not 63 <= data[offset] <= 126:
            raise Graph6ParseError(f"byte {data[offset]} out of range 63..126", offset)

    if end == start:
        raise Graph6ParseError("empty record", start)

    if data[start] != 126:
        n, body = data[start] - 63, start + 1
    elif end - start >= 2 and data[start + 1] == 126:
        raise Graph6ParseError("8-byte order header is not supported", start + 1)
    elif end - start < 4:
        raise Graph6ParseError("truncated order header", end)
    else:
        n = (data[start + 1] - 63) << 12 | (data[start + 2] - 63) << 6 | (data[start + 3] - 63)
        body = start + 4

    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    if end - body < nbytes:
        raise Graph6ParseError(f"truncated adjacency data: need {nbytes} bytes, got {end - body}", end)
    if end - body > nbytes:
        raise Graph6ParseError("trailing bytes after adjacency data", body + nbytes)

    bits = []
    for offset in range(body, body + nbytes):
        chunk = data[offset] - 63
        bits.extend(chunk >> shift & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6ParseError("nonzero padding bits", body + nbytes - 1)

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def iter_graph6(lines: Iterable[bytes | str]) -> Iterator[tuple[int, bytes | str]]:
    """
    Yields (line number, record) for every non-blank line of a graph6 stream.
    """

    for lineno, line in enumerate(lines, start=1):
        if line.strip():
            yield lineno, line
