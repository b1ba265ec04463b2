from pathlib import Path

import networkx as nx
from hypothesis import strategies as st

from src.models.graph import Graph, JoinFamilySpec

FIXTURES = Path(__file__).resolve().parent / 'fixtures'


@st.composite
def graphs(draw, min_order=0, max_order=10):
    n = draw(st.integers(min_order, max_order))
    upper = [(u, v) for v in range(1, n) for u in range(v)]
    keep = draw(st.lists(st.booleans(), min_size=len(upper), max_size=len(upper)))
    return Graph.from_edges(n, [edge for edge, k in zip(upper, keep) if k])


@st.composite
def join_specs(draw, max_order=24):
    s = draw(st.integers(0, 4))
    parts = draw(st.lists(st.integers(1, 8), min_size=1, max_size=5))
    if s + sum(parts) > max_order:
        parts = [1] * max(1, min(len(parts), max_order - s))
    return JoinFamilySpec(s, tuple(parts))


def to_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def fixture_lines(order):
    with open(FIXTURES / f'graphs{order}.g6', 'rb') as f:
        return f.read().splitlines()
