###############################################################################
# IMPORTS
###############################################################################

from __future__ import annotations

from collections import Counter
from typing import Optional

from .graph import Graph, members

###############################################################################
# REFINEMENT
###############################################################################

def refine_colors(graphs: tuple[Graph, ...]) -> list[list[int]]:
    """
    Joint colour refinement: starts from degrees and splits classes by the
    multiset of neighbour colours until the number of classes stops growing.
    Colours are shared across the graphs, so equal colours mean equivalent
    vertices.
    """

    colors = [g.degrees() for g in graphs]
    classes = len({c for coloring in colors for c in coloring})

    while True:
        signatures = [
            [(coloring[v], tuple(sorted(coloring[u] for u in members(g.adj[v])))) for v in range(g.n)]
            for g, coloring in zip(graphs, colors)
        ]
        palette = {sig: k for k, sig in enumerate(sorted({sig for sigs in signatures for sig in sigs}))}
        colors = [[palette[sig] for sig in sigs] for sigs in signatures]
        if len(palette) == classes:
            return colors
        classes = len(palette)

###############################################################################
# BACKTRACKING
###############################################################################

def find_isomorphism(g: Graph, h: Graph) -> Optional[list[int]]:
    """
    Returns perm with g.permute(perm) == h, or None when g and h are not
    isomorphic.

    Parameters:
        g (Graph): Source graph.
        h (Graph): Target graph.

    Returns:
        list of int or None: Image of each vertex of g.
    """

    if g.n != h.n or g.edge_count != h.edge_count or sorted(g.degrees()) != sorted(h.degrees()):
        return None

    color_g, color_h = refine_colors((g, h))
    if Counter(color_g) != Counter(color_h):
        return None

    # Smallest colour classes first keeps the branching low.
    class_size = Counter(color_g)
    order = sorted(range(g.n), key=lambda v: (class_size[color_g[v]], color_g[v], v))
    candidates = {c: [u for u in range(h.n) if color_h[u] == c] for c in class_size}

    image = [-1] * g.n
    used = [False] * h.n

    def extend(k):
        if k == len(order):
            return True
        v = order[k]
        for u in candidates[color_g[v]]:
            if used[u]:
                continue
            if all(g.has_edge(v, w) == h.has_edge(u, image[w]) for w in order[:k]):
                image[v], used[u] = u, True
                if extend(k + 1):
                    return True
                image[v], used[u] = -1, False
        return False

    return image if extend(0) else None


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None
