"""Seeded random instance generators."""

from __future__ import annotations

from itertools import combinations

from .ffield import Rng
from .graphcore import Graph, complement


def gen_gnp(n: int, prob: float, seed: int) -> Graph:
    """Erdos-Renyi ``G(n, prob)``."""
    if not 0.0 <= prob <= 1.0:
        raise ValueError("prob must lie in [0, 1]")
    rng = Rng(seed)
    pairs = list(combinations(range(n), 2))
    keep = rng.random(len(pairs)) < prob if pairs else []
    return Graph.from_edges(n, [e for e, x in zip(pairs, keep) if x])


def gen_planted_comodulator(n: int, p_mod: int, seed: int, prob: float = 0.5) -> tuple[Graph, tuple[int, ...]]:
    """Coloring-side graph whose complement loses all triangles once the returned set is removed.

    On the cover side the base is a random bipartite graph on ``n - p_mod``
    vertices with sides of equal size (up to one).  It always contains a
    matching that pairs consecutive base vertices, so the base has a matching
    of size ``floor((n - p_mod)/2)``.  The ``p_mod`` planted vertices sit at
    random positions and get random edges to everything.
    """
    if not 0 <= p_mod <= n:
        raise ValueError("p_mod must lie in [0, n]")
    rng = Rng(seed)
    perm = [int(v) for v in rng.permutation(n)]
    planted = perm[:p_mod]
    base = perm[p_mod:]
    side = {v: i % 2 for i, v in enumerate(base)}
    edges = [(base[i], base[i + 1]) for i in range(0, len(base) - 1, 2)]
    for a, b in combinations(range(n), 2):
        if a in side and b in side and side[a] == side[b]:
            continue
        if rng.random() < prob:
            edges.append((a, b))
    cover_side = Graph.from_edges(n, edges)
    return complement(cover_side), tuple(sorted(planted))


__all__ = ["gen_gnp", "gen_planted_comodulator"]
