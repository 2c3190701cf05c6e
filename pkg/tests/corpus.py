"""Named graphs and seeded random corpora shared by the tests."""

from __future__ import annotations

from belowcolor.generators import gen_gnp
from belowcolor.graphcore import Graph


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


C5 = cycle(5)
PETERSEN = petersen()


def random_graphs(count: int, n_lo: int, n_hi: int, seed: int,
                  probs: tuple[float, ...] = (0.2, 0.5, 0.8)) -> list[Graph]:
    out = []
    for i in range(count):
        n = n_lo + (seed * 7919 + i * 104729) % (n_hi - n_lo + 1)
        out.append(gen_gnp(n, probs[i % len(probs)], seed * 1_000_003 + i))
    return out
