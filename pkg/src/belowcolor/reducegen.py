"""Instance generator: k-colored clique -> clique cover in a graph with a perfect matching.

A colored-clique instance has ``k`` parts of ``n`` vertices each.  The output
graph on ``N = 2kn + 2`` vertices keeps the input edges, adds a clique on
``u_1..u_{k+2}``, and threads each part onto a path
``u_i, v_i1, w_i1, v_i2, ..., w_i(n-1), v_in``.  The input has a colored
``k``-clique iff the output has a clique cover of size ``k(n-1) + 2``.

Vertex order of the output: ``v_ij`` part-major, then ``w_ij``, then ``u_i``.
Labels are 1-based, indices 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import GuardError
from .ffield import Rng
from .graphcore import Graph, Matching
from .oracle import CHROMATIC_MAX_N, clique_cover_number_exact


@dataclass(frozen=True)
class ColoredCliqueInstance:
    """``k`` parts of size ``n``; vertex ``v_ij`` has index ``i*n + j``."""

    k: int
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.k < 1 or self.n < 1:
            raise ValueError("k and n must be positive")
        norm = set()
        for a, b in self.edges:
            a, b = min(a, b), max(a, b)
            if not 0 <= a < b < self.k * self.n:
                raise ValueError(f"edge {(a, b)} out of range")
            if a // self.n == b // self.n:
                raise ValueError(f"edge {(a, b)} lies inside part {a // self.n}")
            norm.add((a, b))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_graph(cls, k: int, n: int, g: Graph) -> "ColoredCliqueInstance":
        if g.n != k * n:
            raise ValueError(f"graph has {g.n} vertices, expected {k * n}")
        return cls(k, n, frozenset(g.edges()))

    @classmethod
    def random(cls, k: int, n: int, prob: float, rng: Rng) -> "ColoredCliqueInstance":
        pairs = cross_pairs(k, n)
        keep = rng.random(len(pairs)) < prob
        return cls(k, n, frozenset(e for e, x in zip(pairs, keep) if x))

    def graph(self) -> Graph:
        return Graph.from_edges(self.k * self.n, self.edges)


def cross_pairs(k: int, n: int) -> list[tuple[int, int]]:
    return [(a, b) for a, b in combinations(range(k * n), 2) if a // n != b // n]


@dataclass(frozen=True)
class ReducedInstance:
    graph: Graph
    target: int
    labels: tuple[str, ...]
    k: int
    n: int

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def sidecar(self) -> dict:
        return {"ell": self.target, "N": self.graph.n, "k": self.k, "n": self.n,
                "labels": list(self.labels)}


def _v(k: int, n: int, i: int, j: int) -> int:
    return i * n + j


def _w(k: int, n: int, i: int, j: int) -> int:
    return k * n + i * (n - 1) + j


def _u(k: int, n: int, i: int) -> int:
    return k * n + k * (n - 1) + i


def build_reduction(inst: ColoredCliqueInstance) -> ReducedInstance:
    k, n = inst.k, inst.n
    size = 2 * k * n + 2
    edges = set(inst.edges)
    edges.update((_u(k, n, a), _u(k, n, b)) for a, b in combinations(range(k + 2), 2))
    for i in range(k):
        edges.add((_v(k, n, i, 0), _u(k, n, i)))
        for j in range(n - 1):
            edges.add((_v(k, n, i, j), _w(k, n, i, j)))
            edges.add((_v(k, n, i, j + 1), _w(k, n, i, j)))
    labels = ([f"v{i + 1},{j + 1}" for i in range(k) for j in range(n)]
              + [f"w{i + 1},{j + 1}" for i in range(k) for j in range(n - 1)]
              + [f"u{i + 1}" for i in range(k + 2)])
    return ReducedInstance(Graph.from_edges(size, edges), k * (n - 1) + 2, tuple(labels), k, n)


def canonical_perfect_matching(r: ReducedInstance) -> Matching:
    """``u_i v_i1``, ``w_ij v_i(j+1)``, and ``u_{k+1} u_{k+2}`` to close it off."""
    k, n = r.k, r.n
    pairs = [(_u(k, n, i), _v(k, n, i, 0)) for i in range(k)]
    pairs += [(_w(k, n, i, j), _v(k, n, i, j + 1)) for i in range(k) for j in range(n - 1)]
    pairs.append((_u(k, n, k), _u(k, n, k + 1)))
    return Matching(tuple((min(a, b), max(a, b)) for a, b in pairs))


def has_colored_clique(inst: ColoredCliqueInstance) -> bool:
    """Brute force over one vertex per part."""
    for pick in product(range(inst.n), repeat=inst.k):
        vs = [i * inst.n + j for i, j in enumerate(pick)]
        if all((a, b) in inst.edges for a, b in combinations(vs, 2)):
            return True
    return False


def verify_equivalence_small(inst: ColoredCliqueInstance) -> bool:
    """Check ``clique exists <=> theta(reduced) <= ell`` with exact solvers."""
    size = 2 * inst.k * inst.n + 2
    if size > CHROMATIC_MAX_N:
        raise GuardError(f"reduced graph has {size} > {CHROMATIC_MAX_N} vertices")
    r = build_reduction(inst)
    return has_colored_clique(inst) == (clique_cover_number_exact(r.graph) <= r.target)


__all__ = [
    "ColoredCliqueInstance",
    "ReducedInstance",
    "build_reduction",
    "canonical_perfect_matching",
    "has_colored_clique",
    "verify_equivalence_small",
    "cross_pairs",
]
