"""Graphs as bit-rows, DIMACS I/O, packings, matchings and witness checks.

Vertices are ``0..n-1``.  Row ``adj[v]`` is a Python ``int`` whose bit ``u``
is set iff ``{u, v}`` is an edge.  DIMACS files are 1-indexed; conversion
happens only in :func:`parse_dimacs` and :func:`to_dimacs`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from .errors import DimacsError, InvalidWitnessError


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency must have exactly n rows")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} has bits beyond n-1")
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency at {{{u}, {v}}}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {{{u}, {v}}} out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def is_clique(self, vs: Iterable[int]) -> bool:
        mask = 0
        for v in vs:
            mask |= 1 << v
        return all((mask & ~(1 << v)) & ~self.adj[v] == 0 for v in bits(mask))

    def is_independent(self, vs: Iterable[int]) -> bool:
        mask = 0
        for v in vs:
            mask |= 1 << v
        return all(self.adj[v] & mask == 0 for v in bits(mask))


@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.edges)

    def vertices(self) -> set[int]:
        return {v for e in self.edges for v in e}


@dataclass(frozen=True)
class TrianglePacking:
    triangles: tuple[tuple[int, int, int], ...]

    def __len__(self) -> int:
        return len(self.triangles)

    def vertices(self) -> list[int]:
        return sorted(v for t in self.triangles for v in t)


@dataclass(frozen=True)
class CliqueCover:
    cliques: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.cliques)

    @classmethod
    def of(cls, groups: Iterable[Iterable[int]]) -> "CliqueCover":
        return cls(tuple(frozenset(c) for c in groups))


@dataclass(frozen=True)
class Coloring:
    color: tuple[int, ...]
    palette_size: int = field(default=-1)

    def __post_init__(self) -> None:
        if self.palette_size < 0:
            object.__setattr__(self, "palette_size", len(set(self.color)))

    @classmethod
    def from_classes(cls, n: int, classes: Sequence[Iterable[int]]) -> "Coloring":
        color = [-1] * n
        for c, group in enumerate(classes):
            for v in group:
                color[v] = c
        if -1 in color:
            raise InvalidWitnessError("color classes do not cover every vertex")
        return cls(tuple(color), len(classes))


Witness = Union[CliqueCover, Coloring]


# --------------------------------------------------------------------------
# DIMACS

def parse_dimacs(text: str) -> Graph:
    n: int | None = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise DimacsError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError(f"line {lineno}: expected 'p edge <n> <m>'")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer size") from None
            if n < 0:
                raise DimacsError(f"line {lineno}: negative vertex count")
        elif tag == "e":
            if n is None:
                raise DimacsError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise DimacsError(f"line {lineno}: expected 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer endpoint") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsError(f"line {lineno}: endpoint out of range")
            if u == v:
                raise DimacsError(f"line {lineno}: self-loop on vertex {u}")
            edges.add((min(u, v) - 1, max(u, v) - 1))
        else:
            raise DimacsError(f"line {lineno}: unknown line type {tag!r}")
    if n is None:
        raise DimacsError("missing problem line")
    return Graph.from_edges(n, edges)


def to_dimacs(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    es = g.edges()
    lines.append(f"p edge {g.n} {len(es)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in es)
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Structural operations

def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def induced_subgraph(g: Graph, vs: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``g[vs]`` and the list mapping new indices to old ones."""
    old = sorted(set(vs))
    for v in old:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    new_of = {v: i for i, v in enumerate(old)}
    rows = []
    for v in old:
        row = 0
        for u in bits(g.adj[v]):
            if u in new_of:
                row |= 1 << new_of[u]
        rows.append(row)
    return Graph(len(old), tuple(rows)), old


def find_triangle(g: Graph, alive: int) -> tuple[int, int, int] | None:
    """Lexicographically smallest triangle inside the vertex mask ``alive``."""
    for i in bits(alive):
        ni = g.adj[i] & alive & ~((2 << i) - 1)
        for j in bits(ni):
            common = ni & g.adj[j] & ~((2 << j) - 1)
            if common:
                return i, j, (common & -common).bit_length() - 1
    return None


def greedy_triangle_packing(g: Graph) -> TrianglePacking:
    alive = (1 << g.n) - 1
    found = []
    while (tri := find_triangle(g, alive)) is not None:
        found.append(tri)
        for v in tri:
            alive &= ~(1 << v)
    return TrianglePacking(tuple(found))


def greedy_maximal_matching(g: Graph) -> Matching:
    matched = 0
    pairs = []
    for u, v in g.edges():
        if not (matched >> u & 1 or matched >> v & 1):
            pairs.append((u, v))
            matched |= 1 << u | 1 << v
    return Matching(tuple(pairs))


def maximum_matching(g: Graph) -> Matching:
    """Maximum-cardinality matching via Edmonds' blossom algorithm, O(n^3)."""
    n = g.n
    nbrs = [list(bits(row)) for row in g.adj]
    mate = [-1] * n
    for u, v in greedy_maximal_matching(g).edges:
        mate[u], mate[v] = v, u

    def augmenting_path_end(root: int, parent: list[int], base: list[int]) -> int:
        in_tree = [False] * n
        in_tree[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if mate[a] == -1:
                    break
                a = parent[mate[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[mate[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[mate[v]]] = True
                parent[v] = child
                child = mate[v]
                v = parent[mate[v]]

        while queue:
            v = queue.popleft()
            for to in nbrs[v]:
                if base[v] == base[to] or mate[v] == to:
                    continue
                if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not in_tree[i]:
                                in_tree[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if mate[to] == -1:
                        return to
                    in_tree[mate[to]] = True
                    queue.append(mate[to])
        return -1

    for root in range(n):
        if mate[root] != -1 or not nbrs[root]:
            continue
        parent = [-1] * n
        base = list(range(n))
        v = augmenting_path_end(root, parent, base)
        while v != -1:
            pv = parent[v]
            nxt = mate[pv]
            mate[v], mate[pv] = pv, v
            v = nxt
    return Matching(tuple((u, mate[u]) for u in range(n) if mate[u] > u))


# --------------------------------------------------------------------------
# Verification and witness translation

def verify_matching(g: Graph, m: Matching, perfect: bool = False) -> bool:
    seen: set[int] = set()
    for u, v in m.edges:
        if u in seen or v in seen or u == v:
            return False
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            return False
        seen.update((u, v))
    return len(seen) == g.n if perfect else True


def verify_triangle_packing(g: Graph, packing: TrianglePacking) -> bool:
    seen: set[int] = set()
    for tri in packing.triangles:
        if len(set(tri)) != 3 or seen.intersection(tri):
            return False
        if not all(0 <= v < g.n for v in tri) or not g.is_clique(tri):
            return False
        seen.update(tri)
    return True


def verify_clique_cover(g: Graph, c: CliqueCover) -> bool:
    covered = 0
    for clique in c.cliques:
        if not clique:
            return False
        for v in clique:
            if not isinstance(v, int) or not 0 <= v < g.n or covered >> v & 1:
                return False
            covered |= 1 << v
        if not g.is_clique(clique):
            return False
    return covered == (1 << g.n) - 1


def verify_coloring(g: Graph, c: Coloring) -> bool:
    if len(c.color) != g.n:
        return False
    if any(not 0 <= x < c.palette_size for x in c.color):
        return False
    return all(c.color[u] != c.color[v] for u, v in g.edges())


def translate_cover_coloring(g: Graph, witness: Witness) -> Witness:
    """Coloring of ``g`` <-> clique cover of ``complement(g)``, same size."""
    if isinstance(witness, Coloring):
        if not verify_coloring(g, witness):
            raise InvalidWitnessError("not a proper coloring of g")
        classes: list[list[int]] = [[] for _ in range(witness.palette_size)]
        for v, col in enumerate(witness.color):
            classes[col].append(v)
        return CliqueCover.of(cls for cls in classes if cls)
    if isinstance(witness, CliqueCover):
        if not verify_clique_cover(complement(g), witness):
            raise InvalidWitnessError("not a clique cover of complement(g)")
        return Coloring.from_classes(g.n, [sorted(c) for c in witness.cliques])
    raise TypeError(f"unsupported witness type {type(witness).__name__}")


def guarantee_witness_coloring(g: Graph) -> Coloring:
    """Proper coloring with at most omega(g) + mu(complement(g)) colors.

    Each edge of a greedy maximal matching of the complement is a pair of
    non-adjacent vertices sharing a color; the unmatched rest is a clique of
    ``g`` and gets fresh colors.
    """
    m = greedy_maximal_matching(complement(g))
    classes: list[list[int]] = [list(e) for e in m.edges]
    matched = m.vertices()
    classes.extend([v] for v in range(g.n) if v not in matched)
    return Coloring.from_classes(g.n, classes)


def singleton_cover(n: int) -> CliqueCover:
    return CliqueCover.of([v] for v in range(n))
