"""Clique cover (and coloring) parameterized by a triangle-free modulator.

Given ``S`` such that ``g - S`` has no triangle, a cover with at most ``l``
cliques exists iff for some cover type ``(t0, t1)`` a random evaluation of

    F = Pf(B) * phi_1 * ... * phi_t0

has a non-zero coefficient at the monomial ``prod_{v in S} y_v``.  Here
``phi_i`` spreads random weights over the non-empty cliques inside ``S`` and
``B`` is a skew matrix on ``S-bar`` plus ``t1`` fresh vertices ``U``.  Every
ring operation runs in the squarefree ring over ``S`` (see
:mod:`belowcolor.sqring`), so one evaluation costs ``O*(2^|S|)``.

Answers are one-sided: YES is certain, NO is wrong with probability at most
``(n/q)^repeats`` per cover type.
"""

from __future__ import annotations

import json
import time
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from .errors import ModulatorError
from .ffield import Rng
from .graphcore import (
    CliqueCover,
    Coloring,
    Graph,
    Witness,
    bits,
    complement,
    find_triangle,
    induced_subgraph,
    maximum_matching,
    singleton_cover,
)
from .pfaff import DEFAULT_CHUNK_BYTES, pfaffian_chain_tops
from .sqring import RingElement, check_variable_count

DEFAULT_REPEATS = 3


# --------------------------------------------------------------------------
# Types

@dataclass(frozen=True)
class ModulatorInstance:
    g: Graph
    s: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        s = tuple(sorted(set(self.s)))
        if any(not 0 <= v < self.g.n for v in s):
            raise ValueError("modulator vertex out of range")
        object.__setattr__(self, "s", s)

    @property
    def p(self) -> int:
        return len(self.s)

    @property
    def sbar(self) -> tuple[int, ...]:
        inside = set(self.s)
        return tuple(v for v in range(self.g.n) if v not in inside)


@dataclass(frozen=True)
class CoverType:
    t0: int
    t1: int
    t2: int

    @property
    def size(self) -> int:
        return self.t0 + self.t1 + self.t2


@dataclass(frozen=True)
class CliqueTable:
    """Cliques inside ``S``, indexed by bitmask over positions in ``s``."""

    s: tuple[int, ...]
    is_clique: np.ndarray
    within_s_adj: tuple[int, ...]
    n_mask: dict[int, int]

    @property
    def p(self) -> int:
        return len(self.s)

    def nonempty_clique_count(self) -> int:
        return int(self.is_clique.sum()) - 1


@dataclass(frozen=True)
class AuxGraph:
    """``g[S-bar]`` plus ``t1`` fresh vertices joined to all of ``S-bar``.

    Local indices: ``0..len(sbar)-1`` are ``sbar`` in ascending order, the
    next ``t1`` are the fresh vertices.
    """

    sbar: tuple[int, ...]
    t1: int
    edges: tuple[tuple[int, int], ...]

    @property
    def dim(self) -> int:
        return len(self.sbar) + self.t1

    def graph(self) -> Graph:
        return Graph.from_edges(self.dim, self.edges)


class Branch(str, Enum):
    PACKING = "packing"
    ALGEBRAIC = "algebraic"
    TRIVIAL = "trivial"


def witness_to_json(w: Optional[Witness]) -> Optional[dict]:
    if w is None:
        return None
    if isinstance(w, CliqueCover):
        return {"kind": "clique_cover", "cliques": sorted(sorted(c) for c in w.cliques)}
    return {"kind": "coloring", "colors": list(w.color), "palette_size": w.palette_size}


@dataclass
class SolveReport:
    problem: str
    n: int
    k_or_target: int
    decision: bool
    branch: Branch
    packing_size: Optional[int] = None
    modulator_size: Optional[int] = None
    witness: Optional[Witness] = None
    seed: Optional[int] = None
    repeats: int = DEFAULT_REPEATS
    types_tried: int = 0
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_dict(self, include_elapsed: bool = True) -> dict:
        out = {
            "problem": self.problem,
            "n": self.n,
            "k_or_target": self.k_or_target,
            "decision": "yes" if self.decision else "no",
            "branch": self.branch.value,
            "packing_size": self.packing_size,
            "modulator_size": self.modulator_size,
            "witness": witness_to_json(self.witness),
            "seed": self.seed,
            "repeats": self.repeats,
            "types_tried": self.types_tried,
        }
        out.update(self.extra)
        if include_elapsed:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def to_json(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(include_elapsed), sort_keys=True)


# --------------------------------------------------------------------------
# Building blocks

def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def check_modulator(g: Graph, s: Iterable[int]) -> bool:
    """True iff deleting ``s`` leaves ``g`` without a triangle."""
    alive = ((1 << g.n) - 1) & ~_mask(s)
    return find_triangle(g, alive) is None


def enumerate_valid_types(nbar: int, target: int) -> list[CoverType]:
    """All ``(t0, t1)`` whose cover would have at most ``target`` cliques."""
    if nbar < 0 or target < 0:
        raise ValueError("nbar and target must be non-negative")
    out = []
    for t1 in range(nbar % 2, nbar + 1, 2):
        t2 = (nbar - t1) // 2
        for t0 in range(target - t1 - t2 + 1):
            out.append(CoverType(t0, t1, t2))
    return out


def build_clique_table(g: Graph, s: Iterable[int]) -> CliqueTable:
    s = tuple(sorted(set(s)))
    p = len(s)
    check_variable_count(p)
    pos = {v: i for i, v in enumerate(s)}
    within = tuple(sum(1 << pos[u] for u in bits(g.adj[v]) if u in pos) for v in s)
    is_clique = np.zeros(1 << p, dtype=np.bool_)
    is_clique[0] = True
    for b in range(p):
        # T = rest | {b} with b the top element: a clique iff rest is one and b sees all of it.
        rest = np.arange(1 << b, dtype=np.int64)
        is_clique[1 << b:2 << b] = is_clique[:1 << b] & ((rest & ~within[b]) == 0)
    is_clique.setflags(write=False)
    n_mask = {v: sum(1 << pos[u] for u in bits(g.adj[v]) if u in pos)
              for v in range(g.n) if v not in pos}
    return CliqueTable(s, is_clique, within, n_mask)


def _subset_filter(p: int, restriction: int) -> np.ndarray:
    idx = np.arange(1 << p, dtype=np.int64)
    return (idx & ~restriction) == 0


def _edge_coeffs(table: CliqueTable, restriction: int, rng: Rng) -> np.ndarray:
    draw = rng.sample_array(1 << table.p)
    keep = table.is_clique & _subset_filter(table.p, restriction)
    return np.where(keep, draw, np.uint64(0))


def _interior_coeffs(table: CliqueTable, rng: Rng) -> np.ndarray:
    draw = rng.sample_array(1 << table.p)
    out = np.where(table.is_clique, draw, np.uint64(0))
    out[0] = 0
    return out


def build_edge_polynomial(table: CliqueTable, restriction: int, rng: Rng) -> RingElement:
    """Random weights on every clique ``C`` of ``S`` inside ``restriction``, ``C = {}`` included."""
    if restriction < 0 or restriction >> table.p:
        raise ValueError("restriction is not a subset mask of S")
    return RingElement._wrap(table.p, _edge_coeffs(table, restriction, rng))


def build_interior_polynomial(table: CliqueTable, rng: Rng) -> RingElement:
    """Random weights on every non-empty clique of ``S``."""
    return RingElement._wrap(table.p, _interior_coeffs(table, rng))


def build_aux_graph(g: Graph, sbar: Iterable[int], t1: int) -> AuxGraph:
    sbar = tuple(sorted(sbar))
    local = {v: i for i, v in enumerate(sbar)}
    edges = []
    for v in sbar:
        for w in bits(g.adj[v]):
            if w in local and local[w] > local[v]:
                edges.append((local[v], local[w]))
    nb = len(sbar)
    edges.extend((a, nb + j) for a in range(nb) for j in range(t1))
    return AuxGraph(sbar, t1, tuple(sorted(edges)))


def _matrix_entries(aux: AuxGraph, table: CliqueTable, rng: Rng) -> tuple[np.ndarray, list[tuple[int, int]]]:
    nb = len(aux.sbar)
    raw = np.empty((len(aux.edges), 1 << table.p), dtype=np.uint64)
    for e, (a, b) in enumerate(aux.edges):
        restriction = table.n_mask[aux.sbar[a]]
        if b < nb:
            restriction &= table.n_mask[aux.sbar[b]]
        raw[e] = _edge_coeffs(table, restriction, rng)
    return raw, list(aux.edges)


# --------------------------------------------------------------------------
# Solvers

def solve_clique_cover_with_modulator(inst: ModulatorInstance, rng: Rng, repeats: int = DEFAULT_REPEATS,
                                      chunk_bytes: int = DEFAULT_CHUNK_BYTES,
                                      stop_on_yes: bool = True) -> SolveReport:
    """Decide ``theta(inst.g) <= inst.target``.

    Cover types sharing ``t1`` share one Pfaffian per repeat: it is multiplied
    by fresh interior factors one at a time and the full-monomial coefficient
    is read after each, which tests ``t0 = 0, 1, ...`` in turn.  Each test is
    still a uniform random evaluation of its own type's polynomial, so the
    one-sided guarantee holds type by type.  Types whose auxiliary graph has
    no perfect matching (``mu(g[S-bar]) < t2``) have ``Pf = 0`` identically and
    are skipped.

    ``stop_on_yes=False`` evaluates every type and repeat even after a
    non-zero coefficient; the decision is unchanged, only the work is fixed.
    """
    start = time.perf_counter()
    g, ell = inst.g, inst.target
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    if not check_modulator(g, inst.s):
        raise ModulatorError("g minus the modulator still contains a triangle")
    check_variable_count(inst.p)

    def report(decision: bool, branch: Branch, witness=None, tried: int = 0) -> SolveReport:
        return SolveReport("clique_cover", g.n, ell, decision, branch, None, inst.p, witness,
                           rng.seed, repeats, tried, (time.perf_counter() - start) * 1e3)

    if ell >= g.n:
        return report(True, Branch.TRIVIAL, singleton_cover(g.n))
    if ell <= 0:
        return report(False, Branch.TRIVIAL)

    sbar = inst.sbar
    nbar = len(sbar)
    table = build_clique_table(g, inst.s)
    t0max: dict[int, int] = defaultdict(lambda: -1)
    for ct in enumerate_valid_types(nbar, ell):
        t0max[ct.t1] = max(t0max[ct.t1], ct.t0)
    mu_sbar = len(maximum_matching(induced_subgraph(g, sbar)[0]))
    tried = 0
    found = False
    for t1 in sorted(t0max):
        if mu_sbar < (nbar - t1) // 2:
            continue
        aux = build_aux_graph(g, sbar, t1)
        jmax = t0max[t1]
        tried += jmax + 1
        for _ in range(repeats):
            raw, pairs = _matrix_entries(aux, table, rng)
            chain = np.array([_interior_coeffs(table, rng) for _ in range(jmax)],
                             dtype=np.uint64).reshape(jmax, 1 << table.p)
            tops = pfaffian_chain_tops(raw, pairs, aux.dim, table.p, chain, chunk_bytes)
            if any(tops):
                found = True
                if stop_on_yes:
                    return report(True, Branch.ALGEBRAIC, tried=tried)
    return report(found, Branch.ALGEBRAIC, tried=tried)


def solve_coloring_with_modulator(g: Graph, s: Iterable[int], target: int, rng: Rng,
                                  repeats: int = DEFAULT_REPEATS) -> SolveReport:
    """Decide ``chi(g) <= target`` given ``s`` with ``complement(g) - s`` triangle-free."""
    gc = complement(g)
    rep = solve_clique_cover_with_modulator(ModulatorInstance(gc, tuple(s), target), rng, repeats)
    rep.problem = "coloring"
    if isinstance(rep.witness, CliqueCover):
        rep.witness = Coloring.from_classes(g.n, [sorted(c) for c in rep.witness.cliques])
    return rep


__all__ = [
    "ModulatorInstance",
    "CoverType",
    "CliqueTable",
    "AuxGraph",
    "Branch",
    "SolveReport",
    "check_modulator",
    "enumerate_valid_types",
    "build_clique_table",
    "build_edge_polynomial",
    "build_interior_polynomial",
    "build_aux_graph",
    "solve_clique_cover_with_modulator",
    "solve_coloring_with_modulator",
    "witness_to_json",
    "DEFAULT_REPEATS",
]
