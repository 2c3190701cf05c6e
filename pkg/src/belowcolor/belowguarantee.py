"""Win-win pipelines for coloring below the trivial bounds.

Both work on the cover side ``gc = complement(g)``, where colour classes of
``g`` are cliques of ``gc``.  A greedy packing of disjoint triangles in ``gc``
either saves enough colours on its own, or its vertices form a small set whose
removal leaves ``gc`` triangle-free, and the modulator solver takes over.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .ffield import Rng
from .graphcore import (
    CliqueCover,
    Coloring,
    Graph,
    TrianglePacking,
    complement,
    greedy_maximal_matching,
    greedy_triangle_packing,
    induced_subgraph,
    maximum_matching,
)
from .modsolve import (
    DEFAULT_REPEATS,
    Branch,
    ModulatorInstance,
    SolveReport,
    solve_clique_cover_with_modulator,
)
from .oracle import max_independent_set_exact


@dataclass(frozen=True)
class StructuralParams:
    """Quantities of one input ``g`` and its working graph ``gc``.

    ``mu``/``alpha`` belong to ``gc``; ``mu_out``/``alpha_out`` to ``gc[S-bar]``
    where ``S`` holds the first ``min(t, 2k)`` packed triangles.
    """

    mu: int
    alpha: int
    mu_out: int
    alpha_out: int
    omega: int
    mu_bar: int
    packing_size: int

    @classmethod
    def measure(cls, g: Graph, k: int, greedy_out: bool = False) -> "StructuralParams":
        gc = complement(g)
        packing = greedy_triangle_packing(gc)
        chosen = TrianglePacking(packing.triangles[:2 * k])
        sbar = sorted(set(range(g.n)) - set(chosen.vertices()))
        sub, _ = induced_subgraph(gc, sbar)
        m_out = len(greedy_maximal_matching(sub) if greedy_out else maximum_matching(sub))
        mu = len(maximum_matching(gc))
        alpha = max_independent_set_exact(gc)
        return cls(mu, alpha, m_out, len(sbar) - 2 * m_out, alpha, mu, len(packing))


def _cover_to_coloring(g: Graph, cover: CliqueCover) -> Coloring:
    return Coloring.from_classes(g.n, [sorted(c) for c in cover.cliques])


def _finish(rep: SolveReport, g: Graph, problem: str, k: int, t: int, start: float,
            target: Optional[int]) -> SolveReport:
    rep.problem = problem
    rep.k_or_target = k
    rep.extra["target"] = target
    rep.packing_size = t
    if isinstance(rep.witness, CliqueCover):
        rep.witness = _cover_to_coloring(g, rep.witness)
    rep.elapsed_ms = (time.perf_counter() - start) * 1e3
    return rep


def _check_k(k: int, lowest: int) -> None:
    if k < lowest:
        raise ValueError(f"k must be at least {lowest}")


def solve_dual_coloring(g: Graph, k: int, rng: Rng, repeats: int = DEFAULT_REPEATS) -> SolveReport:
    """Decide whether ``g`` is ``(n - k)``-colorable.

    ``t`` disjoint triangles of ``gc`` already give ``n - 2t`` colours, so
    ``t >= ceil(k/2)`` settles YES.  Otherwise the ``3t`` packed vertices are
    a modulator by maximality of the greedy packing.
    """
    _check_k(k, 0)
    start = time.perf_counter()
    n = g.n
    if k == 0:
        rep = SolveReport("dual_coloring", n, k, True, Branch.TRIVIAL,
                          witness=Coloring(tuple(range(n)), n), seed=rng.seed, repeats=repeats)
        return _finish(rep, g, "dual_coloring", k, 0, start, n)
    gc = complement(g)
    packing = greedy_triangle_packing(gc)
    t = len(packing)
    if t >= (k + 1) // 2:
        covered = set(packing.vertices())
        cover = CliqueCover.of(list(packing.triangles) + [[v] for v in range(n) if v not in covered])
        rep = SolveReport("dual_coloring", n, n - k, True, Branch.PACKING, t, None,
                          cover, rng.seed, repeats)
        return _finish(rep, g, "dual_coloring", k, t, start, n - k)
    inst = ModulatorInstance(gc, tuple(packing.vertices()), n - k)
    return _finish(solve_clique_cover_with_modulator(inst, rng, repeats), g, "dual_coloring", k, t, start, n - k)


def solve_dual_coloring_baseline(g: Graph, k: int, rng: Rng, repeats: int = DEFAULT_REPEATS) -> SolveReport:
    """Same decision via a maximum matching of ``gc`` (pairs of equal colour).

    ``mu(gc) >= k`` settles YES; otherwise the ``2 mu(gc) < 2k`` matched
    vertices leave an edgeless, hence triangle-free, remainder.
    """
    _check_k(k, 0)
    start = time.perf_counter()
    n = g.n
    if k == 0:
        rep = SolveReport("dual_coloring_baseline", n, k, True, Branch.TRIVIAL,
                          witness=Coloring(tuple(range(n)), n), seed=rng.seed, repeats=repeats)
        return _finish(rep, g, "dual_coloring_baseline", k, 0, start, n)
    gc = complement(g)
    matching = maximum_matching(gc)
    mu = len(matching)
    if mu >= k:
        pairs = list(matching.edges[:k])
        used = {v for e in pairs for v in e}
        cover = CliqueCover.of(pairs + [[v] for v in range(n) if v not in used])
        rep = SolveReport("dual_coloring_baseline", n, n - k, True, Branch.PACKING, mu, None,
                          cover, rng.seed, repeats)
        return _finish(rep, g, "dual_coloring_baseline", k, mu, start, n - k)
    inst = ModulatorInstance(gc, tuple(sorted(matching.vertices())), n - k)
    rep = solve_clique_cover_with_modulator(inst, rng, repeats)
    return _finish(rep, g, "dual_coloring_baseline", k, mu, start, n - k)


def construct_large_packing_cover(gc: Graph, k: int, packing: TrianglePacking,
                                  greedy_out: bool = False) -> CliqueCover:
    """Cover of ``gc`` from ``2k`` packed triangles plus a matching of the rest.

    The remainder ``gc[S-bar]`` is covered by its matching edges and singletons.
    The bound ``size <= alpha + mu - k`` needs only a maximal matching there,
    so ``greedy_out`` swaps the blossom matching for the greedy one.
    """
    if len(packing) <= 2 * k:
        raise ValueError(f"need more than {2 * k} triangles, got {len(packing)}")
    chosen = packing.triangles[:2 * k]
    inside = {v for tri in chosen for v in tri}
    sbar = [v for v in range(gc.n) if v not in inside]
    sub, old = induced_subgraph(gc, sbar)
    m_out = greedy_maximal_matching(sub) if greedy_out else maximum_matching(sub)
    pairs = [(old[a], old[b]) for a, b in m_out.edges]
    matched = {v for e in pairs for v in e}
    return CliqueCover.of(list(chosen) + pairs + [[v] for v in sbar if v not in matched])


def solve_below_structural_guarantee(g: Graph, k: int, rng: Rng, repeats: int = DEFAULT_REPEATS,
                                     greedy_out: bool = False,
                                     alpha: Optional[int] = None) -> SolveReport:
    """Decide whether ``g`` is ``(omega(g) + mu(complement(g)) - k)``-colorable.

    More than ``2k`` packed triangles settle YES by
    :func:`construct_large_packing_cover`.  Otherwise the at most ``6k``
    packed vertices are a modulator and the target becomes
    ``alpha(gc) + mu(gc) - k``.  ``alpha`` is taken from the exact oracle
    unless supplied.
    """
    _check_k(k, 1)
    start = time.perf_counter()
    n = g.n
    gc = complement(g)
    packing = greedy_triangle_packing(gc)
    t = len(packing)
    if t > 2 * k:
        cover = construct_large_packing_cover(gc, k, packing, greedy_out)
        rep = SolveReport("guarantee_coloring", n, k, True, Branch.PACKING, t, 6 * k,
                          cover, rng.seed, repeats)
        rep.extra["cover_size"] = len(cover)
        # the target needs alpha, which this branch never has to compute
        return _finish(rep, g, "guarantee_coloring", k, t, start, None)
    mu = len(maximum_matching(gc))
    if alpha is None:
        alpha = max_independent_set_exact(gc)
    inst = ModulatorInstance(gc, tuple(packing.vertices()), alpha + mu - k)
    rep = solve_clique_cover_with_modulator(inst, rng, repeats)
    return _finish(rep, g, "guarantee_coloring", k, t, start, alpha + mu - k)


__all__ = [
    "StructuralParams",
    "solve_dual_coloring",
    "solve_dual_coloring_baseline",
    "construct_large_packing_cover",
    "solve_below_structural_guarantee",
]
