"""Randomized FPT solvers for coloring below the trivial and structural bounds."""

from .belowguarantee import (
    solve_below_structural_guarantee,
    solve_dual_coloring,
    solve_dual_coloring_baseline,
)
from .ffield import Rng
from .graphcore import CliqueCover, Coloring, Graph, complement, parse_dimacs, to_dimacs
from .modsolve import (
    ModulatorInstance,
    SolveReport,
    solve_clique_cover_with_modulator,
    solve_coloring_with_modulator,
)

__version__ = "0.1.0"

__all__ = [
    "CliqueCover",
    "Coloring",
    "Graph",
    "ModulatorInstance",
    "Rng",
    "SolveReport",
    "complement",
    "parse_dimacs",
    "solve_below_structural_guarantee",
    "solve_clique_cover_with_modulator",
    "solve_coloring_with_modulator",
    "solve_dual_coloring",
    "solve_dual_coloring_baseline",
    "to_dimacs",
]
