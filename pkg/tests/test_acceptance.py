"""End-to-end acceptance checks, one per headline criterion.

Each test prints a single ``PASS``/``FAIL`` line to the terminal (bypassing
pytest's capture) and then asserts.  Run with ``pytest tests/test_acceptance.py -v``.
"""

from __future__ import annotations

import pytest

from belowcolor.belowguarantee import (
    StructuralParams,
    solve_below_structural_guarantee,
    solve_dual_coloring,
    solve_dual_coloring_baseline,
)
from belowcolor.bench import bench_scaling, consecutive_ratios, median_times
from belowcolor.ffield import Q, Rng
from belowcolor.generators import gen_planted_comodulator
from belowcolor.graphcore import (
    complement,
    greedy_triangle_packing,
    guarantee_witness_coloring,
    verify_coloring,
    verify_matching,
)
from belowcolor.modsolve import ModulatorInstance, solve_clique_cover_with_modulator
from belowcolor.oracle import (
    chromatic_number_exact,
    clique_cover_number_exact,
    clique_number_exact,
    max_independent_set_exact,
    maximum_matching_exact,
)
from belowcolor.pfaff import field_determinant, field_pfaffian, pfaffian, pfaffian_bruteforce
from belowcolor.reducegen import (
    ColoredCliqueInstance,
    build_reduction,
    canonical_perfect_matching,
    cross_pairs,
    verify_equivalence_small,
)
from belowcolor.sqring import ring_mul

from corpus import C5, PETERSEN, random_graphs
from test_pfaff import random_field_skew, random_matrix
from test_sqring import naive_convolution, random_element

SCALING_BAND = (1.5, 3.0)
SCALING_MIN_IN_BAND = 4


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    return emit


@pytest.mark.acceptance
def test_criterion_1_dual_coloring_correctness(report):
    graphs = random_graphs(500, 4, 14, 1001)
    mismatches, checks = [], 0
    for i, g in enumerate(graphs):
        chi = chromatic_number_exact(g)
        for k in range(g.n + 1):
            a = solve_dual_coloring(g, k, Rng(i)).decision
            b = solve_dual_coloring_baseline(g, k, Rng(i)).decision
            checks += 1
            if not a == b == (chi <= g.n - k):
                mismatches.append((i, k))
    report(1, not mismatches, f"{len(graphs)} graphs, {checks} (graph, k) pairs, {len(mismatches)} mismatches")
    assert not mismatches


@pytest.mark.acceptance
def test_criterion_2_modulator_solver_correctness(report):
    cases = []
    for g in random_graphs(300, 3, 12, 1002):
        cases.append((g, tuple(greedy_triangle_packing(g).vertices())))
    for i in range(100):
        n = 8 + i % 9
        g, s = gen_planted_comodulator(n, i % 9, 2000 + i)
        cases.append((complement(g), s))
    mismatches, checks = [], 0
    for i, (gc, s) in enumerate(cases):
        theta = clique_cover_number_exact(gc)
        for ell in range(1, gc.n + 1):
            checks += 1
            if solve_clique_cover_with_modulator(ModulatorInstance(gc, s, ell), Rng(i)).decision != (theta <= ell):
                mismatches.append((i, ell))
    report(2, not mismatches, f"{len(cases)} instances, {checks} targets, {len(mismatches)} mismatches")
    assert not mismatches


@pytest.mark.acceptance
def test_criterion_3_structural_guarantee_correctness(report):
    failures, checks, large = [], 0, 0
    for i, g in enumerate(random_graphs(200, 3, 12, 1003, (0.1, 0.2, 0.5, 0.8))):
        gc = complement(g)
        chi = chromatic_number_exact(g)
        omega, mu_bar = clique_number_exact(g), maximum_matching_exact(gc)
        alpha, mu = max_independent_set_exact(gc), maximum_matching_exact(gc)
        for k in (1, 2, 3):
            checks += 1
            rep = solve_below_structural_guarantee(g, k, Rng(i))
            if rep.decision != (chi <= omega + mu_bar - k):
                failures.append((i, k, "decision"))
            sp = StructuralParams.measure(g, k)
            if sp.packing_size > 2 * k:
                large += 1
                if not (verify_coloring(g, rep.witness) and rep.witness.palette_size <= alpha + mu - k):
                    failures.append((i, k, "witness"))
                if sp.mu_out + sp.alpha_out > alpha + mu - 3 * k:
                    failures.append((i, k, "inequality"))
    report(3, not failures, f"{checks} (graph, k) pairs, {large} with t > 2k, {len(failures)} failures")
    assert not failures


@pytest.mark.acceptance
def test_criterion_4_algebra_oracles(report):
    rng = Rng(1004)
    bad = []
    for trial in range(200):
        m = random_matrix(2 * (1 + trial % 4), trial % 5, rng,
                          constants=("all", "some", "none")[trial % 3])
        if pfaffian(m, "division_free") != pfaffian_bruteforce(m):
            bad.append(("pfaffian", trial))
    for trial in range(200):
        rows = random_field_skew(2 * (trial % 6), rng)
        pf = field_pfaffian(rows)
        if pf * pf % Q != field_determinant(rows):
            bad.append(("determinant", trial))
    for trial in range(100):
        p = trial % 11
        a, b = random_element(p, rng, 0.5), random_element(p, rng, 0.5)
        if [int(x) for x in ring_mul(a, b).coeffs] != naive_convolution(a, b):
            bad.append(("convolution", trial))
    report(4, not bad, f"200 Pfaffians, 200 Pf^2=det, 100 convolutions, {len(bad)} mismatches")
    assert not bad


@pytest.mark.acceptance
def test_criterion_5_scaling_in_modulator_size(report):
    records = bench_scaling(range(8, 14), 22, trials=7, seed=1005, timing_runs=3)
    ratios = consecutive_ratios(records)
    lo, hi = SCALING_BAND
    inside = sum(lo <= r <= hi for r in ratios)
    med = {p: round(t) for p, t in median_times(records).items()}
    ok = len(ratios) == 5 and inside >= SCALING_MIN_IN_BAND
    report(5, ok, f"median ms {med}, ratios {[round(r, 2) for r in ratios]}, {inside}/5 in [{lo}, {hi}]")
    assert ok


@pytest.mark.acceptance
def test_criterion_6_reduction_equivalence(report):
    pairs = cross_pairs(2, 2)
    instances = [ColoredCliqueInstance(2, 2, frozenset(e for j, e in enumerate(pairs) if mask >> j & 1))
                 for mask in range(1 << len(pairs))]
    rng = Rng(1006)
    instances += [ColoredCliqueInstance.random(3, 2, (0.3, 0.6, 0.9)[i % 3], rng) for i in range(50)]
    failures = []
    for i, inst in enumerate(instances):
        r = build_reduction(inst)
        k, n = inst.k, inst.n
        shape = r.graph.n == 2 * k * n + 2 and r.target == k * (n - 1) + 2
        matched = verify_matching(r.graph, canonical_perfect_matching(r), perfect=True)
        if not (shape and matched and verify_equivalence_small(inst)):
            failures.append(i)
    report(6, not failures, f"{len(instances)} instances (16 exhaustive k=2 n=2, 50 random k=3 n=2), "
                            f"{len(failures)} failures")
    assert not failures


@pytest.mark.acceptance
def test_criterion_7_structural_inequalities(report):
    corpus = [C5, PETERSEN] + random_graphs(300, 1, 12, 1007)
    failures = []
    for i, g in enumerate(corpus):
        omega, mu_bar = clique_number_exact(g), maximum_matching_exact(complement(g))
        w = guarantee_witness_coloring(g)
        ok = (omega + mu_bar <= g.n
              and max_independent_set_exact(g) <= clique_cover_number_exact(g)
              and verify_coloring(g, w) and w.palette_size <= omega + mu_bar)
        if not ok:
            failures.append(i)
    report(7, not failures, f"{len(corpus)} graphs, {len(failures)} failures")
    assert not failures
