"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with:  pytest tests/test_acceptance.py -v -s
"""

import time

import numpy as np
import pytest

from masscut import (
    Arrangement,
    SearchConfig,
    SolverConfig,
    best_upper_bound,
    corollary3,
    gen_gaussian,
    gen_grid,
    gen_symmetric,
    ham_sandwich,
    orthant_measures,
    reduce_lemma1,
    reduce_lemma2,
    solve_direct,
    split_mass,
    table,
    verify,
)
from masscut.cli import run

from .conftest import median_gap


def report(number, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"ACCEPTANCE {number} {name}: {status}{suffix}")
    assert ok, f"criterion {number} ({name}) failed{suffix}"


def test_criterion_1_bounds_paper_values():
    ok = all(best_upper_bound(1, m).value == m for m in range(1, 65))
    for (h, m), expected in {
        (2, 5): 8, (2, 4): 6, (3, 2): 5, (4, 2): 9, (5, 2): 15, (5, 8): 60,
    }.items():
        ok = ok and best_upper_bound(h, m).value == expected
    start = time.perf_counter()
    table(9, 64)
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1.0
    report(1, "bounds reproduce known values", ok, f"grid time {elapsed:.3f}s")


def test_criterion_2_corollary_agreement():
    ok = True
    for h in range(5, 10):
        for m in range(2, 33):
            expect = corollary3(h, m)
            q = (m - 1).bit_length() - 1
            r = m - (1 << q)
            ok = ok and expect == (1 << (h - 5)) * (14 * (1 << q) + r)
            ok = ok and best_upper_bound(h, m).value == expect
    spots = {(5, 2): 15, (5, 3): 29, (5, 4): 30, (6, 2): 30, (6, 4): 60}
    for (h, m), expected in spots.items():
        ok = ok and corollary3(h, m) == expected and best_upper_bound(h, m).value == expected
    report(2, "closed form equals search on the grid", ok)


def test_criterion_3_certificate_replay_and_caps():
    ok = True
    cfg4 = SearchConfig(m_cap_factor=4)
    for h in range(5, 10):
        for m in range(2, 33):
            cert = best_upper_bound(h, m)
            ok = ok and cert.replay() == cert.value
            ok = ok and best_upper_bound(h, m, cfg4).value == cert.value
    report(3, "certificates replay, caps do not bind", ok)


def test_criterion_4_ham_sandwich_twenty_instances():
    ok = True
    worst = 0.0
    for seed in range(20):
        masses = gen_gaussian(2, 200, 2, seed)
        start = time.perf_counter()
        sol = ham_sandwich(masses, SolverConfig(seed=seed, tol=0.0, boundary_budget=0.0))
        elapsed = time.perf_counter() - start
        worst = max(worst, elapsed)
        ok = ok and sol.converged and elapsed <= 5.0
        for mass in masses:
            t = orthant_measures(mass, sol.arrangement, 1e-9)
            ok = ok and t.entries[(1,)] == 100.0 and t.entries[(-1,)] == 100.0 and t.boundary == 0.0
    report(4, "simultaneous exact bisection, 20 seeds", ok, f"worst {worst:.2f}s")


def test_criterion_5_direct_solve_symmetric():
    ok = True
    worst = 0.0
    for seed in range(10):
        mass = gen_symmetric(2, 400, seed)
        start = time.perf_counter()
        sol = solve_direct([mass], 2, SolverConfig(seed=seed, tol=0.0, boundary_budget=0.0))
        elapsed = time.perf_counter() - start
        worst = max(worst, elapsed)
        ok = ok and sol.converged and elapsed <= 30.0
        t = orthant_measures(mass, sol.arrangement, 1e-9)
        ok = ok and sorted(t.entries.values()) == [100.0] * 4
    report(5, "direct 4-way equipartition, 10 seeds", ok, f"worst {worst:.2f}s")


def test_criterion_6_halving_reduction_structure():
    ok = True
    for seed in (3, 4, 5):
        mass = gen_symmetric(2, 400, seed)
        sol = reduce_lemma1([mass], 2, SolverConfig(seed=seed, tol=0.0, boundary_budget=0.0))
        ok = ok and sol.converged and sol.report.max_imbalance == 0.0
        first = Arrangement((sol.arrangement.planes[0],))
        ok = ok and verify([mass], first, 0.0, 0.0).passed
        plus, minus = split_mass(mass, sol.arrangement.planes[0], 1e-9, mode="tolerant")
        inner = Arrangement(sol.arrangement.planes[1:])
        ok = ok and verify([plus, minus], inner, 0.0, 0.0).passed
    report(6, "halving reduction with exact structure", ok)


def test_criterion_7_lifting_reduction_line_instances():
    ok = True
    start = time.perf_counter()
    worst_dist = 0.0
    cases = [(gen_grid(1, 10, 1), 1000)]
    cases += [(gen_gaussian(1, 10, 1, seed), seed) for seed in range(10)]
    for masses, seed in cases:
        cfg = SolverConfig(seed=seed, tol=1e-2, boundary_budget=1e-3)
        sol = reduce_lemma2(masses, 1, cfg, ball_n=4096)
        ok = ok and sol.converged and sol.report.max_imbalance <= 1e-2
        plane = sol.arrangement.planes[0]
        cut = plane.offset / plane.normal[0]
        lo, hi = median_gap(masses[0].points[:, 0])
        ok = ok and lo < cut < hi
        stages = [
            t for t in sol.strategy_trace
            if t.get("stage") == "epsilon" and "restricted_report" in t
        ]
        first_imb = stages[0]["restricted_report"]["max_imbalance"]
        last_imb = stages[-1]["restricted_report"]["max_imbalance"]
        ok = ok and last_imb <= first_imb
        center = np.array([0.0, 1.0])
        for lifted in stages[-1]["lifted_planes"]:
            dist = abs(np.array(lifted["normal"]) @ center - lifted["offset"])
            worst_dist = max(worst_dist, dist)
            ok = ok and dist <= 0.05
    elapsed = time.perf_counter() - start
    ok = ok and elapsed <= 60.0
    report(7, "lifting reduction vs median oracle", ok, f"total {elapsed:.1f}s, ball dist {worst_dist:.3f}")


def test_criterion_8_honest_failure(tmp_path):
    (mass,) = gen_grid(1, 10, 1)
    sol = solve_direct([mass], 2, SolverConfig(seed=0, tol=0.0, boundary_budget=0.0))
    ok = not sol.converged
    inst = tmp_path / "line.json"
    cuts = tmp_path / "cuts.json"
    ok = ok and run(["gen", "--kind", "grid", "--d", "1", "--n", "10", "--m", "1", "-o", str(inst)]) == 0
    code = run([
        "solve", "--instance", str(inst), "--h", "2", "--strategy", "direct",
        "--seed", "0", "--tol", "0", "--boundary-budget", "0", "-o", str(cuts),
    ])
    ok = ok and code == 1 and cuts.exists()
    report(8, "impossible instance fails honestly, exit 1", ok)


def test_criterion_9_property_suites_configured():
    from . import test_properties as props

    suites = [
        props.TestConservation.test_measures_account_for_all_weight,
        props.TestSignFlip.test_flipping_one_plane_permutes_entries,
        props.TestLiftRestrict.test_round_trip,
        props.TestLiftRestrict.test_lifted_measures_match_thickened_base,
        props.TestVerifierInvariance.test_rigid_motion_equivariance,
        props.TestVerifierInvariance.test_weight_scaling_invariance,
        props.TestInstanceRoundTrip.test_write_read_identity,
        props.TestSolverDeterminism.test_same_seed_same_solution,
    ]
    ok = all(fn._hypothesis_internal_use_settings.max_examples >= 200 for fn in suites)
    report(9, "invariant suites run >= 200 cases each", ok, "suites execute in test_properties.py")
