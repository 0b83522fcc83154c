"""Constructive reduction strategies and the strategy dispatcher.

Two reductions complement the direct solver:

* ``reduce_lemma1`` (halving): bisect all m masses with one simultaneous
  cut, then equipartition the resulting 2m half-masses with h-1 further
  hyperplanes; valid when d >= m so the bisection is guaranteed.
* ``reduce_lemma2`` (lifting): thicken the m masses into an extra
  coordinate, add a sampled ball of radius 1/2 centered one unit up as an
  (m+1)-th mass, solve the lifted instance, and intersect the resulting
  hyperplanes with the base slice.  Every lifted cut must nearly bisect the
  ball, forcing it through the ball's center, so the restriction is well
  posed.  A decreasing thickness schedule stands in for the limit argument;
  the first thickness whose restricted arrangement verifies wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import BoundaryPoints, EmptyHalf, PreconditionViolated
from .geometry import (
    Arrangement,
    Hyperplane,
    Mass,
    ball_mass,
    bounding_box_diagonal,
    default_tau,
    restrict_hyperplane,
    thicken_mass,
)
from .errors import DegenerateRestriction, DimensionMismatch
from .solver import Solution, SolverConfig, ham_sandwich, solve_direct
from .verifier import VerificationReport, verify

DEFAULT_BALL_SAMPLES = 4096


@dataclass(frozen=True)
class EpsilonSchedule:
    """Decreasing thickening fractions of the bounding-box diagonal."""

    values: tuple[float, ...] = (0.1, 0.03, 0.01, 0.003, 0.001)

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values or any(v <= 0.0 for v in values):
            raise ValueError("schedule must be nonempty and positive")
        if any(b >= a for a, b in zip(values, values[1:])):
            raise ValueError("schedule must be strictly decreasing")
        object.__setattr__(self, "values", values)


def _derived_seed(seed: int, *key: int) -> int:
    ss = np.random.SeedSequence([seed & ((1 << 64) - 1), *key])
    return int(ss.generate_state(1, np.uint64)[0])


def split_mass(mass: Mass, plane: Hyperplane, tau: float = 0.0, mode: str = "exact"):
    """Split a mass into its positive- and negative-side parts.

    In ``exact`` mode any point within ``tau`` of the plane raises
    BoundaryPoints; in ``tolerant`` mode boundary points alternate sides in
    sorted index order, keeping the halves balanced to within one weight.
    """
    if mass.dim != plane.dim:
        raise DimensionMismatch(f"mass dim {mass.dim} != plane dim {plane.dim}")
    if mode not in ("exact", "tolerant"):
        raise ValueError(f"mode must be 'exact' or 'tolerant', got {mode!r}")
    s = mass.points @ plane.normal - plane.offset
    on_plane = np.abs(s) <= tau
    plus = s > tau
    minus = s < -tau
    if on_plane.any():
        if mode == "exact":
            raise BoundaryPoints(f"{int(on_plane.sum())} points lie on the cutting plane")
        boundary_idx = np.flatnonzero(on_plane)
        plus = plus.copy()
        minus = minus.copy()
        for rank, idx in enumerate(boundary_idx):
            if rank % 2 == 0:
                plus[idx] = True
            else:
                minus[idx] = True
    if not plus.any() or not minus.any():
        raise EmptyHalf("split produced an empty half")
    return (
        Mass(points=mass.points[plus], weights=mass.weights[plus]),
        Mass(points=mass.points[minus], weights=mass.weights[minus]),
    )


def reduce_lemma1(
    masses,
    h: int,
    config: SolverConfig | None = None,
    inner_strategy: str = "auto",
) -> Solution:
    """Equipartition via one simultaneous bisection plus an (h-1)-cut solve.

    Requires d >= m so the bisecting hyperplane exists.  The returned
    arrangement is verified against the original masses; its first plane is
    the bisecting cut.
    """
    masses = [masses] if isinstance(masses, Mass) else list(masses)
    config = config or SolverConfig()
    if h < 2:
        raise PreconditionViolated(f"halving reduction needs h >= 2, got {h}")
    d, m = masses[0].dim, len(masses)
    if d < m:
        raise PreconditionViolated(
            f"halving reduction needs d >= m for the bisection step, got d={d}, m={m}"
        )
    tau = default_tau(masses)
    trace = [
        {
            "strategy": "lemma1",
            "d": d,
            "h": h,
            "m": m,
            "inner": {"d": d, "h": h - 1, "m": 2 * m},
            "inner_strategy": inner_strategy,
        }
    ]

    ham_cfg = replace(config, seed=_derived_seed(config.seed, 1))
    bisect = ham_sandwich(masses, ham_cfg)
    trace.append({"stage": "bisect", "report": bisect.report.summary()})
    trace.extend(bisect.strategy_trace)
    cut = bisect.arrangement.planes[0]

    halves: list[Mass] = []
    try:
        for mass in masses:
            plus, minus = split_mass(mass, cut, tau, mode="tolerant")
            halves.extend((plus, minus))
    except EmptyHalf:
        report = verify(masses, bisect.arrangement, config.tol, config.boundary_budget, tau)
        trace.append({"stage": "split", "error": "empty_half"})
        return Solution(bisect.arrangement, report, trace, converged=False)

    inner_cfg = replace(config, seed=_derived_seed(config.seed, 2))
    inner = solve(halves, h - 1, inner_strategy, inner_cfg)
    trace.append({"stage": "inner", "report": inner.report.summary()})
    trace.extend(inner.strategy_trace)

    arrangement = Arrangement((cut,) + inner.arrangement.planes)
    report = verify(masses, arrangement, config.tol, config.boundary_budget, tau)
    return Solution(arrangement, report, trace, converged=report.passed)


def reduce_lemma2(
    masses,
    h: int,
    config: SolverConfig | None = None,
    schedule: EpsilonSchedule | None = None,
    ball_n: int = DEFAULT_BALL_SAMPLES,
    inner_strategy: str = "auto",
) -> Solution:
    """Equipartition via lifting: solve with one extra mass one dimension up.

    For each thickness in the schedule the m masses are extruded into a new
    last coordinate, a radius-1/2 ball sampled at (0, ..., 0, 1) joins them,
    the (d+1, h, m+1) instance is solved (tolerance relaxed to the ball's
    sampling noise floor), and the cuts are intersected back with the base
    slice.  Thicknesses whose cuts come back parallel to the base are
    skipped.  The best restricted arrangement wins; the loop stops early at
    the first one that verifies.
    """
    masses = [masses] if isinstance(masses, Mass) else list(masses)
    config = config or SolverConfig()
    if h < 1:
        raise ValueError("h must be positive")
    if ball_n < 1:
        raise ValueError("ball_n must be positive")
    schedule = schedule or EpsilonSchedule()
    d, m = masses[0].dim, len(masses)
    diag = bounding_box_diagonal(masses)
    diag = diag if diag > 0.0 else 1.0
    tau = default_tau(masses)
    lifted_tol = max(config.tol, 3.0 / math.sqrt(ball_n))
    trace = [
        {
            "strategy": "lemma2",
            "d": d,
            "h": h,
            "m": m,
            "lifted": {"d": d + 1, "h": h, "m": m + 1},
            "schedule": list(schedule.values),
            "ball_n": ball_n,
            "lifted_tol": lifted_tol,
            "inner_strategy": inner_strategy,
        }
    ]
    center = np.zeros(d + 1)
    center[d] = 1.0

    best: tuple[Arrangement, VerificationReport] | None = None
    for stage_idx, frac in enumerate(schedule.values):
        eps = frac * diag
        lifted_masses = [thicken_mass(mass, eps) for mass in masses]
        lifted_masses.append(
            ball_mass(center, 0.5, ball_n, _derived_seed(config.seed, 3, stage_idx))
        )
        inner_cfg = replace(
            config, seed=_derived_seed(config.seed, 4, stage_idx), tol=lifted_tol
        )
        lifted = solve(lifted_masses, h, inner_strategy, inner_cfg)
        stage = {
            "stage": "epsilon",
            "epsilon_fraction": frac,
            "epsilon": eps,
            "lifted_report": lifted.report.summary(),
            "lifted_converged": lifted.converged,
            "lifted_planes": [
                {"normal": p.normal.tolist(), "offset": p.offset}
                for p in lifted.arrangement.planes
            ],
        }
        try:
            restricted = Arrangement(
                tuple(restrict_hyperplane(p) for p in lifted.arrangement.planes)
            )
        except DegenerateRestriction as exc:
            stage["degenerate_restriction"] = str(exc)
            trace.append(stage)
            continue
        report = verify(masses, restricted, config.tol, config.boundary_budget, tau)
        stage["restricted_report"] = report.summary()
        trace.append(stage)
        if best is None or report.max_imbalance < best[1].max_imbalance:
            best = (restricted, report)
        if report.passed:
            break

    if best is None:
        failed = VerificationReport(
            per_mass_imbalance=(1.0,) * m,
            max_imbalance=1.0,
            boundary_fraction=0.0,
            passed=False,
            tol=config.tol,
            boundary_budget=config.boundary_budget,
        )
        trace.append({"stage": "exhausted", "error": "all_restrictions_degenerate"})
        return Solution(None, failed, trace, converged=False)

    arrangement, _ = best
    report = verify(masses, arrangement, config.tol, config.boundary_budget, tau)
    return Solution(arrangement, report, trace, converged=report.passed)


def solve(
    masses,
    h: int,
    strategy: str = "auto",
    config: SolverConfig | None = None,
    schedule: EpsilonSchedule | None = None,
    ball_n: int = DEFAULT_BALL_SAMPLES,
    inner_strategy: str = "auto",
) -> Solution:
    """Dispatch to a solve strategy.

    ``auto`` tries the halving reduction when h >= 2 and d >= m, falling
    back to the direct solver if it does not converge; otherwise it solves
    directly.  Choices are recorded in the trace.
    """
    masses = [masses] if isinstance(masses, Mass) else list(masses)
    config = config or SolverConfig()
    if strategy == "direct":
        return solve_direct(masses, h, config)
    if strategy == "lemma1":
        return reduce_lemma1(masses, h, config, inner_strategy)
    if strategy == "lemma2":
        return reduce_lemma2(masses, h, config, schedule, ball_n, inner_strategy)
    if strategy != "auto":
        raise ValueError(f"unknown strategy {strategy!r}")

    d, m = masses[0].dim, len(masses)
    if h >= 2 and d >= m:
        attempt = reduce_lemma1(masses, h, config, inner_strategy)
        if attempt.converged:
            attempt.strategy_trace.insert(0, {"strategy": "auto", "chose": "lemma1"})
            return attempt
        fallback = solve_direct(masses, h, config)
        fallback.strategy_trace.insert(
            0, {"strategy": "auto", "chose": "direct", "after_failed": "lemma1"}
        )
        fallback.strategy_trace.append({"failed_attempt": "lemma1", "trace": attempt.strategy_trace})
        return fallback
    direct = solve_direct(masses, h, config)
    direct.strategy_trace.insert(0, {"strategy": "auto", "chose": "direct"})
    return direct
