"""Direct numerical search for equipartitioning arrangements.

The solver minimizes a smoothed surrogate of the equal-orthant condition:
hard orthant indicators are replaced by products of logistic factors at a
sharpness scale ``beta`` (a fraction of the bounding-box diagonal), annealed
downward over a schedule.  Each restart runs Nelder-Mead per schedule stage,
snaps offsets to midpoints between adjacent projected data points, and is
scored by the true (unsmoothed) worst-case imbalance; the smoothed value
never decides the incumbent.  Restarts draw independent substreams from the
seed, so results are deterministic and independent of thread interleaving.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionMismatch, PreconditionOutsideGuarantee
from .geometry import (
    Arrangement,
    Hyperplane,
    Mass,
    bounding_box_diagonal,
    default_tau,
)
from .kernels import orthant_accumulate, smoothed_orthant_measures
from .verifier import VerificationReport, verify

DEFAULT_SCHEDULE = (0.2, 0.05, 0.01, 0.002)
# Bisection needs extra-fine final stages: the window of directions where
# every cloud's median gap overlaps can be narrower than coarse smoothing
# scales, and only near-hard counting exposes it to the simplex search.
HAM_SANDWICH_SCHEDULE = (0.1, 0.03, 0.008, 0.002, 0.0005, 0.0001, 0.00002)

_SNAP_WINDOW = 3
_SNAP_PASSES = 2
_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class SolverConfig:
    seed: int = 0
    restarts: int = 16
    max_evals: int = 2000
    smoothing_schedule: tuple[float, ...] = DEFAULT_SCHEDULE
    tol: float = 0.0
    boundary_budget: float = 0.0

    def __post_init__(self):
        sched = tuple(float(b) for b in self.smoothing_schedule)
        if not sched or any(b <= 0.0 for b in sched):
            raise ValueError("smoothing schedule must be nonempty and positive")
        if any(b2 >= b1 for b1, b2 in zip(sched, sched[1:])):
            raise ValueError("smoothing schedule must be strictly decreasing")
        if self.restarts < 1 or self.max_evals < 1:
            raise ValueError("restarts and max_evals must be positive")
        if self.tol < 0.0 or self.boundary_budget < 0.0:
            raise ValueError("tol and boundary_budget must be nonnegative")
        object.__setattr__(self, "smoothing_schedule", sched)


@dataclass(eq=False)
class Solution:
    """An arrangement with its verification report and strategy trace."""

    arrangement: Arrangement | None
    report: VerificationReport
    strategy_trace: list = field(default_factory=list)
    converged: bool = False


def thread_cap(restarts: int) -> int:
    """Worker cap for restart parallelism, from MASSCUT_THREADS or cpu count."""
    env = os.environ.get("MASSCUT_THREADS", "").strip()
    if env:
        n = int(env)
    else:
        n = os.cpu_count() or 1
    return max(1, min(n, restarts))


def _as_mass_list(masses) -> list[Mass]:
    masses = [masses] if isinstance(masses, Mass) else list(masses)
    if not masses:
        raise ValueError("need at least one mass")
    d = masses[0].dim
    if any(m.dim != d for m in masses):
        raise DimensionMismatch("masses must share one dimension")
    return masses


class _Workspace:
    """Shared per-solve data: pooled points, scale, and kernel-ready arrays."""

    def __init__(self, masses: list[Mass], h: int):
        self.masses = masses
        self.h = h
        self.d = masses[0].dim
        self.data = [(m.points, m.weights, m.total) for m in masses]
        self.pooled = np.ascontiguousarray(np.concatenate([m.points for m in masses]))
        diag = bounding_box_diagonal(masses)
        self.diag = diag if diag > 0.0 else 1.0
        self.tau = default_tau(masses)

    def smoothed_value(self, params: np.ndarray, beta_frac: float) -> float:
        """Smoothed objective of scaled parameters (offsets in diag units)."""
        raw = params.reshape(self.h, self.d + 1)
        norms = np.linalg.norm(raw[:, : self.d], axis=1)
        if np.any(norms < 1e-12):
            return np.inf
        normals = np.ascontiguousarray(raw[:, : self.d] / norms[:, None])
        offsets = np.ascontiguousarray(raw[:, self.d] * self.diag)
        beta = beta_frac * self.diag
        total = 0.0
        share = 1.0 / (1 << self.h)
        for pts, w, tot in self.data:
            mu = smoothed_orthant_measures(pts, w, normals, offsets, beta)
            diff = mu - tot * share
            total += float(diff @ diff)
        return total

    def true_key(self, normals: np.ndarray, offsets: np.ndarray) -> tuple[float, float]:
        """(worst imbalance, worst boundary fraction) over the masses."""
        worst_imb = 0.0
        worst_bd = 0.0
        share = 1.0 / (1 << self.h)
        for pts, w, tot in self.data:
            entries, boundary = orthant_accumulate(pts, w, normals, offsets, self.tau)
            target = (tot - boundary) * share
            worst_imb = max(worst_imb, float(np.max(np.abs(entries - target))) / tot)
            worst_bd = max(worst_bd, boundary / tot)
        return worst_imb, worst_bd

    def extract(self, params: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        raw = params.reshape(self.h, self.d + 1)
        norms = np.linalg.norm(raw[:, : self.d], axis=1)
        normals = np.ascontiguousarray(raw[:, : self.d] / norms[:, None])
        offsets = np.ascontiguousarray(raw[:, self.d] * self.diag)
        return normals, offsets

    def snap_offsets(self, normals, offsets):
        """Re-center offsets to midpoints of nearby gaps in the projected data.

        A candidate is accepted only when it strictly improves the true
        (imbalance, boundary) key, so snapping never degrades the incumbent.
        On even exact-count instances this turns near-misses into exact
        splits and moves cuts off data points.
        """
        offsets = offsets.copy()
        best_key = self.true_key(normals, offsets)
        for _ in range(_SNAP_PASSES):
            improved = False
            for i in range(self.h):
                proj = np.sort(self.pooled @ normals[i])
                k = int(np.searchsorted(proj, offsets[i]))
                lo = max(1, k - _SNAP_WINDOW)
                hi = min(proj.shape[0] - 1, k + _SNAP_WINDOW)
                saved = offsets[i]
                for j in range(lo, hi + 1):
                    gap = proj[j] - proj[j - 1]
                    if gap <= 4.0 * self.tau:
                        continue
                    offsets[i] = 0.5 * (proj[j - 1] + proj[j])
                    key = self.true_key(normals, offsets)
                    if key < best_key:
                        best_key = key
                        saved = offsets[i]
                        improved = True
                offsets[i] = saved
            if not improved:
                break
        return offsets, best_key


def smoothed_objective(masses, params, beta: float) -> float:
    """Smoothed deviation from equal orthant shares.

    ``params`` packs h planes as (d+1) raw reals each: an unnormalized
    normal (renormalized here) followed by an offset in data units.
    ``beta`` is a fraction of the joint bounding-box diagonal.
    """
    masses = _as_mass_list(masses)
    params = np.asarray(params, dtype=np.float64).reshape(-1)
    if beta <= 0.0:
        raise ValueError("beta must be positive")
    d = masses[0].dim
    if params.size % (d + 1) != 0:
        raise ValueError(f"params length {params.size} is not a multiple of d+1 = {d + 1}")
    h = params.size // (d + 1)
    ws = _Workspace(masses, h)
    raw = params.reshape(h, d + 1)
    norms = np.linalg.norm(raw[:, :d], axis=1)
    if np.any(norms < 1e-12):
        raise ValueError("every plane needs a nonzero normal sub-vector")
    # Normals are renormalized; offsets are taken as given, in data units.
    scaled = np.concatenate(
        [raw[:, :d] / norms[:, None], (raw[:, d] / ws.diag)[:, None]], axis=1
    )
    return ws.smoothed_value(scaled.reshape(-1), beta)


@dataclass
class _RestartOutcome:
    index: int
    key: tuple[float, float]
    normals: np.ndarray
    offsets: np.ndarray
    evals: int
    stage_imbalances: list[float]

    def passes(self, tol: float, budget: float) -> bool:
        return self.key[0] <= tol and self.key[1] <= budget


def _initial_params(ws: _Workspace, rng: np.random.Generator) -> np.ndarray:
    """Normals uniform on the sphere, offsets uniform over projection ranges."""
    params = np.empty((ws.h, ws.d + 1))
    for i in range(ws.h):
        v = rng.standard_normal(ws.d)
        while float(np.linalg.norm(v)) < 1e-9:
            v = rng.standard_normal(ws.d)
        v /= np.linalg.norm(v)
        proj = ws.pooled @ v
        params[i, : ws.d] = v
        params[i, ws.d] = rng.uniform(proj.min(), proj.max()) / ws.diag
    return params.reshape(-1)


def _run_restart(ws: _Workspace, config: SolverConfig, index: int) -> _RestartOutcome:
    rng = np.random.default_rng([config.seed & _SEED_MASK, index])
    params = _initial_params(ws, rng)
    fscale = sum(tot * tot for _, _, tot in ws.data)
    best = None
    evals = 0
    stage_imbalances = []
    for beta in config.smoothing_schedule:
        step = max(0.5 * beta, 0.02)
        simplex = np.concatenate([params[None, :], params + np.eye(params.size) * step])
        result = minimize(
            ws.smoothed_value,
            params,
            args=(beta,),
            method="Nelder-Mead",
            options={
                "maxfev": config.max_evals,
                "xatol": 1e-6,
                "fatol": 1e-12 * fscale,
                "initial_simplex": simplex,
                "adaptive": True,
            },
        )
        evals += int(result.nfev)
        params = np.asarray(result.x, dtype=np.float64)
        normals, offsets = ws.extract(params)
        offsets, key = ws.snap_offsets(normals, offsets)
        params = params.reshape(ws.h, ws.d + 1)
        params[:, ws.d] = offsets / ws.diag
        params = params.reshape(-1)
        stage_imbalances.append(key[0])
        if best is None or key < best.key:
            best = _RestartOutcome(index, key, normals, offsets, evals, stage_imbalances)
        if best.passes(config.tol, config.boundary_budget):
            break
    best.evals = evals
    best.stage_imbalances = stage_imbalances
    return best


def _arrangement_from(ws: _Workspace, normals: np.ndarray, offsets: np.ndarray) -> Arrangement:
    return Arrangement(
        tuple(Hyperplane(normals[i], float(offsets[i])) for i in range(ws.h))
    )


def solve_direct(masses, h: int, config: SolverConfig | None = None) -> Solution:
    """Search for h hyperplanes cutting every mass into 2**h equal pieces.

    Runs ``config.restarts`` independent restarts and returns the first one
    (in restart order) that verifies within the configured tolerances, or
    else the best by true imbalance.  Never raises on non-convergence; the
    report carries the outcome.  Deterministic given ``config.seed``.
    """
    masses = _as_mass_list(masses)
    if h < 1:
        raise ValueError("h must be positive")
    config = config or SolverConfig()
    ws = _Workspace(masses, h)
    workers = thread_cap(config.restarts)
    trace = [
        {
            "strategy": "direct",
            "d": ws.d,
            "h": h,
            "m": len(masses),
            "seed": config.seed,
            "restarts": config.restarts,
            "max_evals": config.max_evals,
            "beta_schedule": list(config.smoothing_schedule),
            "tol": config.tol,
            "boundary_budget": config.boundary_budget,
        }
    ]

    outcomes: list[_RestartOutcome] = []
    if workers == 1:
        for r in range(config.restarts):
            outcome = _run_restart(ws, config, r)
            outcomes.append(outcome)
            if outcome.passes(config.tol, config.boundary_budget):
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_restart, ws, config, r) for r in range(config.restarts)]
            for r, fut in enumerate(futures):
                outcome = fut.result()
                outcomes.append(outcome)
                if outcome.passes(config.tol, config.boundary_budget):
                    for later in futures[r + 1 :]:
                        later.cancel()
                    break

    winner = min(outcomes, key=lambda o: (o.key, o.index))
    for o in outcomes:
        trace.append(
            {
                "event": "restart",
                "index": o.index,
                "imbalance": o.key[0],
                "boundary_fraction": o.key[1],
                "evals": o.evals,
                "stage_imbalances": o.stage_imbalances,
                "selected": o is winner,
            }
        )
    arrangement = _arrangement_from(ws, winner.normals, winner.offsets)
    report = verify(masses, arrangement, config.tol, config.boundary_budget, ws.tau)
    return Solution(
        arrangement=arrangement,
        report=report,
        strategy_trace=trace,
        converged=report.passed,
    )


def ham_sandwich(masses, config: SolverConfig | None = None) -> Solution:
    """Simultaneous bisection of m masses by one hyperplane (h = 1).

    For m <= d point clouds in general position with even counts this must
    converge exactly; outside d >= m a warning is attached and the solve is
    attempted best-effort.  Uses a tighter smoothing schedule than the
    generic direct solver unless the config carries a custom one.
    """
    masses = _as_mass_list(masses)
    config = config or SolverConfig()
    if config.smoothing_schedule == DEFAULT_SCHEDULE:
        config = replace(config, smoothing_schedule=HAM_SANDWICH_SCHEDULE)
    d, m = masses[0].dim, len(masses)
    outside = d < m
    if outside:
        warnings.warn(
            f"bisection of {m} masses is only guaranteed in dimension >= {m}, got {d}",
            PreconditionOutsideGuarantee,
            stacklevel=2,
        )
    solution = solve_direct(masses, 1, config)
    solution.strategy_trace[0]["strategy"] = "ham_sandwich"
    if outside:
        solution.strategy_trace.insert(
            1, {"warning": "outside_guarantee", "d": d, "m": m}
        )
    return solution
