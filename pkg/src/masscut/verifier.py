"""Equipartition verification: quantify how far an arrangement is from
cutting each mass into 2**h equal orthant pieces."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch
from .geometry import Arrangement, Mass, MeasureTable, default_tau, orthant_measures


@dataclass(frozen=True)
class VerificationReport:
    """Quantitative outcome of checking one arrangement against masses.

    ``per_mass_imbalance`` holds the normalized worst orthant deviation per
    mass; ``boundary_fraction`` is the largest boundary share over masses.
    ``passed`` requires both the imbalance and the boundary budget to hold.
    """

    per_mass_imbalance: tuple[float, ...]
    max_imbalance: float
    boundary_fraction: float
    passed: bool
    tol: float
    boundary_budget: float

    def summary(self) -> dict:
        return {
            "per_mass_imbalance": list(self.per_mass_imbalance),
            "max_imbalance": self.max_imbalance,
            "boundary_fraction": self.boundary_fraction,
            "passed": self.passed,
            "tol": self.tol,
            "boundary_budget": self.boundary_budget,
        }


def imbalance(table: MeasureTable) -> float:
    """Worst normalized deviation of an orthant measure from the equal share.

    The equal share excludes boundary weight: (total - boundary) / 2**h.
    Deviation is normalized by the total mass.
    """
    if table.total <= 0.0:
        raise ValueError("total measure must be positive")
    target = (table.total - table.boundary) / (1 << table.h)
    worst = max(abs(v - target) for v in table.entries.values())
    return worst / table.total


def verify(
    masses,
    arrangement: Arrangement,
    tol: float = 0.0,
    boundary_budget: float = 0.0,
    tau: float | None = None,
) -> VerificationReport:
    """Check whether the arrangement equipartitions every mass within ``tol``.

    ``tau`` defaults to a small fraction of the joint bounding-box diagonal.
    """
    masses = [masses] if isinstance(masses, Mass) else list(masses)
    if not masses:
        raise ValueError("need at least one mass")
    if tol < 0.0 or boundary_budget < 0.0:
        raise ValueError("tol and boundary_budget must be nonnegative")
    if any(m.dim != arrangement.dim for m in masses):
        raise DimensionMismatch("masses and arrangement must share one dimension")
    if tau is None:
        tau = default_tau(masses)

    imbalances = []
    boundary_fraction = 0.0
    for mass in masses:
        table = orthant_measures(mass, arrangement, tau)
        imbalances.append(imbalance(table))
        boundary_fraction = max(boundary_fraction, table.boundary / table.total)
    max_imbalance = max(imbalances)
    passed = max_imbalance <= tol and boundary_fraction <= boundary_budget
    return VerificationReport(
        per_mass_imbalance=tuple(imbalances),
        max_imbalance=max_imbalance,
        boundary_fraction=boundary_fraction,
        passed=passed,
        tol=tol,
        boundary_budget=boundary_budget,
    )
