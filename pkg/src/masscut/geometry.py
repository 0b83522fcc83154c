"""Geometric primitives: weighted point-cloud masses, hyperplane arrangements,
orthant measures, and the lift / thicken / restrict constructions.

Conventions
-----------
A hyperplane is a unit normal ``a`` with offset ``b`` and denotes the set
``{x : a.x = b}``.  An ordered arrangement of ``h`` hyperplanes splits space
into ``2**h`` open orthants labelled by sign vectors in ``{-1, +1}**h``
(coordinate ``i`` is the side of plane ``i``).  Points within a tolerance
``tau`` of any plane are routed to a separate boundary bucket rather than to
an orthant.

All values are immutable after construction (arrays are marked read-only)
and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegenerateRestriction, DimensionMismatch
from .kernels import orthant_accumulate

MAX_PLANES = 20
UNIT_NORMAL_TOL = 1e-12
RESTRICTION_FLOOR = 1e-9
DEFAULT_TAU_FRACTION = 1e-9


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Mass:
    """A finite weighted point cloud standing in for a measure on R^d."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise ValueError(f"points must be a nonempty (n, d) array, got shape {pts.shape}")
        w = np.asarray(self.weights, dtype=np.float64)
        if w.shape != (pts.shape[0],):
            raise ValueError(f"weights must have shape ({pts.shape[0]},), got {w.shape}")
        if not np.all(np.isfinite(pts)) or not np.all(np.isfinite(w)):
            raise ValueError("points and weights must be finite")
        if not np.all(w > 0.0):
            raise ValueError("all weights must be positive")
        object.__setattr__(self, "points", _readonly(pts))
        object.__setattr__(self, "weights", _readonly(w))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def total(self) -> float:
        return float(self.weights.sum())


@dataclass(frozen=True, eq=False)
class Hyperplane:
    """Oriented hyperplane {x : normal . x = offset} with a unit normal."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        a = np.asarray(self.normal, dtype=np.float64).reshape(-1)
        if a.size == 0 or not np.all(np.isfinite(a)) or not math.isfinite(self.offset):
            raise ValueError("hyperplane coefficients must be finite and nonempty")
        nrm = float(np.linalg.norm(a))
        if abs(nrm - 1.0) > UNIT_NORMAL_TOL:
            raise ValueError(f"normal must be unit length, |a| = {nrm!r}")
        object.__setattr__(self, "normal", _readonly(a))
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def from_general(cls, normal, offset: float) -> "Hyperplane":
        """Build from an unnormalized normal, rescaling the offset to match."""
        a = np.asarray(normal, dtype=np.float64).reshape(-1)
        nrm = float(np.linalg.norm(a))
        if nrm <= 0.0 or not math.isfinite(nrm):
            raise ValueError("normal must be nonzero and finite")
        return cls(a / nrm, float(offset) / nrm)

    @property
    def dim(self) -> int:
        return self.normal.shape[0]


@dataclass(frozen=True, eq=False)
class Arrangement:
    """Ordered list of hyperplanes sharing one ambient dimension."""

    planes: tuple[Hyperplane, ...]

    def __post_init__(self):
        planes = tuple(self.planes)
        if not planes:
            raise ValueError("arrangement needs at least one hyperplane")
        if len(planes) > MAX_PLANES:
            raise ValueError(f"at most {MAX_PLANES} hyperplanes supported")
        d = planes[0].dim
        if any(p.dim != d for p in planes):
            raise DimensionMismatch("all hyperplanes must share one dimension")
        object.__setattr__(self, "planes", planes)

    @property
    def dim(self) -> int:
        return self.planes[0].dim

    @property
    def h(self) -> int:
        return len(self.planes)

    @cached_property
    def normals(self) -> np.ndarray:
        return _readonly(np.stack([p.normal for p in self.planes]))

    @cached_property
    def offsets(self) -> np.ndarray:
        return _readonly(np.array([p.offset for p in self.planes]))


# An orthant label is a tuple of h signs in {-1, +1}, one per plane.
OrthantLabel = tuple[int, ...]


def index_to_label(index: int, h: int) -> OrthantLabel:
    """Sign vector for a packed orthant index (bit i set means +1 on plane i)."""
    return tuple(1 if (index >> i) & 1 else -1 for i in range(h))


def label_to_index(label: OrthantLabel) -> int:
    idx = 0
    for i, s in enumerate(label):
        if s == 1:
            idx |= 1 << i
        elif s != -1:
            raise ValueError(f"orthant label entries must be +-1, got {s!r}")
    return idx


@dataclass(frozen=True)
class MeasureTable:
    """Per-orthant measures of one mass under an arrangement.

    ``entries`` maps every one of the ``2**h`` labels to a nonnegative
    measure; ``boundary`` holds the weight within tolerance of some plane.
    Entries plus boundary account for the full mass.
    """

    h: int
    entries: dict[OrthantLabel, float]
    boundary: float
    total: float

    def __post_init__(self):
        if len(self.entries) != 1 << self.h:
            raise ValueError(f"expected {1 << self.h} orthant entries, got {len(self.entries)}")
        if self.boundary < 0.0 or self.total <= 0.0:
            raise ValueError("boundary must be nonnegative and total positive")
        acc = math.fsum(self.entries.values()) + self.boundary
        if abs(acc - self.total) > 1e-9 * self.total:
            raise ValueError(f"measures sum to {acc!r}, expected total {self.total!r}")

    def as_array(self) -> np.ndarray:
        out = np.empty(1 << self.h)
        for label, value in self.entries.items():
            out[label_to_index(label)] = value
        return out


def bounding_box_diagonal(masses) -> float:
    """Euclidean diagonal of the joint bounding box of one or more masses."""
    masses = [masses] if isinstance(masses, Mass) else list(masses)
    if not masses:
        raise ValueError("need at least one mass")
    lo = np.min([m.points.min(axis=0) for m in masses], axis=0)
    hi = np.max([m.points.max(axis=0) for m in masses], axis=0)
    return float(np.linalg.norm(hi - lo))


def default_tau(masses, fraction: float = DEFAULT_TAU_FRACTION) -> float:
    """Scale-aware boundary tolerance, a small fraction of the bbox diagonal."""
    return fraction * bounding_box_diagonal(masses)


def side_of(x, plane: Hyperplane, tau: float = 0.0) -> int:
    """Side of ``x`` relative to ``plane``: +1, -1, or 0 within ``tau``."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != plane.dim:
        raise DimensionMismatch(f"point has dim {x.shape[0]}, plane has dim {plane.dim}")
    if tau < 0.0:
        raise ValueError("tau must be nonnegative")
    s = float(x @ plane.normal) - plane.offset
    if abs(s) <= tau:
        return 0
    return 1 if s > 0.0 else -1


def orthant_of(x, arrangement: Arrangement, tau: float = 0.0) -> OrthantLabel | None:
    """Sign vector of ``x`` under the arrangement, or None on a boundary."""
    sides = tuple(side_of(x, p, tau) for p in arrangement.planes)
    if 0 in sides:
        return None
    return sides


def orthant_measures(mass: Mass, arrangement: Arrangement, tau: float = 0.0) -> MeasureTable:
    """Weight of the mass in each orthant, with boundary weight kept apart."""
    if mass.dim != arrangement.dim:
        raise DimensionMismatch(f"mass dim {mass.dim} != arrangement dim {arrangement.dim}")
    if tau < 0.0:
        raise ValueError("tau must be nonnegative")
    entries, boundary = orthant_accumulate(
        mass.points, mass.weights, arrangement.normals, arrangement.offsets, tau
    )
    h = arrangement.h
    table = {index_to_label(i, h): float(entries[i]) for i in range(1 << h)}
    return MeasureTable(h=h, entries=table, boundary=boundary, total=mass.total)


def thicken_mass(mass: Mass, eps: float) -> Mass:
    """Extrude a mass symmetrically into a new last coordinate.

    Every point ``(x, w)`` becomes the pair ``(x, -eps/2)`` and ``(x, +eps/2)``
    with weight ``w/2`` each, so totals are preserved.  The split is
    deterministic; coincidences with hyperplanes are handled downstream by
    tolerance-based counting rather than by a null-set property.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    n = mass.size
    pts = np.empty((2 * n, mass.dim + 1))
    pts[0::2, : mass.dim] = mass.points
    pts[1::2, : mass.dim] = mass.points
    pts[0::2, mass.dim] = -0.5 * eps
    pts[1::2, mass.dim] = +0.5 * eps
    w = np.repeat(mass.weights, 2) * 0.5
    return Mass(points=pts, weights=w)


def ball_mass(center, radius: float, n: int, seed) -> Mass:
    """Uniform sample of ``n`` unit-total weight points in a closed ball.

    Rejection sampling from the bounding cube; deterministic given ``seed``.
    """
    center = np.asarray(center, dtype=np.float64).reshape(-1)
    d = center.shape[0]
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    if n < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    chunks = []
    have = 0
    while have < n:
        cand = rng.uniform(-radius, radius, size=(max(64, 2 * (n - have)), d))
        keep = cand[np.einsum("ij,ij->i", cand, cand) <= radius * radius]
        chunks.append(keep)
        have += keep.shape[0]
    pts = np.concatenate(chunks)[:n] + center
    return Mass(points=pts, weights=np.full(n, 1.0 / n))


def lift_hyperplane(plane: Hyperplane) -> Hyperplane:
    """Pre-image of the plane under dropping the last coordinate."""
    return Hyperplane(np.append(plane.normal, 0.0), plane.offset)


def restrict_hyperplane(plane: Hyperplane) -> Hyperplane:
    """Intersection with the base slice {last coordinate = 0}, renormalized.

    Raises DegenerateRestriction when the plane is (nearly) parallel to the
    base slice; the restricted offset would blow up the error unboundedly.
    """
    if plane.dim < 2:
        raise DimensionMismatch("cannot restrict a hyperplane of dimension < 2")
    base = plane.normal[:-1]
    nrm = float(np.linalg.norm(base))
    if nrm <= RESTRICTION_FLOOR:
        raise DegenerateRestriction(f"base normal magnitude {nrm!r} below {RESTRICTION_FLOOR}")
    return Hyperplane(base / nrm, plane.offset / nrm)


def lift_arrangement(arrangement: Arrangement) -> Arrangement:
    return Arrangement(tuple(lift_hyperplane(p) for p in arrangement.planes))


def project_mass(mass: Mass) -> Mass:
    """Drop the last coordinate of every point; weights are unchanged."""
    if mass.dim < 2:
        raise DimensionMismatch("cannot project a mass of dimension < 2")
    return Mass(points=mass.points[:, :-1], weights=mass.weights)
