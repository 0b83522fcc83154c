"""Deterministic instance generators and the JSON on-disk formats.

Instance files:
    {"dim": d, "masses": [{"points": [[...]], "weights": [...]}], "metadata": {...}}
Cuts files:
    {"dim": d, "planes": [{"normal": [...], "offset": b}]}

Floats are serialized with Python's shortest round-trip repr, which is exact
for 64-bit floats, so write/read round-trips are bit identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InstanceParseError, InstanceSchemaError
from .geometry import Arrangement, Hyperplane, Mass

PARSE_NORMAL_TOL = 1e-6


@dataclass
class InstanceFile:
    dim: int
    masses: list[Mass]
    metadata: dict = field(default_factory=dict)


def gen_gaussian(d: int, n: int, m: int, seed, centers=None) -> list[Mass]:
    """``m`` clouds of ``n`` unit-weight standard-normal points.

    Centers default to a seeded uniform draw in [-4, 4]^d.
    """
    if n < 1 or m < 1 or d < 1:
        raise ValueError("d, n and m must be positive")
    rng = np.random.default_rng(seed)
    if centers is None:
        centers = rng.uniform(-4.0, 4.0, size=(m, d))
    else:
        centers = np.asarray(centers, dtype=np.float64)
        if centers.shape != (m, d):
            raise ValueError(f"centers must have shape ({m}, {d})")
    out = []
    for j in range(m):
        pts = centers[j] + rng.standard_normal((n, d))
        out.append(Mass(points=pts, weights=np.ones(n)))
    return out


def gen_symmetric(d: int, n: int, seed) -> Mass:
    """A planar cloud invariant under rotation by 90 degrees about the origin.

    n/4 points are drawn in the open first quadrant (coordinates bounded away
    from the axes) and copied through the three rotations, so the coordinate
    axes equipartition the cloud exactly.
    """
    if d != 2:
        raise ValueError("symmetric instances are 2-dimensional")
    if n < 4 or n % 4 != 0:
        raise ValueError("n must be a positive multiple of 4")
    q = n // 4
    rng = np.random.default_rng(seed)
    base = np.empty((0, 2))
    while base.shape[0] < q:
        cand = rng.uniform(0.0, 1.0, size=(q - base.shape[0], 2))
        base = np.concatenate([base, cand[cand.min(axis=1) >= 1e-3]])
    base = base[:q]
    rot90 = np.column_stack([-base[:, 1], base[:, 0]])
    rot180 = -base
    rot270 = np.column_stack([base[:, 1], -base[:, 0]])
    pts = np.concatenate([base, rot90, rot180, rot270])
    return Mass(points=pts, weights=np.ones(n))


def gen_grid(d: int, side: int, m: int) -> list[Mass]:
    """``m`` copies of the integer lattice {0..side-1}^d, unit weights."""
    if side < 2 or d < 1 or m < 1:
        raise ValueError("side must be >= 2 and d, m positive")
    axes = [np.arange(side, dtype=np.float64)] * d
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.reshape(-1) for g in mesh], axis=1)
    return [Mass(points=pts.copy(), weights=np.ones(side**d)) for _ in range(m)]


def _require(condition: bool, message: str):
    if not condition:
        raise InstanceSchemaError(message)


def _field(obj: dict, key: str, context: str):
    if key not in obj:
        raise InstanceParseError(f"{context}: missing field '{key}'")
    return obj[key]


def _load_json(path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise InstanceParseError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceParseError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise InstanceParseError(f"{path}: top level must be a JSON object")
    return data


def read_instance(path) -> InstanceFile:
    data = _load_json(path)
    dim = _field(data, "dim", str(path))
    _require(isinstance(dim, int) and dim >= 1, f"{path}: 'dim' must be a positive integer")
    raw_masses = _field(data, "masses", str(path))
    _require(isinstance(raw_masses, list) and raw_masses, f"{path}: 'masses' must be a nonempty list")
    masses = []
    for j, entry in enumerate(raw_masses):
        ctx = f"{path}: mass {j}"
        points = _field(entry, "points", ctx)
        weights = _field(entry, "weights", ctx)
        try:
            pts = np.asarray(points, dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise InstanceSchemaError(f"{ctx}: points are not numeric") from exc
        _require(pts.ndim == 2, f"{ctx}: points must be a list of coordinate lists")
        _require(
            pts.shape[1] == dim,
            f"{ctx}: points have {pts.shape[1]} coordinates, expected dim={dim}",
        )
        try:
            w = np.asarray(weights, dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise InstanceSchemaError(f"{ctx}: weights are not numeric") from exc
        _require(w.shape == (pts.shape[0],), f"{ctx}: weights length must match points")
        _require(bool(np.all(w > 0.0)), f"{ctx}: weights must be positive")
        masses.append(Mass(points=pts, weights=w))
    metadata = data.get("metadata", {})
    _require(isinstance(metadata, dict), f"{path}: 'metadata' must be an object")
    return InstanceFile(dim=dim, masses=masses, metadata=metadata)


def write_instance(path, instance: InstanceFile):
    payload = {
        "dim": instance.dim,
        "masses": [
            {"points": m.points.tolist(), "weights": m.weights.tolist()}
            for m in instance.masses
        ],
        "metadata": instance.metadata,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def read_cuts(path) -> Arrangement:
    data = _load_json(path)
    dim = _field(data, "dim", str(path))
    _require(isinstance(dim, int) and dim >= 1, f"{path}: 'dim' must be a positive integer")
    raw_planes = _field(data, "planes", str(path))
    _require(isinstance(raw_planes, list) and raw_planes, f"{path}: 'planes' must be a nonempty list")
    planes = []
    for i, entry in enumerate(raw_planes):
        ctx = f"{path}: plane {i}"
        normal = np.asarray(_field(entry, "normal", ctx), dtype=np.float64).reshape(-1)
        offset = _field(entry, "offset", ctx)
        _require(normal.shape == (dim,), f"{ctx}: normal must have {dim} coordinates")
        _require(isinstance(offset, (int, float)), f"{ctx}: offset must be a number")
        nrm = float(np.linalg.norm(normal))
        _require(
            abs(nrm - 1.0) <= PARSE_NORMAL_TOL,
            f"{ctx}: normal has length {nrm!r}, must be unit within {PARSE_NORMAL_TOL}",
        )
        planes.append(Hyperplane(normal / nrm, float(offset) / nrm))
    return Arrangement(tuple(planes))


def write_cuts(path, arrangement: Arrangement):
    payload = {
        "dim": arrangement.dim,
        "planes": [
            {"normal": p.normal.tolist(), "offset": p.offset} for p in arrangement.planes
        ],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
