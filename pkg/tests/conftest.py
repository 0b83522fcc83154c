import pathlib

import numpy as np
import pytest

from masscut import Arrangement, Hyperplane

FIXTURES = pathlib.Path(__file__).parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def axes_arrangement(d=2):
    """Coordinate hyperplanes through the origin, plane i normal to axis i."""
    planes = []
    for i in range(d):
        normal = np.zeros(d)
        normal[i] = 1.0
        planes.append(Hyperplane(normal, 0.0))
    return Arrangement(tuple(planes))


def planes_close(a: Arrangement, b: Arrangement, atol=1e-12):
    if a.h != b.h or a.dim != b.dim:
        return False
    return all(
        np.allclose(pa.normal, pb.normal, atol=atol) and abs(pa.offset - pb.offset) <= atol
        for pa, pb in zip(a.planes, b.planes)
    )


def median_gap(values):
    """Open interval between the two middle order statistics (even count)."""
    v = np.sort(np.asarray(values, dtype=float))
    n = v.shape[0]
    assert n % 2 == 0
    return float(v[n // 2 - 1]), float(v[n // 2])
