"""Pure numpy implementations of the hot kernels.

Mirrors the compiled extension in ``_kernels.pyx``; ``masscut.kernels``
selects between the two at import time.  Orthant indices pack the per-plane
signs as bits, bit ``i`` set when the point is on the positive side of
plane ``i``.
"""

import numpy as np
from scipy.special import expit


def orthant_accumulate(points, weights, normals, offsets, tau):
    """Accumulate weights per orthant of an arrangement.

    Returns ``(entries, boundary)`` where ``entries`` has ``2**h`` slots and
    ``boundary`` collects the weight of points within ``tau`` of any plane.
    """
    h = normals.shape[0]
    s = points @ normals.T - offsets
    on_plane = np.abs(s) <= tau
    interior = ~on_plane.any(axis=1)
    bits = 1 << np.arange(h)
    idx = (s[interior] > 0.0) @ bits
    entries = np.bincount(idx, weights=weights[interior], minlength=1 << h)
    boundary = float(weights[~interior].sum())
    return entries.astype(np.float64), boundary


def smoothed_orthant_measures(points, weights, normals, offsets, beta):
    """Logistic-smoothed orthant measures at sharpness scale ``beta``.

    Each point contributes weight ``w * prod_i sigma(s_i * (a_i.x - b_i) / beta)``
    to the orthant with sign vector ``s``; the hard measures are the
    ``beta -> 0`` limit for points off the planes.
    """
    h = normals.shape[0]
    g = expit((points @ normals.T - offsets) / beta)
    acc = weights[:, None]
    for i in range(h):
        gi = g[:, i : i + 1]
        acc = np.concatenate((acc * (1.0 - gi), acc * gi), axis=1)
    return acc.sum(axis=0)
