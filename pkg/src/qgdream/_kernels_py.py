"""Pure-numpy batch kernels; fallback when the compiled extension is absent.

Same contracts as _kernels_cy. Weights arrays are (n, 24) float64; see
edges.py for the index conventions.
"""

from __future__ import annotations

import numpy as np

from .edges import MATCH_EDGE_1, MATCH_EDGE_2

BACKEND = "python"

_E1 = MATCH_EDGE_1  # (3, 16)
_E2 = MATCH_EDGE_2


def build_state_batch(weights):
    """Unnormalized amplitudes (n, 16) from edge weights (n, 24)."""
    w = np.asarray(weights, dtype=np.float64)
    # (n, 3, 16) matching contributions summed over directions
    return np.einsum("ndk->nk", w[:, _E1] * w[:, _E2])


def pm_probability_batch(weights):
    """Squared matching weight products, shape (n, 3, 16)."""
    w = np.asarray(weights, dtype=np.float64)
    return (w[:, _E1] * w[:, _E2]) ** 2


def state_jacobian(weights):
    """d amplitude / d weight, shape (16, 24), for a single graph."""
    w = np.asarray(weights, dtype=np.float64)
    jac = np.zeros((16, 24))
    kets = np.arange(16)
    for d in range(3):
        np.add.at(jac, (kets, _E1[d]), w[_E2[d]])
        np.add.at(jac, (kets, _E2[d]), w[_E1[d]])
    return jac
