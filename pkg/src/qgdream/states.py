"""Graph-to-state mapping and quantum state properties.

A quantum graph is a length-24 float vector (see edges.py). Its state is
the length-16 real amplitude vector over the 4-qubit computational basis,
ket m0 m1 m2 m3 read as a 4-bit integer with m0 most significant. Each
ket amplitude is the sum over the three perfect-matching directions of
the product of the two mode-consistent edge weights.
"""

from __future__ import annotations

import enum

import numpy as np

from . import kernels
from .edges import MATCH_EDGE_1, MATCH_EDGE_2, N_EDGES, N_KETS

#: Norm-squared below which a graph is considered to create no state.
EPS_NORM = 1e-12


class DegenerateStateError(ValueError):
    """The graph's state has (numerically) zero norm."""


class Property(enum.Enum):
    GHZ_FIDELITY = "ghz_fidelity"
    W_FIDELITY = "w_fidelity"
    MEAN_PURITY = "mean_purity"


def _fixed_state(entries):
    amps = np.zeros(N_KETS)
    for ket, value in entries:
        amps[ket] = value
    return amps


#: (|0000> + |1111>) / sqrt(2)
GHZ_STATE = _fixed_state([(0b0000, 1 / np.sqrt(2)), (0b1111, 1 / np.sqrt(2))])

#: (|1000> + |0100> + |0010> + |0001>) / 2  (prefactor chosen for unit norm)
W_STATE = _fixed_state([(0b1000, 0.5), (0b0100, 0.5), (0b0010, 0.5), (0b0001, 0.5)])

#: The 7 canonical bipartitions of the 4 qubits: each is the side that
#: contains qubit 0 is excluded from double counting by listing every
#: nonempty subset not containing its complement twice.
BIPARTITIONS = ((0,), (1,), (2,), (3,), (0, 1), (0, 2), (0, 3))

#: Canonical GHZ graph: H matching of |0000> plus D matching of |1111>.
GHZ_GRAPH = np.zeros(N_EDGES)
GHZ_GRAPH[0] = 1.0   # (0,1) modes (0,0)
GHZ_GRAPH[20] = 1.0  # (2,3) modes (0,0)
GHZ_GRAPH[7] = 1.0   # (0,2) modes (1,1)
GHZ_GRAPH[19] = 1.0  # (1,3) modes (1,1)


def random_graph(seed_or_rng):
    """24 i.i.d. uniform [-1, 1] edge weights; deterministic per seed."""
    rng = np.random.default_rng(seed_or_rng) if not isinstance(
        seed_or_rng, np.random.Generator) else seed_or_rng
    return rng.uniform(-1.0, 1.0, N_EDGES)


def build_state(graph):
    """Unnormalized state amplitudes, length 16."""
    w = np.asarray(graph, dtype=np.float64)
    if w.shape != (N_EDGES,):
        raise ValueError(f"expected {N_EDGES} edge weights, got shape {w.shape}")
    return kernels.build_state_batch(w[None, :])[0]


def normalize_state(state):
    """Scale to unit norm. Raises DegenerateStateError below EPS_NORM."""
    s = np.asarray(state, dtype=np.float64)
    norm = np.linalg.norm(s)
    if norm <= EPS_NORM:
        raise DegenerateStateError("state norm below threshold; graph creates no state")
    return s / norm


def _check_normalized(state):
    s = np.asarray(state, dtype=np.float64)
    if abs(np.dot(s, s) - 1.0) > 1e-9:
        raise ValueError("state is not unit-norm")
    return s


def fidelity(graph, target):
    """Squared overlap of the normalized graph state with a unit target."""
    s = normalize_state(build_state(graph))
    return float(np.dot(s, target) ** 2)


def _bipartition_matrix(state, subset):
    """Amplitudes reshaped to (2^|subset|, 2^|complement|)."""
    s = np.asarray(state).reshape(2, 2, 2, 2)
    comp = tuple(q for q in range(4) if q not in subset)
    return np.transpose(s, subset + comp).reshape(2 ** len(subset), -1)


def reduced_purity(state, subset):
    """tr(rho_M^2) of the reduction onto the qubits in `subset`."""
    s = _check_normalized(state)
    m = _bipartition_matrix(s, tuple(subset))
    return float(np.sum((m @ m.T) ** 2))


def mean_purity(state):
    """Arithmetic mean of reduced purity over the 7 canonical bipartitions."""
    return float(np.mean([reduced_purity(state, b) for b in BIPARTITIONS]))


def concurrence(state):
    """Sum over the 7 bipartitions of sqrt(2 (1 - purity))."""
    purities = np.array([reduced_purity(state, b) for b in BIPARTITIONS])
    return float(np.sum(np.sqrt(np.maximum(2.0 * (1.0 - purities), 0.0))))


def pm_probability_array(graph):
    """3x16 array of squared matching weight products (rows H, V, D)."""
    w = np.asarray(graph, dtype=np.float64)
    return kernels.pm_probability_batch(w[None, :])[0]


def property_value(graph, prop):
    """Evaluate one of the trained target properties on a graph."""
    prop = Property(prop)
    s = normalize_state(build_state(graph))
    if prop is Property.GHZ_FIDELITY:
        return float(np.dot(s, GHZ_STATE) ** 2)
    if prop is Property.W_FIDELITY:
        return float(np.dot(s, W_STATE) ** 2)
    return mean_purity(s)


def property_value_batch(weights, prop):
    """Vectorized property_value over (n, 24) weights.

    Returns (values, valid) where valid is False for degenerate states
    (their value entry is 0 and must be ignored).
    """
    prop = Property(prop)
    w = np.asarray(weights, dtype=np.float64)
    states = kernels.build_state_batch(w)
    norm2 = np.einsum("nk,nk->n", states, states)
    valid = norm2 > EPS_NORM ** 2
    safe = np.where(valid, norm2, 1.0)
    if prop in (Property.GHZ_FIDELITY, Property.W_FIDELITY):
        target = GHZ_STATE if prop is Property.GHZ_FIDELITY else W_STATE
        values = (states @ target) ** 2 / safe
    else:
        normed = states / np.sqrt(safe)[:, None]
        acc = np.zeros(len(w))
        for subset in BIPARTITIONS:
            comp = tuple(q for q in range(4) if q not in subset)
            m = np.transpose(normed.reshape(-1, 2, 2, 2, 2),
                             (0,) + tuple(q + 1 for q in subset + comp))
            m = m.reshape(len(w), 2 ** len(subset), -1)
            rho = np.einsum("nij,nkj->nik", m, m)
            acc += np.einsum("nik,nik->n", rho, rho)
        values = acc / len(BIPARTITIONS)
    return np.where(valid, values, 0.0), valid


def property_gradient(graph, prop):
    """Exact gradient of property_value w.r.t. the 24 edge weights."""
    prop = Property(prop)
    w = np.asarray(graph, dtype=np.float64)
    s = build_state(w)
    norm2 = float(np.dot(s, s))
    if norm2 <= EPS_NORM ** 2:
        raise DegenerateStateError("gradient undefined for a degenerate state")
    jac = kernels.state_jacobian(w)  # (16, 24)
    if prop in (Property.GHZ_FIDELITY, Property.W_FIDELITY):
        target = GHZ_STATE if prop is Property.GHZ_FIDELITY else W_STATE
        overlap = float(np.dot(s, target))
        grad_s = (2.0 * overlap / norm2) * target - (2.0 * overlap ** 2 / norm2 ** 2) * s
    else:
        norm = np.sqrt(norm2)
        s_hat = s / norm
        g_hat = np.zeros(N_KETS)
        for subset in BIPARTITIONS:
            comp = tuple(q for q in range(4) if q not in subset)
            perm = subset + comp
            m = _bipartition_matrix(s_hat, subset)
            dm = 4.0 * (m @ m.T @ m)  # d tr((MM^T)^2) / dM
            inv = np.argsort(perm)
            g_hat += np.transpose(
                dm.reshape((2,) * 4), inv).reshape(N_KETS)
        g_hat /= len(BIPARTITIONS)
        # chain through normalization: s_hat = s / |s|
        grad_s = (g_hat - np.dot(g_hat, s_hat) * s_hat) / norm
    return jac.T @ grad_s
