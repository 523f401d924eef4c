"""Quantum graph deep dreaming.

Maps edge-weighted quadripartite graphs to 4-qubit states, trains small
feed-forward networks on state properties, inverts the trained networks by
gradient ascent on the input graph, and runs interpretability analyses
(distribution shift, PM probability arrays, layer entropy, weighted
activations).
"""

from .kernels import BACKEND
from .states import (
    DegenerateStateError,
    GHZ_GRAPH,
    GHZ_STATE,
    Property,
    W_STATE,
    build_state,
    concurrence,
    fidelity,
    mean_purity,
    normalize_state,
    pm_probability_array,
    property_gradient,
    property_value,
    random_graph,
    reduced_purity,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "DegenerateStateError", "GHZ_GRAPH", "GHZ_STATE", "Property",
    "W_STATE", "build_state", "concurrence", "fidelity", "mean_purity",
    "normalize_state", "pm_probability_array", "property_gradient",
    "property_value", "random_graph", "reduced_purity", "__version__",
]
