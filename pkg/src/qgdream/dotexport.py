"""DOT (Graphviz) export of quantum graphs.

Each surviving edge carries: pen width and opacity scaled by |w|, a
two-color stripe encoding the endpoint modes (mode 0 blue, mode 1 red),
and a diamond arrowhead when the weight is negative.
"""

from __future__ import annotations

import numpy as np

from .edges import N_EDGES, edge_key

MODE_COLORS = ("#1f5fd6", "#d62728")  # mode 0, mode 1


def export_dot(graph, threshold=0.4):
    """DOT text for the 4-vertex graph, keeping edges with |w| >= threshold."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must be in [0, 1]")
    w = np.asarray(graph, dtype=np.float64)
    lines = ["graph quantum_graph {", "  layout=circo;",
             '  node [shape=circle, style=filled, fillcolor="#eeeeee"];']
    lines.extend(f"  v{i};" for i in range(4))
    for idx in range(N_EDGES):
        value = float(w[idx])
        if abs(value) < threshold:
            continue
        (a, b), mode_lo, mode_hi = edge_key(idx)
        alpha = int(round(40 + 215 * min(abs(value), 1.0)))
        color = (f'"{MODE_COLORS[mode_lo]}{alpha:02x};0.5:'
                 f'{MODE_COLORS[mode_hi]}{alpha:02x}"')
        attrs = [f"color={color}",
                 f"penwidth={0.5 + 3.0 * min(abs(value), 1.0):.2f}",
                 f'label="{value:+.2f}"']
        if value < 0.0:
            attrs += ["dir=forward", "arrowhead=diamond"]
        lines.append(f"  v{a} -- v{b} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
