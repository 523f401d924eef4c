"""Canonical edge indexing for the 4-vertex, 2-mode complete colored graph.

A graph is a flat vector of 24 real edge weights. Edges are identified by
an unordered vertex pair and one mode label per endpoint. The canonical
flat index is

    index = 4 * pair_rank + 2 * mode_lo + mode_hi

where pair_rank runs over the lexicographic pair order
(0,1), (0,2), (0,3), (1,2), (1,3), (2,3), mode_lo is the mode of the
lower-indexed vertex and mode_hi the mode of the higher-indexed one.
The full table is documented in docs/formats.md.
"""

from __future__ import annotations

import numpy as np

N_VERTICES = 4
N_EDGES = 24
N_KETS = 16

#: Unordered vertex pairs in canonical (lexicographic) order.
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

_PAIR_RANK = {p: r for r, p in enumerate(PAIRS)}

#: Perfect-matching directions, in row order of the 3x16 probability arrays.
DIRECTIONS = ("H", "V", "D")

#: Vertex pairings per direction: H = (01)(23), V = (03)(12), D = (02)(13).
DIRECTION_PAIRINGS = {
    "H": ((0, 1), (2, 3)),
    "V": ((0, 3), (1, 2)),
    "D": ((0, 2), (1, 3)),
}


def canonical_edge_index(pair, mode_lo, mode_hi):
    """Flat index in [0, 24) of the edge (pair, mode_lo, mode_hi).

    Raises ValueError for vertices outside {0,1,2,3}, equal vertices, or
    modes outside {0,1}. The pair may be given in either vertex order; the
    modes always refer to the lower/higher-indexed vertex respectively.
    """
    a, b = pair
    if a == b or not (0 <= a < N_VERTICES and 0 <= b < N_VERTICES):
        raise ValueError(f"invalid vertex pair {pair!r}")
    if mode_lo not in (0, 1) or mode_hi not in (0, 1):
        raise ValueError(f"invalid modes ({mode_lo}, {mode_hi})")
    if a > b:
        a, b = b, a
    return 4 * _PAIR_RANK[(a, b)] + 2 * mode_lo + mode_hi


def edge_key(index):
    """Inverse of canonical_edge_index: index -> (pair, mode_lo, mode_hi)."""
    if not 0 <= index < N_EDGES:
        raise ValueError(f"edge index {index} out of range")
    return PAIRS[index // 4], (index % 4) // 2, index % 2


def ket_bits(ket):
    """Mode bits (m0, m1, m2, m3) of a ket index; m0 is the most significant."""
    return tuple((ket >> (3 - q)) & 1 for q in range(4))


def _matching_edges(direction, bits):
    """Edge indices of the two mode-consistent edges of one PM direction."""
    (a, b), (c, d) = DIRECTION_PAIRINGS[direction]
    return (
        canonical_edge_index((a, b), bits[a], bits[b]),
        canonical_edge_index((c, d), bits[c], bits[d]),
    )


def _build_matching_tables():
    """(3,16) index arrays E1, E2: edges of matching (direction, ket)."""
    e1 = np.empty((3, N_KETS), dtype=np.intp)
    e2 = np.empty((3, N_KETS), dtype=np.intp)
    for d, direction in enumerate(DIRECTIONS):
        for ket in range(N_KETS):
            e1[d, ket], e2[d, ket] = _matching_edges(direction, ket_bits(ket))
    return e1, e2


#: For each (direction, ket): the two edge indices whose weight product is
#: that matching's contribution to the ket amplitude.
MATCH_EDGE_1, MATCH_EDGE_2 = _build_matching_tables()
