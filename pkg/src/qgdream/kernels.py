"""Backend selection for the batch state-construction kernels.

The compiled Cython extension is preferred when importable; the pure-numpy
module is a drop-in fallback. Set QGDREAM_PURE_PYTHON=1 to force the
fallback (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("QGDREAM_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND

build_state_batch = _impl.build_state_batch
pm_probability_batch = _impl.pm_probability_batch
state_jacobian = _impl.state_jacobian
