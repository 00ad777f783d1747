"""Kernel backend selection.

The compiled Cython lane is used when the extension built; setting
``ORDO_PURE=1`` forces the pure-Python lane.  Both lanes implement the same
functions with identical semantics and witness order (see
``ordo._kernels_py`` for the contracts).
"""

import os

if os.environ.get("ORDO_PURE"):
    from ordo import _kernels_py as _impl

    BACKEND = "pure"
else:
    try:
        from ordo import _kernels_c as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from ordo import _kernels_py as _impl

        BACKEND = "pure"

cone_scan = _impl.cone_scan
closure_scan = _impl.closure_scan
order_scan = _impl.order_scan
extreme_scan = _impl.extreme_scan
first_extreme = _impl.first_extreme
subset_scan = _impl.subset_scan
