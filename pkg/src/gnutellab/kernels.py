"""Backend selection for the traversal kernels.

Prefers the compiled extension; falls back to the pure-Python twin when the
extension is missing or when GNUTELLAB_PURE=1 is set in the environment.
"""

import os

if os.environ.get("GNUTELLAB_PURE") == "1":
    from . import _pure as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _impl

BACKEND = _impl.BACKEND
bfs_distances = _impl.bfs_distances
distance_histogram = _impl.distance_histogram
component_labels = _impl.component_labels
