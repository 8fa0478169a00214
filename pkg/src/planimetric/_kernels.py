"""Backend selection for the hot loops.

The compiled extension is used when importable; setting
``PLANIMETRIC_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
import os

from . import _fallback

BACKEND = "python"
if os.environ.get("PLANIMETRIC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _core as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _fallback
else:
    _impl = _fallback

dijkstra_grid = _impl.dijkstra_grid
closed_polyline_is_simple = _impl.closed_polyline_is_simple

__all__ = ["BACKEND", "dijkstra_grid", "closed_polyline_is_simple"]
