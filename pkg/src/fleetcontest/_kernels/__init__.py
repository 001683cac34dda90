"""Hot numeric kernels with a compiled core and a pure-numpy fallback.

The compiled module is optional; when it failed to build or is absent
the numpy implementation takes over with the same contract. BACKEND
names the implementation actually in use.
"""

from . import _grid_py

try:
    from . import _grid as _impl

    BACKEND = "compiled"
except ImportError:
    _impl = _grid_py
    BACKEND = "python"

two_region_scan = _impl.two_region_scan

__all__ = ["BACKEND", "two_region_scan"]
